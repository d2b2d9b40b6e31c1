from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chowlab.assoc_primes import (
    BETA_REDUCTION,
    BINARY_FORM,
    alpha_sample,
    ass1_count_principal,
    ass_top_count_regseq,
    factor_binary_form,
    factor_univariate,
    order_of,
    ufd_extremal_witness,
)
from chowlab.errors import HypothesisError, ScopeError
from chowlab.fields import FieldSpec
from chowlab.hypersurface import FamilySpec, build_family, factor_bivariate_bruteforce
from chowlab.poly import RingSpec, WeightedPoly

from oracles import binary_form_prime_count

GF7 = FieldSpec.prime(7)


@pytest.fixture
def XY():
    return RingSpec.polynomial_ring(GF7, ["X", "Y"])


def fermat(d=2):
    return build_family(FamilySpec("fermat", 2, 3, d, GF7))


def test_order_of(XY):
    assert order_of(XY.parse("X^2*Y+X^5")) == 3
    assert order_of(XY.parse("X+Y")) == 1
    assert order_of(XY.parse("5")) == 0
    with pytest.raises(HypothesisError):
        order_of(XY.zero())


def test_binary_form_count(XY):
    c = ass1_count_principal(XY, XY.parse("(X+Y)*(X+2*Y)*(X+3*Y)"))
    assert c.count == 3
    assert c.method == BINARY_FORM
    assert ass1_count_principal(XY, XY.parse("X^2*Y")).count == 2


def test_family_counts():
    fr = fermat()
    R = fr.ring.ambient()
    c = ass1_count_principal(fr, R.parse("X1-3*X2"))
    assert c.count == 1 and c.method == BETA_REDUCTION
    assert c.primes[0].key == "X1+4*X2, Y"
    assert c.certificate.case == "beta-zero"
    c = ass1_count_principal(fr, R.parse("X1"))
    assert c.count == 1
    assert c.primes[0].key == "X1, X2^3+Y^2"


def test_unsupported_shapes():
    fr = fermat()
    R = fr.ring.ambient()
    with pytest.raises(ScopeError):
        ass1_count_principal(fr, R.parse("Y"))
    with pytest.raises(HypothesisError):
        ass1_count_principal(fr, R.zero())


def test_ass_top_examples():
    fr3 = fermat(3)
    R3 = fr3.ring.ambient()
    assert ass_top_count_regseq(fr3, [R3.parse("X1-X3"), R3.parse("X2")]).count == 1
    fr = fermat()
    c = ass_top_count_regseq(fr, [fr.ring.ambient().parse("X1-3*X2")])
    assert c.count == 1 and c.certificate.case == "beta-zero"
    mixed = build_family(FamilySpec("mixed", 2, 3, 3, GF7, 1, 2))
    Rm = mixed.ring.ambient()
    assert ass_top_count_regseq(mixed, [Rm.parse("X-Z"), Rm.parse("W3")]).count == 1
    with pytest.raises(HypothesisError):
        ass_top_count_regseq(fr3, [R3.parse("X1"), R3.parse("2*X1")])


def test_univariate_factorization_round_trip():
    fld = GF7
    f = [6, 0, 0, 1]  # t^3 - 1 = (t - 1)(t - 2)(t - 4)
    facs = factor_univariate(fld, f)
    assert sorted(q for q, _ in facs) == [(3, 1), (5, 1), (6, 1)]


coefficient_lists = st.integers(1, 5).flatmap(lambda s: st.lists(st.integers(0, 6), min_size=s + 1, max_size=s + 1))


@given(coefficient_lists.filter(any))
def test_binary_form_count_matches_sieve_oracle(coeffs):
    S = RingSpec.polynomial_ring(GF7, ["X", "Y"])
    s = len(coeffs) - 1
    x = WeightedPoly(S, {(s - i, i): c for i, c in enumerate(coeffs)})
    assert len(factor_binary_form(x)) == binary_form_prime_count(coeffs, 7)
    assert ass1_count_principal(S, x).count == binary_form_prime_count(coeffs, 7)


@settings(max_examples=20)
@given(st.integers(1, 4).flatmap(lambda s: st.lists(st.integers(0, 6), min_size=s + 1, max_size=s + 1)).filter(any))
def test_binary_form_count_matches_bruteforce_oracle(coeffs):
    S = RingSpec.polynomial_ring(GF7, ["X", "Y"])
    s = len(coeffs) - 1
    x = WeightedPoly(S, {(s - i, i): c for i, c in enumerate(coeffs)})
    assert ass1_count_principal(S, x).count == factor_bivariate_bruteforce(x).distinct()


def test_family_count_matches_oracle_on_reduction():
    fr = fermat()
    R = fr.ring.ambient()
    for a, b in product(range(7), repeat=2):
        if (a, b) == (0, 0):
            continue
        xi = R.parse(f"{a}*X1+{b}*X2")
        c = ass1_count_principal(fr, xi)
        red = c.certificate.reduced_relation
        assert c.count == factor_bivariate_bruteforce(red).distinct()


def test_alpha_sample_examples(XY):
    r1 = alpha_sample(XY, 1, 50, 0)
    assert r1.histogram == {1: 50} and r1.max == 1 and r1.bound == 1
    r3 = alpha_sample(XY, 3, 200, 42)
    assert r3.max <= 3 and sum(r3.histogram.values()) == 200
    assert r3.bound == Fraction(3)


@given(st.integers(1, 4), st.integers(0, 2**32))
def test_alpha_sample_deterministic(s, seed):
    S = RingSpec.polynomial_ring(GF7, ["X", "Y"])
    a = alpha_sample(S, s, 20, seed)
    b = alpha_sample(S, s, 20, seed)
    assert a == b
    assert a.max <= a.bound


def test_alpha_sample_needs_plain_plane():
    S = RingSpec.polynomial_ring(GF7, [("X", 2), ("Y", 1)])
    with pytest.raises(ScopeError):
        alpha_sample(S, 2, 10, 0)


def test_ufd_witness(XY):
    u, c = ufd_extremal_witness(XY, 3, [1, 2, 3])
    assert c.count == 3
    assert u == XY.parse("(X+Y)*(X+2*Y)*(X+3*Y)")
    assert ufd_extremal_witness(XY, 1, [1])[1].count == 1
    with pytest.raises(HypothesisError):
        ufd_extremal_witness(XY, 2, [1, 1])
    with pytest.raises(HypothesisError):
        ufd_extremal_witness(XY, 2, [0, 1])
