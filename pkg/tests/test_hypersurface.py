import json
from itertools import product
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chowlab.errors import HypothesisError, InvalidFamilyError, ResourceBoundError
from chowlab.fields import FieldSpec
from chowlab.hypersurface import (
    BETA_NONZERO,
    BETA_ZERO,
    FamilySpec,
    beta_reduce,
    build_family,
    certify_domain,
    factor_bivariate_bruteforce,
    fermat_irreducible,
    form_from_coordinates,
    regular_sequence_check,
)
from chowlab.poly import RingSpec

from oracles import cube_roots_of_minus_one

GF7 = FieldSpec.prime(7)


def fermat(m=2, n=3, d=2, fld=GF7):
    return build_family(FamilySpec("fermat", m, n, d, fld))


def test_build_fermat():
    fr = fermat()
    assert str(fr.relation) == "X1^3+X2^3+Y^2"
    assert fr.ring.weights == (2, 2, 3)
    assert fr.normalization == ("X1", "X2")
    assert fr.relation.weighted_degree() == 6


def test_build_mixed():
    fr = build_family(FamilySpec("mixed", 2, 3, 3, GF7, 1, 2))
    assert str(fr.relation) == "X^3+Y^2+X*Z^2+W3^3"
    assert fr.ring.weights == (2, 3, 2, 2)
    assert fr.normalization == ("X", "Z", "W3")


@pytest.mark.parametrize(
    "args",
    [
        ("fermat", 2, 3, 2, FieldSpec.prime(2), None, None),
        ("fermat", 2, 4, 2, GF7, None, None),
        ("fermat", 2, 3, 1, GF7, None, None),
        ("mixed", 2, 3, 3, GF7, 2, 2),
        ("mixed", 2, 3, 3, GF7, None, None),
    ],
)
def test_invalid_families(args):
    with pytest.raises(InvalidFamilyError):
        build_family(FamilySpec(*args))


def test_family_json_round_trip():
    spec = FamilySpec("mixed", 2, 3, 3, GF7, 1, 2)
    assert FamilySpec.from_json(json.loads(json.dumps(spec.to_json()))) == spec


def test_oracle_examples():
    S = RingSpec.polynomial_ring(GF7, [("X", 2), ("Y", 3)])
    assert factor_bivariate_bruteforce(S.parse("Y^2-X^3")).is_irreducible()
    fac = factor_bivariate_bruteforce(S.parse("Y^2"))
    assert [(str(g), e) for g, e in fac.factors] == [("Y", 2)]
    T = RingSpec.polynomial_ring(GF7, ["X", "Y"])
    fac = factor_bivariate_bruteforce(T.parse("Y^2-X^2"))
    assert {g for g, _ in fac.factors} == {T.parse("X+Y"), T.parse("X-Y")}
    assert all(e == 1 for _, e in fac.factors)


def test_oracle_caps():
    big = RingSpec.polynomial_ring(FieldSpec.prime(17), ["X", "Y"])
    with pytest.raises(ResourceBoundError):
        factor_bivariate_bruteforce(big.parse("X^2+Y^2"))
    S = RingSpec.polynomial_ring(GF7, ["X", "Y"])
    with pytest.raises(ResourceBoundError):
        factor_bivariate_bruteforce(S.parse("X^9+Y^9"))
    with pytest.raises(ResourceBoundError):
        factor_bivariate_bruteforce(RingSpec.polynomial_ring(FieldSpec.rationals(), ["X"]).parse("X^2"))


def bivariate(max_deg=2):
    S = RingSpec.polynomial_ring(GF7, ["X", "Y"])
    exps = [(a, b) for a in range(max_deg + 1) for b in range(max_deg + 1 - a)]
    terms = st.dictionaries(st.sampled_from(exps), st.integers(1, 6), min_size=1, max_size=4)
    return terms.map(lambda t: S.parse("+".join(f"{c}*X^{a}*Y^{b}" for (a, b), c in t.items())))


@settings(max_examples=15)
@given(bivariate(), bivariate())
def test_oracle_coherence(f, g):
    h = f * g
    fac = factor_bivariate_bruteforce(h)
    assert fac.expand() == h
    for q, _ in fac.factors:
        assert q == q.monic() or q.lead()
    nonconstant = [x for x in (f, g) if not x.is_constant()]
    assert sum(e for _, e in fac.factors) >= len(nonconstant)


def test_fermat_irreducible_examples():
    assert fermat_irreducible(2, 3, GF7.element(1)).irreducible
    assert not fermat_irreducible(2, 3, GF7.element(0)).irreducible
    assert fermat_irreducible(3, 4, GF7.element(5)).irreducible
    S = RingSpec.polynomial_ring(GF7, [("X", 3), ("Y", 4)])
    assert factor_bivariate_bruteforce(S.parse("Y^3+5*X^4")).is_irreducible()
    with pytest.raises(HypothesisError):
        fermat_irreducible(2, 4, GF7.element(1))


def test_irreducibility_sweep():
    for (m, n), p in product([(2, 3), (3, 4), (2, 5), (3, 5)], [7, 11, 13]):
        if (m * n) % p == 0:
            continue
        fld = FieldSpec.prime(p)
        S = RingSpec.polynomial_ring(fld, [("X", m), ("Y", n)])
        for beta in range(1, p):
            f = S.var("Y") ** m + (S.var("X") ** n).scale(beta)
            fac = factor_bivariate_bruteforce(f)
            assert fac.is_irreducible()
            assert fermat_irreducible(m, n, beta, fld).irreducible


def test_certificates():
    c2 = certify_domain(fermat())
    assert c2.regular_sequence == ("X2",) or list(c2.regular_sequence) == ["X2"]
    assert str(c2.reduced_bivariate) == "X1^3+Y^2"
    assert c2.chain_dimensions == (2, 1) or list(c2.chain_dimensions) == [2, 1]
    c3 = certify_domain(fermat(d=3))
    assert list(c3.regular_sequence) == ["X3", "X2"]
    assert c3.chain_length == 2
    cm = certify_domain(build_family(FamilySpec("mixed", 2, 3, 3, GF7, 1, 2)))
    assert list(cm.regular_sequence) == ["W3", "Z"]
    assert str(cm.reduced_bivariate) == "X^3+Y^2"
    cq = certify_domain(fermat(fld=FieldSpec.rationals()))
    assert cq.method == "capelli-criterion"


def test_regular_sequence_check():
    fr = fermat()
    R = fr.ring.ambient()
    assert regular_sequence_check(fr, [R.parse("X1")])
    assert not regular_sequence_check(fr, [R.parse("X1-3*X2"), R.parse("2*X1-6*X2")])
    fr3 = fermat(d=3)
    R3 = fr3.ring.ambient()
    assert regular_sequence_check(fr3, [R3.parse("X1+X2"), R3.parse("X2+X3")])
    with pytest.raises(HypothesisError):
        regular_sequence_check(fr, [R.parse("X1^2")])


def test_beta_reduce_examples():
    fr = fermat()
    R = fr.ring.ambient()
    br = beta_reduce(fr, [R.parse("X1-3*X2")])
    assert str(br.v) == "X2"
    assert {k: str(b) for k, b in br.betas} == {"X1": "3", "X2": "1"}
    assert str(br.beta) == "0" and br.case == BETA_ZERO
    assert str(br.reduced_relation) == "Y^2"
    br = beta_reduce(fr, [R.parse("X1")])
    assert str(br.v) == "X2" and str(br.beta) == "1"
    assert str(br.reduced_relation) == "v^3+Y^2"
    with pytest.raises(HypothesisError):
        beta_reduce(fr, [R.zero()])


def test_coordinate_sequence_gives_beta_one():
    for d in (2, 3, 4):
        fr = fermat(d=d)
        R = fr.ring.ambient()
        assert str(beta_reduce(fr, [R.var(f"X{i}") for i in range(1, d)]).beta) == "1"


def test_mixed_beta_by_hand():
    # u = (X - Z, W3), canonical v = Z: X = u1 + v, Z = v, so b = d = 1 and beta = 1 + 1
    fr = build_family(FamilySpec("mixed", 2, 3, 3, GF7, 1, 2))
    R = fr.ring.ambient()
    br = beta_reduce(fr, [R.parse("X-Z"), R.parse("W3")])
    assert str(br.v) == "Z"
    assert str(br.beta) == "2"
    assert br.case == BETA_NONZERO


def test_beta_zero_lines_match_cube_roots():
    fr = fermat()
    R = fr.ring.ambient()
    roots = cube_roots_of_minus_one(7)
    for c in range(7):
        br = beta_reduce(fr, [R.parse(f"X1-{c}*X2")])
        assert (br.case == BETA_ZERO) == (c in roots)


def regular_sequences(fr):
    d, p = fr.d, fr.field.p
    vec = st.tuples(*[st.integers(0, p - 1)] * d)
    return st.lists(vec, min_size=d - 1, max_size=d - 1)


@pytest.mark.parametrize(
    "spec",
    [
        FamilySpec("fermat", 2, 3, 3, GF7),
        FamilySpec("fermat", 3, 4, 3, FieldSpec.prime(5)),
        FamilySpec("mixed", 2, 3, 3, GF7, 1, 2),
        FamilySpec("mixed", 2, 5, 4, FieldSpec.prime(11), 2, 3),
    ],
    ids=lambda s: f"{s.family}-{s.m}-{s.n}-{s.d}",
)
def test_beta_reduce_identity_and_case_invariance(spec):
    fr = build_family(spec)
    fld = fr.field

    @settings(max_examples=30)
    @given(regular_sequences(fr), st.tuples(*[st.integers(0, fld.p - 1)] * fr.d))
    def check(rows, vrow):
        u = [form_from_coordinates(fr, [fld.from_int(c) for c in r]) for r in rows]
        if not regular_sequence_check(fr, u):
            return
        br = beta_reduce(fr, u)
        # rebuild the substitution from the reported change of basis
        images = dict(br.change_of_basis)
        big = next(iter(images.values())).ring
        images["Y"] = big.var("Y")
        full = fr.relation.substitute(images, big)
        S = br.reduced_ring.ambient()
        killed = full.substitute(
            {x: S.zero() for x in big.names if x.startswith("u")} | {"v": S.var("v"), "Y": S.var("Y")}, S
        )
        assert killed == S.var("Y") ** fr.m + (S.var("v") ** fr.n).scale(br.beta)
        v = form_from_coordinates(fr, [fld.from_int(c) for c in vrow])
        if regular_sequence_check(fr, u + [v]):
            other = beta_reduce(fr, u, v)
            assert other.case == br.case

    check()


def test_gcd_precondition_enforced_for_all_small_pairs():
    for m in range(2, 6):
        for n in range(2, 6):
            if gcd(m, n) != 1:
                with pytest.raises(HypothesisError):
                    fermat_irreducible(m, n, 1, FieldSpec.prime(13))


@pytest.mark.parametrize("m,n,p", [(2, 3, 7), (2, 3, 11), (2, 3, 13), (3, 4, 7), (2, 5, 7)])
def test_pruned_search_agrees_with_full_search(m, n, p):
    fld = FieldSpec.prime(p)
    S = RingSpec.polynomial_ring(fld, [("X", m), ("Y", n)])
    betas = range(1, p) if m * n <= 6 else [2]
    for beta in betas:
        f = S.var("Y") ** m + (S.var("X") ** n).scale(beta)
        full = factor_bivariate_bruteforce(f, homogeneous_pruning=False)
        assert full == factor_bivariate_bruteforce(f)
        assert full.is_irreducible()
    g = S.parse("Y^2-X^2") * S.parse("Y+X^3")
    assert factor_bivariate_bruteforce(g, homogeneous_pruning=False).expand() == g
