from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chowlab.errors import HomogeneityError, ImproperIdealError
from chowlab.fields import FieldSpec
from chowlab.groebner import (
    IdealHandle,
    MonomialOrder,
    graded_multiplicity,
    graded_piece_dimension,
    hilbert_series,
)
from chowlab.poly import RingSpec

from oracles import graded_piece_dim, series_coefficients
from strategies import homogeneous_polys, ring_for

GF7 = FieldSpec.prime(7)
QQ = FieldSpec.rationals()


@pytest.fixture
def R():
    return RingSpec.polynomial_ring(GF7, [("X1", 2), ("X2", 2), ("Y", 3)])


def test_zero_ideal_weights_two_two():
    S = RingSpec.polynomial_ring(QQ, [("X1", 2), ("X2", 2)])
    hs = hilbert_series(IdealHandle(S))
    assert hs.numerator_text() == "1"
    assert hs.weights == (2, 2)
    assert graded_multiplicity(IdealHandle(S)) == Fraction(1, 4)


def test_fermat_series(R):
    I = IdealHandle(R, [R.parse("Y^2+X1^3+X2^3")])
    hs = hilbert_series(I)
    assert hs.numerator_text() == "1-t^6"
    assert hs.denominator_text() == "(1-t^2)*(1-t^2)*(1-t^3)"
    f = {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 2): 1}
    assert hs.coefficients(12) == [graded_piece_dim([f], (2, 2, 3), D, 7) for D in range(13)]
    assert hs.dimension() == 2
    assert hs.multiplicity() == Fraction(1, 2)


def test_principal_y_squared():
    S = RingSpec.polynomial_ring(GF7, [("v", 2), ("Y", 3)])
    hs = hilbert_series(IdealHandle(S, [S.parse("Y^2")]))
    assert hs.numerator_text() == "1-t^6"
    assert graded_multiplicity(IdealHandle(S, [S.parse("Y^2")])) == Fraction(1, 1)


def test_single_variable_weight_two():
    S = RingSpec.polynomial_ring(QQ, [("v", 2)])
    assert graded_multiplicity(IdealHandle(S)) == Fraction(1, 2)


def test_errors(R):
    with pytest.raises(HomogeneityError):
        hilbert_series(IdealHandle(R, [R.parse("X1+Y")]))
    with pytest.raises(ImproperIdealError):
        graded_multiplicity(IdealHandle(R, [R.one()]))


def test_order_independence(R):
    I = IdealHandle(R, [R.parse("Y^2+X1^3+X2^3"), R.parse("X1*Y+3*X2*Y")])
    a = hilbert_series(I)
    lex = MonomialOrder.lex(R)
    from chowlab.groebner import HilbertSeries, _numerator

    b = HilbertSeries(tuple(sorted(_numerator(I.basis(lex).leading_monomials(), R.weights).items())), R.weights)
    assert a.coefficients(15) == b.coefficients(15)


def test_piece_dimension_matches_series(R):
    I = IdealHandle(R, [R.parse("Y^2+X1^3+X2^3")])
    hs = hilbert_series(I)
    assert [graded_piece_dimension(I, D) for D in range(10)] == hs.coefficients(9)


@pytest.mark.parametrize("fld", [GF7, QQ], ids=str)
def test_series_matches_monomial_count(fld):
    ring = ring_for(fld, (1, 2, 3))

    @settings(max_examples=20)
    @given(st.lists(st.integers(2, 6), min_size=1, max_size=2).flatmap(
        lambda ds: st.tuples(*[homogeneous_polys(ring, d, 3) for d in ds])))
    def check(gens):
        I = IdealHandle(ring, list(gens))
        hs = hilbert_series(I)
        N = 3 * max(g.weighted_degree() for g in gens)
        p = fld.characteristic or None
        expected = [graded_piece_dim([g.raw_terms() for g in gens], ring.weights, D, p) for D in range(N + 1)]
        assert hs.coefficients(N) == expected
        assert series_coefficients(hs.numerator_dict, ring.weights, N) == expected

    check()


@given(st.integers(1, 4), st.data())
def test_regular_element_multiplies_by_one_minus_t_power(k, data):
    # x3 is a nonzerodivisor on k[x1, x2, x3]/(f) when f does not involve x3
    ring = ring_for(GF7, (1, 1, 2))
    f = data.draw(homogeneous_polys(ring, 2, 3).filter(lambda g: all(e[2] == 0 for e in g.raw_terms())))
    g = ring.var("x3") ** k
    base = hilbert_series(IdealHandle(ring, [f]))
    cut = hilbert_series(IdealHandle(ring, [f, g]))
    D = g.weighted_degree()
    shifted = {}
    for deg, c in base.numerator_dict.items():
        shifted[deg] = shifted.get(deg, 0) + c
        shifted[deg + D] = shifted.get(deg + D, 0) - c
    assert cut.numerator_dict == {d: c for d, c in shifted.items() if c}
    assert graded_multiplicity(IdealHandle(ring, [f, g])) == D * graded_multiplicity(IdealHandle(ring, [f]))
