from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hilbmotive.errors import ConstantTermNotOne, ConstantTermPresent, MixedHodgeExponents, NonUnitLeadingTerm
from hilbmotive.exactalg import (
    ONE, ZERO, LPoly, TSeries, infinite_product, plethystic_exp, plethystic_log,
    positive_part_div, projective_space, series_invert, series_mul,
)
from hilbmotive.theta import jacobi_theta

L = LPoly.L
U = LPoly.monomial(1, 0)
V = LPoly.monomial(0, 1)
h = Fraction(1, 2)

# -- strategies ----------------------------------------------------------------

coeffs = st.integers(-3, 3)
lpolys = st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)), coeffs, max_size=4).map(LPoly)


def series(min_exp=0, max_exp=4, denom=2, order=Fraction(3)):
    exps = st.integers(min_exp * denom, max_exp * denom).map(lambda k: Fraction(k, denom))
    return st.dictionaries(exps, lpolys, max_size=4).map(lambda d: TSeries(d, order))


positive_series = series(min_exp=1)


# -- LPoly ---------------------------------------------------------------------

def test_lpoly_canonical_form_drops_zeros():
    x = LPoly({(1, 1): 2, (0, 0): 0}) - L(1, 2)
    assert x == ZERO
    assert not x.terms


def test_lpoly_rendering_and_json():
    x = LPoly.from_L_coeffs([1, 2, 1])
    assert x.render() == "1 + 2 L + L^2"
    assert LPoly.from_json(x.to_json()) == x
    assert (LPoly.y(h) - LPoly.y(-h)).render("y") == "-y^{-1/2} + y^{1/2}"


def test_unit_inverse():
    assert (L(3, -1) * L(3, -1).unit_inverse()) == ONE
    with pytest.raises(NonUnitLeadingTerm):
        LPoly.const(2).unit_inverse()


@given(lpolys, lpolys, lpolys)
def test_lpoly_ring_laws(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


# -- series_mul ----------------------------------------------------------------

def test_series_mul_examples():
    t = TSeries({1: ONE}, 5)
    assert series_mul(1 + t, 1 - t) == TSeries({0: 1, 2: -1}, 5)
    assert (1 + t * L()) ** 2 == TSeries({0: 1, 1: L(1, 2), 2: L(2)}, 5)
    s = TSeries({h: ONE}, 5)
    assert (1 + s) * (1 - s) == TSeries({0: 1, 1: -1}, 5)


def test_series_order_is_min():
    a = TSeries({0: 1}, 3)
    b = TSeries({0: 1}, Fraction(5, 2))
    assert (a * b).order == Fraction(5, 2)
    assert (a + b).order == Fraction(5, 2)


@given(series(), series(), series())
def test_series_ring_laws(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


# -- series_invert -------------------------------------------------------------

def test_invert_geometric():
    N = 6
    inv = series_invert(TSeries({0: 1, 1: -1}, N))
    assert inv == TSeries({k: 1 for k in range(N + 1)}, N)
    inv = series_invert(TSeries({0: 1, 1: -L()}, N))
    assert inv == TSeries({k: L(k) for k in range(N + 1)}, N)


def test_invert_theta01():
    th = jacobi_theta(0, 1, 3)
    assert th.coeff(0) == ONE
    assert (th * series_invert(th)).agrees(TSeries.one(3))


def test_invert_rejects_non_unit():
    with pytest.raises(NonUnitLeadingTerm):
        series_invert(TSeries({0: LPoly.const(2), 1: ONE}, 3))
    with pytest.raises(NonUnitLeadingTerm):
        series_invert(TSeries({0: ONE + L()}, 3))


@given(positive_series)
def test_invert_roundtrip(f):
    a = TSeries.one(f.order) + f
    assert (a * series_invert(a)).agrees(TSeries.one(a.order))


# -- PE / PL -------------------------------------------------------------------

def test_pe_examples():
    N = 6
    t = TSeries({1: ONE}, N)
    assert plethystic_exp(t) == TSeries({k: 1 for k in range(N + 1)}, N)
    assert plethystic_exp(-t) == TSeries({0: 1, 1: -1}, N)
    pe = plethystic_exp(t * (U + V))
    assert pe.coeff(2) == U ** 2 + U * V + V ** 2


def test_pe_rejects_constant_term():
    with pytest.raises(ConstantTermPresent):
        plethystic_exp(TSeries({0: 1, 1: 1}, 3))


def test_pl_examples():
    N = 8
    geo = TSeries({k: 1 for k in range(N + 1)}, N)
    assert plethystic_log(geo) == TSeries({1: 1}, N)
    assert plethystic_log(TSeries({0: 1, 1: 1}, N)) == TSeries({1: 1, 2: -1}, N)
    f = TSeries({1: U + V, 2: U * V}, N)
    assert plethystic_log(plethystic_exp(f)) == f


def test_pl_rejects_bad_constant():
    with pytest.raises(ConstantTermNotOne):
        plethystic_log(TSeries({0: 2, 1: 1}, 3))


@settings(max_examples=40, deadline=None)
@given(positive_series, positive_series)
def test_pe_is_a_homomorphism(f, g):
    assert plethystic_exp(f + g) == plethystic_exp(f) * plethystic_exp(g)


@settings(max_examples=40, deadline=None)
@given(positive_series)
def test_pe_pl_inverse(f):
    assert plethystic_log(plethystic_exp(f)) == f
    g = TSeries.one(f.order) + f
    assert plethystic_exp(plethystic_log(g)) == g


# -- positive_part_div ---------------------------------------------------------

def test_positive_part_div_examples():
    assert positive_part_div(L(3)) == LPoly.from_L_coeffs([1, 1, 1])
    assert positive_part_div(ONE) == ZERO
    assert positive_part_div(L(3) - L(1)) == L(1) + L(2)
    assert positive_part_div(L(-2)) == ZERO


def test_positive_part_div_projective_spaces():
    for m in range(51):
        assert positive_part_div(L(m + 1)) == LPoly.from_L_coeffs([1] * (m + 1))
        assert projective_space(m) == LPoly.from_L_coeffs([1] * (m + 1))
    assert projective_space(-1) == ZERO


def test_positive_part_div_rejects_mixed():
    with pytest.raises(MixedHodgeExponents):
        positive_part_div(U)


@given(st.dictionaries(st.integers(1, 12), st.integers(-5, 5)))
def test_positive_part_div_reconstructs(cs):
    p = LPoly.from_L_coeffs(cs)
    assert (L() - 1) * positive_part_div(p) == p - sum(cs.values())


def test_infinite_product_euler():
    N = 10
    prod = infinite_product(lambda l: TSeries({0: 1, l: -1}, N), N)
    # pentagonal number theorem
    want = {0: 1, 1: -1, 2: -1, 5: 1, 7: 1}
    assert prod == TSeries(want, N)
