from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from pfaffzeta.polynomial import MultiPoly
from pfaffzeta.ratfun import (
    LaurentMonomial,
    RatFun,
    RatFunError,
    ZetaSeries,
    expand_series,
    geom,
    mono,
    series_of_product_geometric,
    series_total_degree,
    substitute3,
)

from tests.strategies import ratfuns

POINTS = [(Fraction(2), Fraction(1, 3)), (Fraction(-3, 2), Fraction(5, 7))]


def _safe_eval(F, pt):
    try:
        return F.evaluate(pt)
    except ZeroDivisionError:
        return None


@given(ratfuns(), ratfuns(), ratfuns())
def test_field_axioms(F, G, H):
    assert F + G == G + F
    assert (F + G) + H == F + (G + H)
    assert F * (G + H) == F * G + F * H
    assert F - F == 0
    if not G.is_zero():
        assert (F / G) * G == F


@given(ratfuns(), ratfuns())
def test_evaluation_is_a_homomorphism(F, G):
    for pt in POINTS:
        a, b = _safe_eval(F, pt), _safe_eval(G, pt)
        assume(a is not None and b is not None)
        assert (F * G).evaluate(pt) == a * b
        assert (F - G).evaluate(pt) == a - b


@given(ratfuns())
def test_invert_vars_is_an_involution(F):
    assert F.invert_vars().invert_vars() == F
    for x, y in POINTS:
        v = _safe_eval(F, (1 / x, 1 / y))
        if v is not None:
            assert F.invert_vars().evaluate((x, y)) == v


def test_equality_is_by_cross_multiplication():
    F = (1 - mono(1, 1) ** 2) * geom(1, 1)
    assert F == 1 + mono(1, 1)
    assert F != 1 - mono(1, 1)
    with pytest.raises(TypeError):
        hash(F)


def test_factor_normalization():
    # 1/(X Y - 1) stores the canonical factor (1 - X Y) with a sign moved to the numerator
    F = RatFun(MultiPoly.const(1, 2), [(MultiPoly({(1, 1): 1, (0, 0): -1}, 2), 1)])
    assert F == -geom(1, 1)
    assert F.format() == "(-1)/((1 - X*Y))"


def test_format_and_latex():
    F = mono(0, 1) * geom(1, 1) * geom(1, 1)
    assert F.format() == "(Y)/((1 - X*Y)^2)"
    assert F.latex() == "\\frac{Y}{(1-XY)^{2}}"


def test_expand_series_geometric():
    s = expand_series(geom(2, 1) * geom(0, 1), 3, 4)
    assert s == [sum(9 ** i for i in range(n + 1)) for n in range(5)]
    assert s == series_of_product_geometric(3, [(2, 1), (0, 1)], 4)


def test_expand_series_rejects_bad_denominators():
    assert expand_series(geom(1, 0), 2, 2) == [-1, 0, 0]
    vanishing_at_2 = RatFun(MultiPoly.const(1, 2), [(MultiPoly({(0, 0): 2, (1, 0): -1}, 2), 1)])
    with pytest.raises(RatFunError):
        expand_series(vanishing_at_2, 2, 3)
    with pytest.raises(RatFunError):
        expand_series(mono(0, -1), 2, 3)


@given(st.lists(st.tuples(st.integers(0, 3), st.integers(1, 3)), min_size=1, max_size=3), st.sampled_from([2, 3, 5]))
def test_series_of_product_geometric_matches_expansion(exps, p):
    F = RatFun.const(1)
    for e in exps:
        F = F * geom(*e)
    assert series_of_product_geometric(p, exps, 6) == expand_series(F, p, 6)


def test_series_total_degree():
    s = series_total_degree(RatFun.geometric((1, 1, 0)) * RatFun.geometric((0, 0, 1)), 4)
    assert s.coefficient((2, 2, 0)) == 1
    assert s.coefficient((1, 1, 2)) == 1
    assert s.coefficient((2, 2, 1)) == 0
    brute = {(a, a, c) for a in range(3) for c in range(5) if 2 * a + c <= 4}
    assert set(s.terms) == brute


def test_laurent_substitution():
    F = RatFun.geometric((1, 0, 0)) * RatFun.monomial((0, 1, 1))
    G = substitute3(F, LaurentMonomial(1, 1), LaurentMonomial(2, -1), LaurentMonomial(0, 3))
    assert G == mono(2, 2) * geom(1, 1)
    assert (LaurentMonomial(1, 2) ** 3 * LaurentMonomial(0, -1)).exps == (3, 5)


def test_specialize():
    F = geom(1, 1) + mono(2, 0)
    G = F.specialize(0, 2)
    assert G.evaluate((Fraction(1, 5),)) == F.evaluate((2, Fraction(1, 5)))


def test_zeta_series_arithmetic():
    a = ZetaSeries(2, [1, 2, 3])
    b = ZetaSeries(2, [1, Fraction(1, 2), 0])
    assert (a * b) == [1, Fraction(5, 2), 4]
    assert (a + b).coeffs == [2, Fraction(5, 2), 3]
    assert not b.is_integral() and a.is_nonnegative_integral()
    assert a.truncate(1) == [1, 2]
    with pytest.raises(RatFunError):
        ZetaSeries(2, [1, 2], order=4)
