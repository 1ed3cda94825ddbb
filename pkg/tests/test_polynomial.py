from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pfaffzeta.polynomial import (
    MultiPoly,
    PolynomialError,
    determinant,
    determinant_of,
    is_squarefree,
    is_squarefree_over_Q,
    perfect_matchings,
    pfaffian,
    projective_points,
)
from pfaffzeta.presentations import builtin, from_matrix, random_presentation

from tests.strategies import polys

y1, y2, y3 = (MultiPoly.var(i, 3) for i in range(3))


@given(polys(), polys(), polys())
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == MultiPoly.zero(2)


@given(polys(), st.tuples(st.integers(-4, 4), st.integers(-4, 4)))
def test_evaluate_is_a_homomorphism(f, pt):
    g = f * f + 3 * f
    assert g.evaluate(pt) == f.evaluate(pt) ** 2 + 3 * f.evaluate(pt)


@given(polys(), polys(), st.integers(0, 1))
def test_diff_leibniz(f, g, i):
    assert (f * g).diff(i) == f.diff(i) * g + f * g.diff(i)


@given(polys(), st.sampled_from([2, 3, 5, 7]))
def test_reduce_mod_commutes_with_products(f, p):
    g = f + MultiPoly.var(0, 2)
    assert (f * g).reduce_mod(p) == f.reduce_mod(p) * g.reduce_mod(p)


@given(polys(nvars=3))
def test_json_round_trip(f):
    assert MultiPoly.from_json(f.to_json(), 3) == f


def test_compose_and_negative_shift():
    f = y1 * y2 - y3 ** 2
    g = f.compose([y2, y1, y1 + y3])
    assert g == y1 * y2 - (y1 + y3) ** 2
    h = f.shift((-1, 0, 0))
    assert h.evaluate((Fraction(1, 2), 1, 0)) == 1
    assert h.min_exponents() == (-1, 0, 0)


def test_mismatched_nvars_raises():
    with pytest.raises(PolynomialError):
        MultiPoly.var(0, 2) + MultiPoly.var(0, 3)


def test_format_and_latex():
    f = y1 ** 3 - 2 * y1 * y3 ** 2 + y2 ** 2 * y3
    assert f.format(["y1", "y2", "y3"]) == "y1^3 - 2*y1*y3^2 + y2^2*y3"
    assert f.latex(["y_{1}", "y_{2}", "y_{3}"]) == "y_{1}^{3}-2y_{1}y_{3}^{2}+y_{2}^{2}y_{3}"


def test_perfect_matchings_count():
    for n in (2, 4, 6, 8):
        expected = 1
        for k in range(1, n, 2):
            expected *= k
        assert len(list(perfect_matchings(list(range(n))))) == expected


def test_pfaffian_of_generic_4x4():
    # Pf of the generic 4x4 antisymmetric matrix is a b f - a c e + ... ; check with integer entries
    rows = [[[0], [1], [2], [3]], [[-1], [0], [4], [5]], [[-2], [-4], [0], [6]], [[-3], [-5], [-6], [0]]]
    pres = from_matrix([[c + [0] for c in row] for row in rows])
    f = pfaffian(pres)
    assert f == MultiPoly.monomial((2, 0), 1 * 6 - 2 * 5 + 3 * 4)


def test_builtin_pfaffians():
    assert pfaffian(builtin("G1C")) == -(y1 ** 3) + y1 ** 2 * y3 + y2 ** 2 * y3
    E2 = pfaffian(builtin("dusautoy-E", {"D": 2}))
    assert E2.coefficient((1, 0, 2)) == -2
    for name in ("G1C", "G2C", "dusautoy-E"):
        f = pfaffian(builtin(name))
        assert f.is_homogeneous() and f.degree() == 3


def test_odd_dimension_rejected():
    M = [[MultiPoly.zero(1)] * 3 for _ in range(3)]
    from pfaffzeta.polynomial import pfaffian_of

    with pytest.raises(PolynomialError):
        pfaffian_of(M)


@pytest.mark.parametrize("d,dprime", [(4, 2), (4, 3), (6, 2), (6, 3)])
def test_pfaffian_squared_is_determinant(d, dprime):
    rng = np.random.default_rng(d * 10 + dprime)
    for _ in range(5):
        pres = random_presentation(rng, d, dprime)
        assert pfaffian(pres) ** 2 == determinant(pres)


def test_determinant_of_diagonal():
    M = [[MultiPoly.const(int(i == j) * (i + 2), 1) for j in range(3)] for i in range(3)]
    assert determinant_of(M) == MultiPoly.const(24, 1)


def test_squarefree():
    f = pfaffian(builtin("G1C"))
    assert is_squarefree_over_Q(f)
    assert is_squarefree(f.reduce_mod(5))
    assert not is_squarefree_over_Q(y1 ** 2 * y3)
    # y1^2 + y2^2 = (y1 + y2)^2 in characteristic 2
    assert not is_squarefree((y1 ** 2 + y2 ** 2).reduce_mod(2))
    assert is_squarefree((y1 ** 2 + y2 ** 2).reduce_mod(3))


@pytest.mark.parametrize("n,p", [(2, 2), (2, 5), (3, 3), (3, 7)])
def test_projective_points_count_and_normalization(n, p):
    pts = list(projective_points(n, p))
    assert len(pts) == sum(p ** i for i in range(n))
    assert len(set(pts)) == len(pts)
    for pt in pts:
        last = max(i for i, x in enumerate(pt) if x)
        assert pt[last] == 1
