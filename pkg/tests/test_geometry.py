import numpy as np
import pytest

from pfaffzeta import geometry
from pfaffzeta.geometry import BadPrimeError, ProjPoint, classify_singular, curve_points, invariants
from pfaffzeta.polynomial import MultiPoly, pfaffian
from pfaffzeta.presentations import block_presentation, builtin, random_presentation

y1, y2, y3 = (MultiPoly.var(i, 3) for i in range(3))
GOOD = (5, 13, 17, 29)
FLAGGED = (2, 3, 7, 11, 19, 23)


def test_projpoint_normalize():
    assert ProjPoint.normalize((2, 4, 2), 5).coords == (1, 2, 1)
    assert ProjPoint.normalize((3, 0, 0), 7).coords == (1, 0, 0)
    with pytest.raises(ValueError):
        ProjPoint.normalize((0, 5, 0), 5)


def test_smooth_conic_has_p_plus_one_points():
    f = y1 ** 2 + y2 ** 2 - y3 ** 2
    for p in (3, 5, 7, 11):
        assert len(curve_points(f, p)) == p + 1


def test_classification():
    nodal = y2 ** 2 * y3 - y1 ** 2 * (y1 + y3)
    cusp = y2 ** 2 * y3 - y1 ** 3
    origin = ProjPoint((0, 0, 1))
    assert classify_singular(nodal, origin, 5) == ("node", True)          # tangents y2 = +-y1
    nonsplit = y2 ** 2 * y3 + y1 ** 2 * (y1 + y3)
    assert classify_singular(nonsplit, origin, 7) == ("node", False)      # y2^2 + y1^2, -1 not a square mod 7
    assert classify_singular(nonsplit, origin, 5) == ("node", True)
    assert classify_singular(cusp, origin, 5) == ("worse", None)
    assert classify_singular(nodal, ProjPoint((0, 1, 0)), 5)[0] == "smooth"
    with pytest.raises(ValueError):
        classify_singular(nodal, ProjPoint((1, 1, 1)), 5)


def test_classification_in_characteristic_two():
    assert classify_singular(y2 ** 2 * y3 + y1 * y2 * y3 + y1 ** 3, ProjPoint((0, 0, 1)), 2) == ("node", True)
    assert classify_singular(y2 ** 2 * y3 + y1 * y2 * y3 + y1 ** 2 * y3 + y1 ** 3, ProjPoint((0, 0, 1)), 2) == ("node", False)
    assert classify_singular(y2 ** 2 * y3 + y1 ** 2 * y3 + y1 ** 3, ProjPoint((0, 0, 1)), 2) == ("worse", None)


def test_lines():
    assert geometry.lines_on_curve(y1 * (y2 ** 2 - y1 * y3), 5) == [ProjPoint((1, 0, 0))]
    assert not geometry.contains_line(pfaffian(builtin("G1C")), 5)


@pytest.mark.parametrize("name,nodes", [("G1C", (0, 1)), ("G2C", (1, 0))])
def test_example_groups(name, nodes):
    pres = builtin(name)
    for p in GOOD:
        inv = invariants(pres, p)
        assert not inv.bad, inv.bad_reasons
        assert inv.c_total == p + 1
        assert (inv.n1, inv.n2) == nodes
        assert inv.plane_point_count == p
    for p in FLAGGED:
        inv = invariants(pres, p)
        assert inv.bad
        assert inv.c_total == p + 1


def test_bad_reasons_at_two_and_three():
    inv = invariants(builtin("G1C"), 2)
    assert inv.bad and any("characteristic 2" in r for r in inv.bad_reasons)
    inv = invariants(builtin("G2C"), 3)
    assert any("tangents" in r for r in inv.bad_reasons)


def test_vanishing_pfaffian_mod_p():
    R = [[[3, 0, 0], [0, 3, 0], [0, 0, 0]], [[0, 0, 0], [0, 0, 3], [3, 0, 0]], [[0, 3, 0], [0, 0, 0], [0, 0, 3]]]
    pres = block_presentation(R)
    with pytest.raises(BadPrimeError):
        invariants(pres, 3)
    assert geometry.good_primes(pres, [3]) == []


def test_non_squarefree_and_lines_are_flagged():
    # R = diag(y1, y1, y2): Pf = -y1^2 y2 up to sign
    R = [[[1, 0, 0], [0, 0, 0], [0, 0, 0]], [[0, 0, 0], [1, 0, 0], [0, 0, 0]], [[0, 0, 0], [0, 0, 0], [0, 1, 0]]]
    inv = invariants(block_presentation(R), 5)
    assert inv.bad
    assert any("square-free" in r for r in inv.bad_reasons)
    assert any("line" in r for r in inv.bad_reasons)


def test_elliptic_curve_counts():
    E = builtin("dusautoy-E", {"D": 1})
    # recount the plane points chart by chart
    f = pfaffian(E)
    for p in (3, 5, 7, 11, 13):
        inv = invariants(E, p)
        affine = sum(1 for a in range(p) for b in range(p) if f.evaluate((a, b, 1)) % p == 0)
        at_infinity = sum(1 for a in range(p) if f.evaluate((a, 1, 0)) % p == 0) + (f.evaluate((1, 0, 0)) % p == 0)
        assert inv.plane_point_count == affine + at_infinity
        if not inv.bad:
            assert inv.c_total == inv.smooth_point_count == inv.plane_point_count


def test_rank_deficits_of_nodes():
    # G1C's node at (0,0,1) has M of rank 2 (deficit 2), G2C's rank 4 (deficit 1)
    for name, j in (("G1C", 2), ("G2C", 1)):
        pres = builtin(name)
        assert geometry.rank_deficit(pres, (0, 0, 1), 5) == j


def test_regularity():
    for p in (3, 5, 7):
        assert geometry.is_regular_at(builtin("G2C"), p)
        assert not geometry.is_regular_at(builtin("G1C"), p)
    assert geometry.min_rank_mod_p(builtin("G1C"), 5) == 2


def test_requires_plane_curves_and_primes():
    with pytest.raises(ValueError):
        invariants(random_presentation(np.random.default_rng(0), 4, 2), 5)
    with pytest.raises(ValueError):
        invariants(builtin("G1C"), 9)


def test_to_json():
    rec = invariants(builtin("G2C"), 5).to_json()
    assert rec["c_total"] == 6 and rec["nodes"][0]["rank_deficit"] == 1
    assert rec["nodes"][0]["point"] == [0, 0, 1]
