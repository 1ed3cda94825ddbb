from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pfaffzeta import cones
from pfaffzeta.cones import ConeError, LaurentMonomial, fiber_count, fiber_data, in_N
from pfaffzeta.formulas import A_correction
from pfaffzeta.ratfun import expand_series, mono, series_total_degree

RS = (2, 3, 4, 5)


@st.composite
def points_of_N(draw, bound=15):
    a = draw(st.integers(1, bound))
    return a, draw(st.integers(1, a)), draw(st.integers(1, a))


def test_in_N():
    assert in_N(3, 1, 3) and not in_N(2, 3, 1) and not in_N(2, 0, 1)


def test_fiber_data_cases():
    assert fiber_data(4, 4, 4) == (0, 0)
    assert fiber_data(4, 1, 4) == (1, 3)
    assert fiber_data(4, 4, 2) == (1, 2)
    assert fiber_data(5, 2, 3) == (2, 5)
    with pytest.raises(ConeError):
        fiber_data(1, 2, 1)


@given(points_of_N(), st.sampled_from([2, 3, 7]))
def test_fiber_count_symbolic_matches_numeric(pt, p):
    assert fiber_count(*pt).evaluate((p, 1)) == fiber_count(*pt, p=p)


@given(points_of_N(), st.sampled_from([2, 4]), st.sampled_from(RS))
def test_each_point_lies_in_exactly_one_cone_and_is_monomial(pt, deficit, r):
    hits = [c for c, _ in cones.cone_table(deficit, r) if c.contains(*pt)]
    assert len(hits) == 1
    assert cones.laurent_holds(deficit, r, *pt)


@pytest.mark.parametrize("deficit", [2, 4])
def test_partition_to_bound(deficit):
    assert cones.partition_violations(deficit, 12) == []


@pytest.mark.parametrize("deficit", [2, 4])
def test_closed_forms_match_enumeration(deficit):
    for cone, _ in cones.cone_table(deficit):
        assert cones.brute_cone_series(cone, 12) == series_total_degree(cone.closed_form, 12), cone.label


def test_weights():
    assert cones.psi(4, 3, 1, 2, 3) == LaurentMonomial(18, 21 - 2 - 4)
    assert cones.psi(2, 3, 1, 1, 3) == LaurentMonomial(18, 21 - 4)
    with pytest.raises(ConeError):
        cones.psi(3, 1, 1, 1, 3)
    with pytest.raises(ConeError):
        cones.cone_table(3)


def test_substitution_monomials_are_corrected_signs():
    # Y and Z carry p^{+2s} (exponent -2 on Y) in the deficit-4 table
    rows = cones.cone_table(4, 3)
    assert rows[1][1].mY.exps == (-1, -2)
    assert rows[0][1].mY.exps == (0, -2)


@pytest.mark.parametrize("r", RS)
def test_assembly(r):
    assert cones.assemble_A(4, r) == A_correction(4, r)
    assert cones.assemble_A(2, r) == A_correction(3, r)
    assert cones.assemble_A(4, r) != A_correction(4, r, printed=True)


@pytest.mark.parametrize("p,K", [(3, 10), (5, 8), (2, 9)])
def test_enumeration_matches_closed_forms(p, K):
    for r in (2, 3):
        assert cones.enumerate_A(4, r, p, K) == expand_series(A_correction(4, r), p, K)
        assert cones.enumerate_A(2, r, p, K) == expand_series(A_correction(3, r), p, K)


def test_enumeration_detects_printed_form():
    assert cones.enumerate_A(4, 3, 3, 10) != expand_series(A_correction(4, 3, printed=True), 3, 10)


def test_fiber_counts_partition_the_preimage_sizes():
    # at fixed a the fibers partition a set of size p^{2(a-1)}
    p = 3
    for a in range(1, 5):
        total = sum(fiber_count(a, b, c, p) for b in range(1, a + 1) for c in range(1, a + 1))
        assert total == Fraction(p) ** (2 * a - 2)
