from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from pfaffzeta import formulas
from pfaffzeta.formulas import (
    A_correction,
    NumericalData,
    W,
    assemble_zeta,
    correction_factor,
    flag_coeffs,
    igusa_sum,
    node_coefficient,
    prefactor,
)
from pfaffzeta.ratfun import expand_series, geom, mono

RS = (2, 3, 4, 5)


def test_numerical_data():
    nd = NumericalData(6, 3)
    assert nd.a == (8, 7) and nd.b == (14, 8)
    assert nd.X(1) == (14, 8) and nd.X(2) == (8, 7)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_flag_counts_over_F2(n):
    # all flags: the full flag variety has prod_{k<=n} (q^k - 1)/(q - 1) points
    full = flag_coeffs(range(1, n), n)
    expected = 1
    for k in range(1, n + 1):
        expected *= sum(2 ** i for i in range(k))
    assert sum(c * 2 ** i for i, c in enumerate(full)) == expected
    # lines in F_q^n
    assert flag_coeffs([1], n) == [1] * n


def test_flag_type_out_of_range():
    with pytest.raises(ValueError):
        flag_coeffs([3], 3)


@pytest.mark.parametrize("r", RS)
def test_igusa_sum_is_W1(r):
    assert igusa_sum(2 * r, 3) == W(1, r)


@pytest.mark.parametrize("r", RS)
def test_W2_from_point_corrections(r):
    assert W(2, r) == (A_correction(2, r) - A_correction(1, r)) * correction_factor(r)


@pytest.mark.parametrize("r", RS)
def test_node_coefficients_against_displays(r):
    assert node_coefficient(2, r) == W(3, r)
    assert node_coefficient(1, r) == -W(4, r)
    assert node_coefficient(1, r) != W(3, r)


@pytest.mark.parametrize("r", RS)
def test_printed_A4_differs(r):
    assert A_correction(4, r, printed=True) != A_correction(4, r)
    assert A_correction(3, r, printed=True) == A_correction(3, r)


def test_bad_arguments():
    with pytest.raises(ValueError):
        W(5, 3)
    with pytest.raises(ValueError):
        W(1, 1)
    with pytest.raises(ValueError):
        A_correction(5, 3)
    with pytest.raises(ValueError):
        node_coefficient(3, 3)
    with pytest.raises(ValueError):
        igusa_sum(5, 3)


def test_prefactor_is_product_of_geometric_series():
    assert prefactor(2) == geom(0, 1) * geom(1, 1) * geom(2, 1) * geom(3, 1) * geom(12, 7)


@pytest.mark.parametrize("r", RS)
@pytest.mark.parametrize("p", [2, 3, 5])
def test_first_coefficients(r, p):
    z = assemble_zeta(r)
    d = 2 * r
    for c, n1, n2 in ((p + 1, 0, 0), (p + 1, 1, 0), (p + 1, 0, 1), (0, 0, 0)):
        s = z.series(p, 3, c, n1, n2)
        assert s[0] == 1
        # index-p normal subgroups are the hyperplanes of G / G' G^p. That is F_p^d unless
        # M vanishes at a point mod p (rank deficit r), which adds one dimension.
        extra = 1 if (n2 and r == 2) else 0
        assert s[1] == sum(p ** i for i in range(d + extra))


@given(st.sampled_from([2, 3, 5, 7, 11]), st.integers(0, 12), st.integers(0, 2), st.integers(0, 2))
def test_series_is_linear_in_invariants(p, c, n1, n2):
    z = assemble_zeta(3)
    direct = expand_series(z.evaluate(c, n1, n2), p, 4)
    assert z.series(p, 4, c, n1, n2) == direct


def test_evaluate_matches_parts():
    z = assemble_zeta(3)
    F = z.evaluate(6, 1, 0)
    assert F == z.prefactor * (z.base + 6 * z.coeff_c + z.coeff_n1)


@pytest.mark.parametrize("r", RS)
def test_functional_equation_report(r):
    rep = formulas.check_functional_equation(r)
    assert rep, rep.summary()
    assert not rep.failures
    assert formulas.zeta_exponents(r) == (comb(2 * r + 3, 2), 4 * r + 3)


def test_each_W_has_the_claimed_symmetry():
    for k, e in ((1, 3), (2, 4), (3, 3), (4, 3)):
        assert W(k, 3).invert_vars() == mono(e, 0) * W(k, 3)
        assert W(k, 3).invert_vars() != mono(e + 1, 0) * W(k, 3)


@pytest.mark.parametrize("dprime", [2, 3, 4])
def test_igusa_functional_equation(dprime):
    sign, e = formulas.igusa_exponent(dprime)
    A = igusa_sum(6, dprime)
    assert A.invert_vars() == sign * mono(e, 0) * A


def test_elliptic_display_normalization():
    z = assemble_zeta(3)
    norm = formulas.elliptic_display_prefactor()
    assert formulas.elliptic_display(1) / norm == z.base
    assert formulas.elliptic_display(2) / norm == z.coeff_c
    # the printed common factor is not the d = 6 prefactor
    assert norm != prefactor(3)
    assert formulas.elliptic_display(1) != prefactor(3) * z.base


def test_series_cache_returns_consistent_values():
    z = assemble_zeta(3)
    a = z.series(5, 4, 6, 0, 1)
    b = z.series(5, 4, 6, 0, 1)
    assert a == b and a is not b
    assert all(isinstance(x, (int, Fraction)) for x in a.coeffs)
