import numpy as np
import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix
from hypothesis import given, strategies as st

from pfaffzeta.linalg import (
    batched_local_valuations,
    cokernel_order,
    hermite_normal_form,
    kernel_basis_mod_p,
    local_valuations,
    rank_mod_p,
    smith_invariants,
    upper_adjugate,
    valuation,
)

small = st.integers(-9, 9)


def matrices(n, m):
    return st.lists(st.lists(small, min_size=m, max_size=m), min_size=n, max_size=n)


def test_valuation():
    assert valuation(48, 2) == 4
    assert valuation(0, 3, cap=5) == 5
    assert valuation(81, 3, cap=2) == 2
    with pytest.raises(ValueError):
        valuation(0, 3)


@given(matrices(3, 4), st.sampled_from([2, 3, 5]))
def test_rank_and_kernel(A, p):
    rank = rank_mod_p(A, p)
    K = kernel_basis_mod_p(A, p)
    assert rank + len(K) == 4
    for v in K:
        assert all(sum(a * x for a, x in zip(row, v)) % p == 0 for row in A)
    assert rank == DomainMatrix([[GF(p)(x) for x in row] for row in A], (3, 4), GF(p)).rank()


@given(matrices(3, 3))
def test_smith_matches_sympy(A):
    M = sympy.Matrix(A)
    if M.det() == 0:
        return
    ours = smith_invariants(A)
    D = smith_normal_form(M, domain=sympy.ZZ)
    theirs = sorted(abs(int(D[i, i])) for i in range(3))
    assert sorted(ours) == theirs
    assert all(b % a == 0 for a, b in zip(ours, ours[1:]))
    assert cokernel_order(A) == abs(int(M.det()))


def test_cokernel_order_needs_full_rank():
    with pytest.raises(ValueError):
        cokernel_order([[1, 2], [2, 4]])


@given(matrices(3, 3))
def test_hermite_normal_form(A):
    if sympy.Matrix(A).det() == 0:
        with pytest.raises(ValueError):
            hermite_normal_form(A)
        return
    H = hermite_normal_form(A)
    for i in range(3):
        assert H[i][i] > 0
        for j in range(i):
            assert H[i][j] == 0
        for j in range(i + 1, 3):
            assert 0 <= H[i][j] < H[j][j]
    # same row lattice: each is an integer combination of the other
    U = sympy.Matrix(H) * sympy.Matrix(A).inv()
    assert all(x.is_integer for x in U) and abs(U.det()) == 1
    assert hermite_normal_form(H) == H


@given(st.lists(st.integers(1, 6), min_size=3, max_size=3), st.lists(st.integers(0, 20), min_size=3, max_size=3))
def test_upper_adjugate(diag, upper):
    H = [[diag[0], upper[0], upper[1]], [0, diag[1], upper[2]], [0, 0, diag[2]]]
    adj = upper_adjugate(H)
    assert sympy.Matrix(adj) == sympy.Matrix(H).adjugate()


@given(matrices(3, 5), st.sampled_from([2, 3]), st.integers(1, 4))
def test_local_valuations_agree_with_smith(A, p, k):
    vals = sorted(local_valuations(A, p, k))
    inv = smith_invariants(A)
    expected = sorted([min(valuation(x, p), k) for x in inv] + [k] * (3 - len(inv)))
    assert vals == expected


@pytest.mark.parametrize("p,k", [(2, 3), (3, 2), (5, 2)])
def test_batched_matches_scalar(p, k, rng):
    A = rng.integers(-30, 30, size=(40, 3, 7)) * rng.choice([1, p, p * p], size=(40, 3, 7))
    N = p ** k
    out = batched_local_valuations(A % N, p, k)
    for b in range(40):
        assert sorted(out[b]) == sorted(local_valuations(A[b].tolist(), p, k))


def test_batched_rejects_large_modulus():
    with pytest.raises(OverflowError):
        batched_local_valuations(np.zeros((1, 2, 2), dtype=np.int64), 5, 14)
