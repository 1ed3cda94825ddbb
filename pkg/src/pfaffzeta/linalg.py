"""Integer and p-local linear algebra: ranks mod p, Hermite and Smith forms.

Two independent routes to elementary divisors are provided. ``smith_invariants``
works over Z with exact integers. ``local_valuations`` (and its batched
numpy version) works over Z/p^k and returns the p-adic valuations capped
at k.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np


def valuation(x: int, p: int, cap: int | None = None) -> int:
    """v_p(x), with v_p(0) = cap (or raise if cap is None)."""
    if x == 0:
        if cap is None:
            raise ValueError("valuation of zero")
        return cap
    v = 0
    while x % p == 0:
        x //= p
        v += 1
        if cap is not None and v >= cap:
            return cap
    return v


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    A = [[x % p for x in row] for row in rows]
    if not A:
        return 0
    n, m = len(A), len(A[0])
    rank = 0
    for col in range(m):
        piv = next((i for i in range(rank, n) if A[i][col]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][col], -1, p)
        A[rank] = [x * inv % p for x in A[rank]]
        for i in range(n):
            if i != rank and A[i][col]:
                f = A[i][col]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[rank])]
        rank += 1
        if rank == n:
            break
    return rank


def kernel_basis_mod_p(rows: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """A basis of {v : A v = 0} over F_p."""
    A = [[x % p for x in row] for row in rows]
    m = len(A[0]) if A else 0
    pivots = []
    rank = 0
    for col in range(m):
        piv = next((i for i in range(rank, len(A)) if A[i][col]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][col], -1, p)
        A[rank] = [x * inv % p for x in A[rank]]
        for i in range(len(A)):
            if i != rank and A[i][col]:
                f = A[i][col]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fcol in free:
        v = [0] * m
        v[fcol] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -A[i][fcol] % p
        basis.append(v)
    return basis


# exact Smith form over Z


def smith_invariants(rows: Sequence[Sequence[int]]) -> list[int]:
    """Non-zero invariant factors d_1 | d_2 | ... of an integer matrix (exact)."""
    A = [list(map(int, row)) for row in rows]
    if not A or not A[0]:
        return []
    n, m = len(A), len(A[0])
    out = []
    t = 0
    while t < min(n, m):
        # pivot: smallest non-zero absolute value in the remaining block
        best = None
        for i in range(t, n):
            for j in range(t, m):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            changed = False
            piv = A[t][t]
            for i in range(t + 1, n):
                if A[i][t]:
                    q = A[i][t] // piv
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                    if A[i][t]:
                        changed = True
            for j in range(t + 1, m):
                if A[t][j]:
                    q = A[t][j] // piv
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        changed = True
            if changed:
                # move the smallest remainder into the pivot position and repeat
                best = None
                for i in range(t, n):
                    if A[i][t] and (best is None or abs(A[i][t]) < abs(A[best][t])):
                        best = i
                A[t], A[best] = A[best], A[t]
                bestc = None
                for j in range(t, m):
                    if A[t][j] and (bestc is None or abs(A[t][j]) < abs(A[t][bestc])):
                        bestc = j
                for row in A:
                    row[t], row[bestc] = row[bestc], row[t]
                continue
            # divisibility condition: the pivot must divide the rest of the block
            bad = next(
                ((i, j) for i in range(t + 1, n) for j in range(t + 1, m) if A[i][j] % piv),
                None,
            )
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad[0]])]
        out.append(abs(A[t][t]))
        t += 1
    return out


def cokernel_order(rows: Sequence[Sequence[int]]) -> int:
    """|Z^m / row space| for a matrix of full column rank m."""
    inv = smith_invariants(rows)
    m = len(rows[0])
    if len(inv) < m:
        raise ValueError("matrix does not have full column rank; cokernel is infinite")
    out = 1
    for x in inv:
        out *= x
    return out


# Hermite normal form


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row HNF of a non-singular square integer matrix.

    Upper triangular, positive diagonal, and 0 <= h_ij < h_jj above the
    diagonal; the result spans the same lattice as the rows.
    """
    A = [list(map(int, row)) for row in rows]
    n = len(A)
    for col in range(n):
        # gcd-combine rows col..n-1 into a single pivot in this column
        while True:
            nz = [i for i in range(col, n) if A[i][col]]
            if not nz:
                raise ValueError("singular matrix")
            i0 = min(nz, key=lambda i: abs(A[i][col]))
            A[col], A[i0] = A[i0], A[col]
            done = True
            for i in range(col + 1, n):
                if A[i][col]:
                    q = A[i][col] // A[col][col]
                    A[i] = [x - q * y for x, y in zip(A[i], A[col])]
                    if A[i][col]:
                        done = False
            if done:
                break
        if A[col][col] < 0:
            A[col] = [-x for x in A[col]]
    for col in range(n):
        d = A[col][col]
        for i in range(col):
            q = A[i][col] // d
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[col])]
    return A


def upper_adjugate(H: Sequence[Sequence[int]]) -> list[list[int]]:
    """adj(H) = det(H) H^{-1} of an upper-triangular integer matrix, exactly."""
    n = len(H)
    det = 1
    for i in range(n):
        det *= H[i][i]
    adj = [[0] * n for _ in range(n)]
    for j in range(n):
        adj[j][j] = det // H[j][j]
        for i in range(j - 1, -1, -1):
            s = sum(H[i][l] * adj[l][j] for l in range(i + 1, j + 1))
            adj[i][j] = -s // H[i][i]
    return adj


# elementary divisors over Z/p^k


def local_valuations(rows: Sequence[Sequence[int]], p: int, k: int) -> list[int]:
    """min(v_p(e_i), k) for the elementary divisors e_1..e_n of an n x m matrix (n rows)."""
    N = p ** k
    A = [[x % N for x in row] for row in rows]
    n = len(A)
    m = len(A[0]) if A else 0
    vals = []
    active = list(range(n))
    while active:
        best = None
        for i in active:
            for j in range(m):
                v = valuation(A[i][j], p, k)
                if best is None or v < best[0]:
                    best = (v, i, j)
                    if v == 0:
                        break
            if best is not None and best[0] == 0:
                break
        if best is None or best[0] >= k:
            vals.extend([k] * len(active))
            break
        v, i, j = best
        vals.append(v)
        pv = p ** v
        u_inv = pow(A[i][j] // pv, -1, N)
        for i2 in active:
            if i2 != i and A[i2][j]:
                f = (A[i2][j] // pv) * u_inv % N
                A[i2] = [(a - f * b) % N for a, b in zip(A[i2], A[i])]
        active.remove(i)
    return vals


def _valuation_array(A: np.ndarray, p: int, k: int) -> np.ndarray:
    v = np.full(A.shape, k, dtype=np.int64)
    nz = A != 0
    v[nz] = 0
    cur = A.copy()
    for step in range(1, k):
        div = nz & (cur % p == 0)
        if not div.any():
            break
        v[div] = step
        cur = np.where(div, cur // p, cur)
        nz = div
    return v


def batched_local_valuations(A: np.ndarray, p: int, k: int) -> np.ndarray:
    """The same as :func:`local_valuations` for a stack of matrices A[batch, n, m].

    Entries must already be reduced mod p^k, and (p^k)^2 must fit in int64.
    """
    N = p ** k
    if N * N >= 2 ** 62:
        raise OverflowError("modulus too large for the int64 path")
    A = np.array(A, dtype=np.int64) % N
    B, n, m = A.shape
    out = np.empty((B, n), dtype=np.int64)
    inv_table = _unit_inverse_table(p, k)
    powers = np.array([p ** e for e in range(k + 1)], dtype=np.int64)
    idx = np.arange(B)
    for step in range(n):
        V = _valuation_array(A, p, k)
        flat = V.reshape(B, n * m).argmin(axis=1)
        pi, pj = flat // m, flat % m
        v = V[idx, pi, pj]
        out[:, step] = v
        live = v < k
        if not live.any():
            out[:, step + 1:] = k
            break
        pv = powers[np.minimum(v, k)]
        piv = A[idx, pi, pj]
        unit = np.where(live, piv // np.where(live, pv, 1), 1)
        u_inv = inv_table[unit % N]
        col = A[idx, :, pj]  # (B, n)
        f = ((col // pv[:, None]) % N) * u_inv[:, None] % N
        f[idx, pi] = 0
        f[~live] = 0
        prow = A[idx, pi, :]  # (B, m)
        A = (A - f[:, :, None] * prow[:, None, :]) % N
        A[idx, pi, :] = 0
    return out


_INV_CACHE: dict = {}


def _unit_inverse_table(p: int, k: int) -> np.ndarray:
    key = (p, k)
    if key not in _INV_CACHE:
        N = p ** k
        table = np.zeros(N, dtype=np.int64)
        units = np.array([u for u in range(N) if u % p], dtype=np.int64)
        # u^{-1} = u^{phi(N) - 1} mod N, evaluated by repeated squaring on the array
        e = N // p * (p - 1) - 1
        acc = np.ones_like(units)
        base = units.copy()
        while e:
            if e & 1:
                acc = acc * base % N
            base = base * base % N
            e >>= 1
        table[units] = acc
        _INV_CACHE[key] = table
    return _INV_CACHE[key]
