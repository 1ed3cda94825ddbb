"""Brute-force local normal zeta functions by sublattice enumeration.

For a class-2 group with G/G' = Z^d and G' = Z^{d'} central, the normal
subgroups of p-power index are counted by

    zeta(s) = zeta_{Z_p^d}(s) * sum_{L <= Z_p^{d'}} |Z^{d'} : L|^{d - s} |Z^d : X(L)|^{-s},

where X(L) = {g : [g, x_j] in L for all j}. With t = p^{-s} a lattice of
index p^k contributes p^{dk} t^{k + x(L)}, x(L) = log_p |Z^d : X(L)|.

Nothing here uses the closed forms. Lattices are enumerated in Hermite
normal form and x(L) is computed by linear algebra over Z/p^k. The
enumeration skips lattices that cannot contribute below the truncation
order, using a provable lower bound on x(L) (see :func:`x_lower_bound`);
``prune=False`` switches that off for cross-checking.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .linalg import (
    batched_local_valuations,
    cokernel_order,
    local_valuations,
    rank_mod_p,
    smith_invariants,
    upper_adjugate,
    valuation,
)
from .polynomial import pfaffian, projective_points
from .presentations import GroupPresentation, StructureTensor, structure_constants
from .ratfun import ZetaSeries, series_of_product_geometric

log = logging.getLogger(__name__)


class OracleBudgetError(RuntimeError):
    pass


@dataclass(frozen=True)
class LatticeHNF:
    """Row-HNF basis of a finite-index sublattice of Z^{d'}."""

    basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def index(self) -> int:
        out = 1
        for i in range(self.dim):
            out *= self.basis[i][i]
        return out

    def is_canonical(self) -> bool:
        n = self.dim
        H = self.basis
        for i in range(n):
            if H[i][i] <= 0:
                return False
            for j in range(n):
                if j < i and H[i][j] != 0:
                    return False
                if j > i and not 0 <= H[i][j] < H[j][j]:
                    return False
        return True

    def is_maximal(self, p: int) -> bool:
        """p^{-1} L is not contained in Z^{d'}."""
        return any(x % p for row in self.basis for x in row)

    def adjugate(self) -> list[list[int]]:
        return upper_adjugate([list(r) for r in self.basis])

    def exponent(self, p: int) -> int:
        """e with p^e Z^{d'} <= L minimal: the exponent of Z^{d'}/L."""
        k = valuation(self.index, p)
        adj = self.adjugate()
        m = min(valuation(x, p, k) for row in adj for x in row)
        return k - m

    def elementary_divisors(self) -> list[int]:
        return smith_invariants([list(r) for r in self.basis])


@dataclass(frozen=True)
class LatticeType:
    """Elementary-divisor type (I, r_I) of a maximal lattice.

    A maximal lattice has elementary divisors p^{e_1} <= ... <= p^{e_n} with
    e_1 = 0; I lists the positions i where e_{i+1} > e_i and r_I the jumps.
    """

    I: tuple[int, ...]
    r: tuple[int, ...]

    @classmethod
    def of(cls, L: LatticeHNF, p: int) -> "LatticeType":
        exps = sorted(valuation(x, p) for x in L.elementary_divisors())
        if exps[0] != 0:
            raise ValueError("lattice is not maximal")
        I, r = [], []
        for i in range(1, len(exps)):
            if exps[i] > exps[i - 1]:
                I.append(i)
                r.append(exps[i] - exps[i - 1])
        return cls(tuple(I), tuple(r))


# enumeration


def _compositions(k: int, n: int) -> Iterator[tuple[int, ...]]:
    if n == 1:
        yield (k,)
        return
    for a in range(k + 1):
        for rest in _compositions(k - a, n - 1):
            yield (a,) + rest


def block_size(exps: Sequence[int], p: int) -> int:
    """Number of HNF bases with diagonal p^{exps}: entries above p^{a_j} range over p^{a_j} values."""
    return p ** sum(a * j for j, a in enumerate(exps))


def _block(exps: Sequence[int], p: int) -> Iterator[LatticeHNF]:
    n = len(exps)
    slots = [(i, j) for j in range(n) for i in range(j)]
    ranges = [range(p ** exps[j]) for i, j in slots]
    for values in itertools.product(*ranges):
        H = [[0] * n for _ in range(n)]
        for i in range(n):
            H[i][i] = p ** exps[i]
        for (i, j), v in zip(slots, values):
            H[i][j] = v
        yield LatticeHNF(tuple(tuple(r) for r in H))


def enumerate_sublattices(dprime: int, p: int, k: int) -> list[LatticeHNF]:
    """All sublattices of Z^{d'} of index p^k, as HNF bases."""
    return [L for exps in _compositions(k, dprime) for L in _block(exps, p)]


def count_sublattices(dprime: int, p: int, k: int) -> int:
    return sum(block_size(exps, p) for exps in _compositions(k, dprime))


# x(L)


def commutator_matrix(lam: np.ndarray, L: LatticeHNF) -> list[list[int]]:
    """B = [C_1 adj(H) | ... | C_d adj(H)] with (C_j)_{i l} = lam[i, j, l]; d x (d d') integers.

    c in L iff c adj(H) = 0 mod det H, so g in X(L) iff g B = 0 mod p^k.
    """
    adj = L.adjugate()
    d, _, n = lam.shape
    rows = []
    for i in range(d):
        row = []
        for j in range(d):
            for m in range(n):
                row.append(sum(int(lam[i, j, l]) * adj[l][m] for l in range(n)))
        rows.append(row)
    return rows


def x_index(pres: GroupPresentation | StructureTensor, L: LatticeHNF, p: int, precision_cap: int | None = None) -> int:
    """log_p |Z^d : X(L)| via elementary divisors of B over Z/p^cap (cap >= k suffices)."""
    lam = pres.lam if isinstance(pres, StructureTensor) else structure_constants(pres).lam
    k = valuation(L.index, p)
    if k == 0:
        return 0
    cap = k if precision_cap is None else precision_cap
    if cap < k:
        raise ValueError("precision cap below the index exponent")
    vals = local_valuations(commutator_matrix(lam, L), p, cap)
    return sum(k - min(v, k) for v in vals)


def x_index_reference(pres: GroupPresentation, L: LatticeHNF, p: int) -> int:
    """Independent route: x = d k - log_p |coker [C ; diag(H, ..., H)]|, exact Smith form over Z.

    The image of g -> ([g, x_j])_j in (Z^{d'}/L)^d has order p^{dk} / |Z^{dd'} / (V + L^d)|,
    V the row space of the stacked commutator matrix C.
    """
    lam = structure_constants(pres).lam
    d, n = pres.d, pres.dprime
    k = valuation(L.index, p)
    rows = [[int(lam[i, j, m]) for j in range(d) for m in range(n)] for i in range(d)]
    for j in range(d):
        for b in L.basis:
            row = [0] * (d * n)
            row[j * n:(j + 1) * n] = b
            rows.append(row)
    order = cokernel_order(rows)
    return d * k - valuation(order, p)


def x_lower_bound(rho: int, L: LatticeHNF, p: int) -> int:
    """x(L) >= rho * e, rho = min rank of M(w) mod p, e the exponent of Z^{d'}/L.

    Z^{d'}/L surjects onto Z/p^e via some primitive w, so X(L) lies in
    {g : g M(w) = 0 mod p^e}, whose index is at least p^{e rank_p M(w)}.
    """
    return rho * L.exponent(p)


def min_rank(pres: GroupPresentation, p: int) -> int:
    """min over w in P^{d'-1}(F_p) of rank_p M(w) (zeros of Pf only, unless Pf = 0 mod p)."""
    f = pfaffian(pres).reduce_mod(p)
    best = pres.d
    if f.is_zero():
        cands = projective_points(pres.dprime, p)
    else:
        cands = (w for w in projective_points(pres.dprime, p) if f.evaluate(w) == 0)
    for w in cands:
        best = min(best, rank_mod_p(pres.evaluate(w), p))
    return best


# the series


@dataclass
class OracleStats:
    lattices: int = 0
    blocks: int = 0
    skipped_blocks: int = 0
    skipped_lattices: int = 0
    rho: int = 0
    extra: dict = field(default_factory=dict)


def default_budget(p: int, K: int) -> int:
    return 4 * p ** (2 * K)


def _planned_blocks(dprime: int, p: int, K: int, rho: int, prune: bool):
    for k in range(K + 1):
        for exps in _compositions(k, dprime):
            # the exponent e of Z^{d'}/L is at least every diagonal exponent
            if prune and k + rho * max(exps, default=0) > K:
                yield k, exps, False
            else:
                yield k, exps, True


def _x_values_block(lam: np.ndarray, exps: Sequence[int], p: int, k: int, rho: int, K: int, prune: bool):
    """(contribution exponent k + x) for every lattice in a block; None entries were pruned."""
    n = len(exps)
    N = p ** k
    d = lam.shape[0]
    if k == 0:
        return [0], 0
    if n == 3 and N * N < 2 ** 62 and block_size(exps, p) >= 64:
        return _x_values_block_numpy(lam, exps, p, k, rho, K, prune)
    out = []
    skipped = 0
    for L in _block(exps, p):
        if prune and k + rho * L.exponent(p) > K:
            skipped += 1
            continue
        vals = local_valuations(commutator_matrix(lam, L), p, k)
        out.append(k + sum(k - min(v, k) for v in vals))
    return out, skipped


def _x_values_block_numpy(lam, exps, p, k, rho, K, prune):
    a1, a2, a3 = exps
    N = p ** k
    g = np.meshgrid(
        np.arange(p ** a2, dtype=np.int64),
        np.arange(p ** a3, dtype=np.int64),
        np.arange(p ** a3, dtype=np.int64),
        indexing="ij",
    )
    h12, h13, h23 = (x.ravel() for x in g)
    d1, d2, d3 = p ** a1, p ** a2, p ** a3
    B = len(h12)
    adj = np.zeros((B, 3, 3), dtype=np.int64)
    adj[:, 0, 0] = d2 * d3
    adj[:, 1, 1] = d1 * d3
    adj[:, 2, 2] = d1 * d2
    adj[:, 0, 1] = -h12 * d3
    adj[:, 1, 2] = -h23 * d1
    adj[:, 0, 2] = h12 * h23 - h13 * d2
    skipped = 0
    if prune:
        # exponent of Z^3/L = k - min valuation of adj entries
        flat = adj.reshape(B, 9) % N
        vmin = _min_valuation(flat, p, k)
        keep = k + rho * (k - vmin) <= K
        skipped = int((~keep).sum())
        adj = adj[keep]
        B = len(adj)
        if B == 0:
            return [], skipped
    lam_i = np.array(lam, dtype=np.int64)  # (d, d, 3)
    d = lam_i.shape[0]
    # M[b, i, j, m] = sum_l lam[i, j, l] adj[b, l, m]
    M = np.einsum("ijl,blm->bijm", lam_i, adj % N) % N
    M = M.reshape(B, d, d * 3)
    vals = batched_local_valuations(M, p, k)
    x = (k - np.minimum(vals, k)).sum(axis=1)
    return list((k + x).tolist()), skipped


def _min_valuation(A: np.ndarray, p: int, k: int) -> np.ndarray:
    out = np.full(A.shape[0], k, dtype=np.int64)
    cur = A.copy()
    for e in range(k):
        hit = (cur % p != 0).any(axis=1) & (out == k)
        out[hit] = e
        cur = np.where(cur % p == 0, cur // p, 0)
    return out


def _lattice_sum(pres: GroupPresentation, p: int, K: int, prune: bool, budget: int | None, maximal_only: bool, stats: OracleStats | None):
    lam = structure_constants(pres).lam
    d = pres.d
    rho = min_rank(pres, p) if prune else 0
    budget = default_budget(p, K) if budget is None else budget
    plan = list(_planned_blocks(pres.dprime, p, K, rho, prune))
    work = sum(block_size(exps, p) for _, exps, keep in plan if keep)
    if work > budget:
        raise OracleBudgetError(f"{work} lattices to process exceeds budget {budget} (p={p}, K={K})")
    stats = stats if stats is not None else OracleStats()
    stats.rho = rho
    coeffs = [0] * (K + 1)
    for k, exps, keep in plan:
        if not keep:
            stats.skipped_blocks += 1
            stats.skipped_lattices += block_size(exps, p)
            continue
        stats.blocks += 1
        if maximal_only:
            vals, skipped = _maximal_values(lam, exps, p, k, rho, K, prune)
        else:
            vals, skipped = _x_values_block(lam, exps, p, k, rho, K, prune)
        stats.lattices += len(vals)
        stats.skipped_lattices += skipped
        w = p ** (d * k)
        for e in vals:
            if e <= K:
                coeffs[e] += w
    log.debug("oracle p=%d K=%d: %s", p, K, stats)
    return coeffs


def _maximal_values(lam, exps, p, k, rho, K, prune):
    out = []
    skipped = 0
    for L in _block(exps, p):
        if not L.is_maximal(p):
            continue
        if k and prune and k + rho * L.exponent(p) > K:
            skipped += 1
            continue
        if k == 0:
            out.append(0)
            continue
        vals = local_valuations(commutator_matrix(lam, L), p, k)
        out.append(k + sum(k - min(v, k) for v in vals))
    return out, skipped


def oracle_zeta(pres: GroupPresentation, p: int, K: int, prune: bool = True, budget: int | None = None, stats: OracleStats | None = None) -> ZetaSeries:
    """a_{p^n} for n = 0..K, normal subgroups of index p^n, by enumeration."""
    coeffs = _lattice_sum(pres, p, K, prune, budget, False, stats)
    zd = series_of_product_geometric(p, [(i, 1) for i in range(pres.d)], K)
    return zd * ZetaSeries(p, coeffs, K)


def maximal_only_sum(pres: GroupPresentation, p: int, K: int, prune: bool = True, budget: int | None = None, stats: OracleStats | None = None) -> ZetaSeries:
    """sum over maximal L of p^{dk} t^{k + x(L)} up to t^K."""
    return ZetaSeries(p, _lattice_sum(pres, p, K, prune, budget, True, stats), K)


def homothety_factor(pres: GroupPresentation, p: int, K: int) -> ZetaSeries:
    """Series of 1 / (1 - p^{d d'} t^{d + d'}), the homothety classes' contribution."""
    return series_of_product_geometric(p, [(pres.d * pres.dprime, pres.d + pres.dprime)], K)


def zeta_from_maximal(pres: GroupPresentation, p: int, K: int, **kw) -> ZetaSeries:
    """zeta_{Z^d} * homothety factor * maximal_only_sum; equals oracle_zeta when the radical of M mod p is trivial."""
    zd = series_of_product_geometric(p, [(i, 1) for i in range(pres.d)], K)
    return zd * homothety_factor(pres, p, K) * maximal_only_sum(pres, p, K, **kw)


def index_p_count(d: int, p: int) -> int:
    """(p^d - 1)/(p - 1): hyperplanes of F_p^d."""
    return sum(p ** i for i in range(d))


__all__ = [
    "LatticeHNF",
    "LatticeType",
    "OracleBudgetError",
    "OracleStats",
    "enumerate_sublattices",
    "count_sublattices",
    "x_index",
    "x_index_reference",
    "x_lower_bound",
    "min_rank",
    "oracle_zeta",
    "maximal_only_sum",
    "zeta_from_maximal",
    "homothety_factor",
    "default_budget",
    "index_p_count",
]
