"""Invariants of the Pfaffian curve over F_p.

For a presentation with d' = 3 and a prime p this counts the points of the
smooth model (smooth plane points plus two branches per split node) and
the nodes by rank deficit of M. It also diagnoses primes at which the
closed formula is not claimed: worse singularities, non-split or degenerate
nodes, deficit > 2, Pf not square-free mod p, lines on the curve, and
characteristic 2 whenever the curve is singular.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .linalg import kernel_basis_mod_p, rank_mod_p
from .polynomial import MultiPoly, is_squarefree, pfaffian, projective_points
from .presentations import GroupPresentation


class BadPrimeError(ValueError):
    pass


def _require_prime(p: int) -> None:
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not prime")


@dataclass(frozen=True, order=True)
class ProjPoint:
    coords: tuple[int, ...]

    @classmethod
    def normalize(cls, coords: Sequence[int], p: int) -> "ProjPoint":
        c = [x % p for x in coords]
        nz = [i for i, x in enumerate(c) if x]
        if not nz:
            raise ValueError("the zero vector is not a projective point")
        inv = pow(c[nz[-1]], -1, p)
        return cls(tuple(x * inv % p for x in c))

    def __iter__(self):
        return iter(self.coords)


@dataclass(frozen=True)
class NodeInfo:
    point: ProjPoint
    rank_deficit: int
    slopes_rational: bool
    branch_count: int
    kind: str = "node"


@dataclass
class PrimeInvariants:
    p: int
    smooth_point_count: int
    nodes: list = field(default_factory=list)
    c_total: int = 0
    n1: int = 0
    n2: int = 0
    bad: bool = False
    bad_reasons: list = field(default_factory=list)
    plane_point_count: int = 0

    def to_json(self) -> dict:
        out = asdict(self)
        out["nodes"] = [
            {
                "point": list(n.point.coords),
                "rank_deficit": n.rank_deficit,
                "slopes_rational": n.slopes_rational,
                "branch_count": n.branch_count,
                "kind": n.kind,
            }
            for n in self.nodes
        ]
        return out


# point scan


def _eval_mod_p(f: MultiPoly, pts: np.ndarray, p: int) -> np.ndarray:
    out = np.zeros(len(pts), dtype=np.int64)
    for e, c in f.terms.items():
        term = np.full(len(pts), int(c) % p, dtype=np.int64)
        for i, k in enumerate(e):
            if k:
                # powers by repeated multiplication keep values below p^2
                for _ in range(k):
                    term = term * pts[:, i] % p
        out = (out + term) % p
    return out


def curve_points(f: MultiPoly, p: int) -> list[ProjPoint]:
    """All points of P^{n-1}(F_p) on f = 0, in the canonical scan order."""
    f = f if f.modulus == p else f.reduce_mod(p)
    if f.is_zero():
        raise BadPrimeError(f"polynomial vanishes identically mod {p}")
    pts = np.array(list(projective_points(f.nvars, p)), dtype=np.int64)
    vals = _eval_mod_p(f, pts, p)
    return [ProjPoint(tuple(int(x) for x in row)) for row in pts[vals == 0]]


# local analysis at a point


def _affine_chart(f: MultiPoly, point: ProjPoint, p: int) -> MultiPoly:
    """f in local coordinates u centred at the point, in the chart where its last non-zero coordinate is 1."""
    n = f.nvars
    coords = point.coords
    k = max(i for i, x in enumerate(coords) if x)
    others = [i for i in range(n) if i != k]
    images = []
    for i in range(n):
        if i == k:
            images.append(MultiPoly.const(1, n - 1, p))
        else:
            j = others.index(i)
            images.append(MultiPoly.const(coords[i], n - 1, p) + MultiPoly.var(j, n - 1, p))
    return f.compose(images)


def tangent_cone(f: MultiPoly, point: ProjPoint, p: int) -> MultiPoly:
    """Lowest-degree part of f at the point, in the local affine coordinates."""
    g = _affine_chart(f if f.modulus == p else f.reduce_mod(p), point, p)
    if g.is_zero():
        raise BadPrimeError("polynomial vanishes identically on the chart")
    low = min(sum(e) for e in g.terms)
    return g.homogeneous_part(low)


def _binary_roots(q: MultiPoly, p: int) -> int:
    """Number of zeros of a binary form on P^1(F_p)."""
    return sum(1 for pt in projective_points(2, p) if q.evaluate(pt) == 0)


def classify_singular(f: MultiPoly, point: ProjPoint, p: int):
    """Return ("smooth", None), ("node", slopes_rational) or ("worse", None)."""
    fp = f if f.modulus == p else f.reduce_mod(p)
    if fp.evaluate(point.coords) != 0:
        raise ValueError(f"{point.coords} is not on the curve")
    if any(fp.diff(i).evaluate(point.coords) for i in range(fp.nvars)):
        return "smooth", None
    if fp.nvars != 3:
        raise ValueError("singularity analysis is for plane curves")
    g = _affine_chart(fp, point, p)
    q = g.homogeneous_part(2)
    if q.is_zero():
        return "worse", None
    A = q.coefficient((2, 0))
    B = q.coefficient((1, 1))
    C = q.coefficient((0, 2))
    if p == 2:
        # in characteristic 2 a binary quadratic is a square iff its middle coefficient vanishes
        if B == 0:
            return "worse", None
        return "node", _binary_roots(q, p) == 2
    disc = (B * B - 4 * A * C) % p
    if disc == 0:
        return "worse", None
    return "node", pow(disc, (p - 1) // 2, p) == 1


def rank_deficit(pres: GroupPresentation, point: ProjPoint | Sequence[int], p: int) -> int:
    coords = point.coords if isinstance(point, ProjPoint) else tuple(point)
    rank = rank_mod_p(pres.evaluate(coords), p)
    return pres.r - rank // 2


# lines


def lines_on_curve(f: MultiPoly, p: int) -> list[ProjPoint]:
    """Lines a.y = 0 of P^2(F_p) contained in f = 0, given by their coefficient vectors a."""
    fp = f if f.modulus == p else f.reduce_mod(p)
    found = []
    for a in projective_points(fp.nvars, p):
        u, v = kernel_basis_mod_p([list(a)], p)
        s, t = MultiPoly.var(0, 2, p), MultiPoly.var(1, 2, p)
        images = [s * u[i] + t * v[i] for i in range(fp.nvars)]
        if fp.compose(images).is_zero():
            found.append(ProjPoint(a))
    return found


def contains_line(f: MultiPoly, p: int) -> bool:
    return bool(lines_on_curve(f, p))


# assembly


def invariants(pres: GroupPresentation, p: int, f: MultiPoly | None = None) -> PrimeInvariants:
    """Point counts, node data and bad-prime diagnostics for the Pfaffian curve mod p."""
    if pres.dprime != 3:
        raise ValueError("curve invariants need d' = 3")
    _require_prime(p)
    f = pfaffian(pres) if f is None else f
    fp = f.reduce_mod(p)
    if fp.is_zero():
        raise BadPrimeError(f"Pfaffian vanishes identically mod {p}")
    reasons = []
    if not is_squarefree(fp):
        reasons.append("Pfaffian is not square-free mod p")
    pts = curve_points(fp, p)
    smooth = 0
    nodes = []
    for pt in pts:
        kind, rational = classify_singular(fp, pt, p)
        if kind == "smooth":
            smooth += 1
            continue
        j = rank_deficit(pres, pt, p)
        if kind == "worse":
            nodes.append(NodeInfo(pt, j, False, 1, "worse"))
            reasons.append(f"singular point {pt.coords} is not an ordinary double point")
            continue
        branches = 2 if rational else 0
        nodes.append(NodeInfo(pt, j, rational, branches))
        if not rational:
            reasons.append(f"node {pt.coords} has tangents not defined over F_p")
        if j > 2:
            reasons.append(f"node {pt.coords} has rank deficit {j} > 2")
    if nodes and p == 2:
        reasons.append("characteristic 2 with a singular point")
    lines = lines_on_curve(fp, p)
    if lines:
        reasons.append(f"curve contains {len(lines)} line(s) over F_p")
    return PrimeInvariants(
        p=p,
        smooth_point_count=smooth,
        nodes=nodes,
        c_total=smooth + sum(n.branch_count for n in nodes),
        n1=sum(1 for n in nodes if n.rank_deficit == 1),
        n2=sum(1 for n in nodes if n.rank_deficit == 2),
        bad=bool(reasons),
        bad_reasons=reasons,
        plane_point_count=len(pts),
    )


def min_rank_mod_p(pres: GroupPresentation, p: int) -> int:
    """min over w in P^{d'-1}(F_p) of rank M(w) mod p."""
    best = pres.d
    f = pfaffian(pres).reduce_mod(p)
    # rank < d exactly on the zeros of Pf, so only those need checking
    if f.is_zero():
        candidates = projective_points(pres.dprime, p)
    else:
        candidates = (pt.coords for pt in curve_points(f, p))
    for w in candidates:
        best = min(best, rank_mod_p(pres.evaluate(w), p))
        if best == 0:
            break
    return best


def is_regular_at(pres: GroupPresentation, p: int) -> bool:
    """True iff rank M(alpha) >= 2(r - 1) at every alpha in P^{d'-1}(F_p)."""
    return min_rank_mod_p(pres, p) >= 2 * (pres.r - 1)


def good_primes(pres: GroupPresentation, primes: Sequence[int]) -> list[int]:
    out = []
    for p in primes:
        _require_prime(p)
        try:
            if not invariants(pres, p).bad:
                out.append(p)
        except BadPrimeError:
            pass
    return out
