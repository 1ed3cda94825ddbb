"""Cone decompositions behind the node corrections A^(3) and A^(4).

Near a node the relevant lattice data is a triple (a, b, c) in

    N = {(a, b, c) in Z^3 : b, c >= 1, a >= b, a >= c}.

Each point carries a fiber count |phi^{-1}(a, b, c)| and a weight psi(a, b, c),
and A is the sum of their products over N. Splitting N into cones on which
both are monomial turns the sum into a short combination of cone generating
functions, substituted at Laurent monomials. Here the cones, their generating
functions and the substitution data are written down explicitly, and
:func:`enumerate_A` recomputes the plain sum with no decomposition as a check.

Monomials are exponent pairs under p^{x - s y} -> X^x Y^y.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ratfun import LaurentMonomial, RatFun, ZetaSeries, mono, substitute3
from .polynomial import MultiPoly


class ConeError(ValueError):
    pass


@dataclass(frozen=True)
class Constraint:
    """L(a, b, c) = 0 (kind "eq") or L(a, b, c) > 0 (kind "gt")."""

    coeffs: tuple[int, int, int]
    kind: str

    def holds(self, a: int, b: int, c: int) -> bool:
        v = self.coeffs[0] * a + self.coeffs[1] * b + self.coeffs[2] * c
        return v == 0 if self.kind == "eq" else v > 0


def eq(ca: int, cb: int, cc: int) -> Constraint:
    return Constraint((ca, cb, cc), "eq")


def gt(ca: int, cb: int, cc: int) -> Constraint:
    return Constraint((ca, cb, cc), "gt")


def in_N(a: int, b: int, c: int) -> bool:
    return b >= 1 and c >= 1 and a >= b and a >= c


@dataclass(frozen=True, eq=False)
class Cone:
    label: str
    constraints: tuple[Constraint, ...]
    closed_form: RatFun
    n: int

    def contains(self, a: int, b: int, c: int) -> bool:
        return in_N(a, b, c) and all(k.holds(a, b, c) for k in self.constraints)

    def points(self, bound: int):
        for a in range(1, bound + 1):
            for b in range(1, a + 1):
                for c in range(1, a + 1):
                    if self.contains(a, b, c):
                        yield a, b, c


@dataclass(frozen=True)
class ConeWeights:
    mX: LaurentMonomial
    mY: LaurentMonomial
    mZ: LaurentMonomial

    def at(self, a: int, b: int, c: int) -> LaurentMonomial:
        return self.mX ** a * self.mY ** b * self.mZ ** c


def _tmono(a: int, b: int, c: int) -> RatFun:
    return RatFun.monomial((a, b, c))


def _tgeom(a: int, b: int, c: int) -> RatFun:
    return RatFun.geometric((a, b, c))


# closed forms shared by both decompositions

F_DIAG = _tmono(1, 1, 1) * _tgeom(1, 1, 1)  # a = b = c
F_AC = _tmono(2, 1, 2) * _tgeom(1, 1, 1) * _tgeom(1, 0, 1)  # a = c > b
F_AB = _tmono(2, 2, 1) * _tgeom(1, 1, 1) * _tgeom(1, 1, 0)  # a = b > c
F_INTERIOR = (
    _tmono(2, 1, 1) * (1 - _tmono(2, 1, 1)) * _tgeom(1, 1, 1) * _tgeom(1, 1, 0) * _tgeom(1, 0, 1) * _tgeom(1, 0, 0)
)  # a > b, a > c
F_SUM = _tmono(2, 1, 1) * _tgeom(1, 1, 0) * _tgeom(1, 0, 1)  # a = b + c
F_ABOVE = _tmono(3, 1, 1) * _tgeom(1, 1, 0) * _tgeom(1, 0, 1) * _tgeom(1, 0, 0)  # a > b + c
F_BELOW = _tmono(3, 2, 2) * _tgeom(1, 1, 0) * _tgeom(1, 0, 1) * _tgeom(1, 1, 1)  # a < b + c, a > b, a > c


def _cones4() -> list[Cone]:
    return [
        Cone("N0: a=b=c", (eq(1, -1, 0), eq(1, 0, -1)), F_DIAG, 1),
        Cone("N1: a=c>b", (eq(1, 0, -1), gt(1, -1, 0)), F_AC, 2),
        Cone("N2: a=b>c", (eq(1, -1, 0), gt(1, 0, -1)), F_AB, 2),
        Cone("N3: a>b, a>c", (gt(1, -1, 0), gt(1, 0, -1)), F_INTERIOR, 3),
    ]


def _cones2() -> list[Cone]:
    inner = (gt(1, -1, 0), gt(1, 0, -1))
    return [
        Cone("N0: a=b=c", (eq(1, -1, 0), eq(1, 0, -1)), F_DIAG, 1),
        Cone("N1: a=c>b", (eq(1, 0, -1), gt(1, -1, 0)), F_AC, 2),
        Cone("N2: a=b>c", (eq(1, -1, 0), gt(1, 0, -1)), F_AB, 2),
        Cone("N3: a=b+c", inner + (eq(1, -1, -1),), F_SUM, 3),
        Cone("N4: a>b+c", inner + (gt(1, -1, -1),), F_ABOVE, 3),
        Cone("N5: a<b+c, a>b, a>c", inner + (gt(-1, 1, 1),), F_BELOW, 3),
    ]


def _lm(x: int, y: int) -> LaurentMonomial:
    return LaurentMonomial(x, y)


def _weights4(r: int) -> list[ConeWeights]:
    return [
        ConeWeights(_lm(2 * r, 2 * r + 1), _lm(0, -2), _lm(0, -2)),
        ConeWeights(_lm(2 * r + 1, 2 * r + 1), _lm(-1, -2), _lm(0, -2)),
        ConeWeights(_lm(2 * r + 1, 2 * r + 1), _lm(0, -2), _lm(-1, -2)),
        ConeWeights(_lm(2 * r + 2, 2 * r + 1), _lm(-1, -2), _lm(-1, -2)),
    ]


def _weights2(r: int) -> list[ConeWeights]:
    return [
        ConeWeights(_lm(2 * r, 2 * r - 1), _lm(0, 0), _lm(0, 0)),
        ConeWeights(_lm(2 * r + 1, 2 * r - 1), _lm(-1, 0), _lm(0, 0)),
        ConeWeights(_lm(2 * r + 1, 2 * r - 1), _lm(0, 0), _lm(-1, 0)),
        ConeWeights(_lm(2 * r + 2, 2 * r - 1), _lm(-1, 0), _lm(-1, 0)),
        ConeWeights(_lm(2 * r + 2, 2 * r + 1), _lm(-1, -2), _lm(-1, -2)),
        ConeWeights(_lm(2 * r + 2, 2 * r - 1), _lm(-1, 0), _lm(-1, 0)),
    ]


def cone_table(deficit: int, r: int = 3) -> list[tuple[Cone, ConeWeights]]:
    """Rows (cone, substitution monomials) for deficit 4 (A^(4)) or deficit 2 (A^(3))."""
    if deficit == 4:
        return list(zip(_cones4(), _weights4(r)))
    if deficit == 2:
        return list(zip(_cones2(), _weights2(r)))
    raise ConeError(f"deficit must be 2 or 4, got {deficit}")


# fiber counts and weights


def fiber_data(a: int, b: int, c: int) -> tuple[int, int]:
    """(k, e) with |phi^{-1}(a, b, c)| = (1 - 1/p)^k p^e."""
    if not in_N(a, b, c):
        raise ConeError(f"({a}, {b}, {c}) is not in N")
    if a == b == c:
        return 0, 0
    if a == c:
        return 1, a - b
    if a == b:
        return 1, a - c
    return 2, 2 * a - b - c


def fiber_count(a: int, b: int, c: int, p=None):
    """The fiber size as a Fraction at a prime p, or as a RatFun in X if p is None."""
    k, e = fiber_data(a, b, c)
    if p is None:
        return (1 - mono(-1, 0)) ** k * mono(e, 0)
    return (1 - Fraction(1, p)) ** k * Fraction(p) ** e


def psi_deficit4(a: int, b: int, c: int, r: int) -> LaurentMonomial:
    if not in_N(a, b, c):
        raise ConeError(f"({a}, {b}, {c}) is not in N")
    return LaurentMonomial(2 * r * a, (2 * r + 1) * a - 2 * min(a, b) - 2 * min(a, c))


def psi_deficit2(a: int, b: int, c: int, r: int) -> LaurentMonomial:
    if not in_N(a, b, c):
        raise ConeError(f"({a}, {b}, {c}) is not in N")
    return LaurentMonomial(2 * r * a, (2 * r + 1) * a - 2 * min(a, b + c))


def psi(deficit: int, a: int, b: int, c: int, r: int) -> LaurentMonomial:
    if deficit == 4:
        return psi_deficit4(a, b, c, r)
    if deficit == 2:
        return psi_deficit2(a, b, c, r)
    raise ConeError(f"deficit must be 2 or 4, got {deficit}")


def laurent_holds(deficit: int, r: int, a: int, b: int, c: int) -> bool:
    """Whether fiber * psi / (1 - 1/p)^{n-1} equals the row monomial at (a, b, c), symbolically in p."""
    for cone, w in cone_table(deficit, r):
        if cone.contains(a, b, c):
            k, e = fiber_data(a, b, c)
            weight = psi(deficit, a, b, c, r)
            return k == cone.n - 1 and w.at(a, b, c) == LaurentMonomial(weight.x + e, weight.y)
    raise ConeError(f"({a}, {b}, {c}) lies in no cone")


def assemble_A(deficit: int, r: int) -> RatFun:
    """Sum over rows of (1 - X^{-1})^{n-1} F(mX, mY, mZ)."""
    total = RatFun.const(0)
    unit = 1 - mono(-1, 0)
    for cone, w in cone_table(deficit, r):
        total = total + unit ** (cone.n - 1) * substitute3(cone.closed_form, w.mX, w.mY, w.mZ)
    return total


def _min_y_per_a(deficit: int, r: int) -> int:
    # smallest Y-exponent of psi on the slice with given a, divided by a
    return 2 * r - 3 if deficit == 4 else 2 * r - 1


def enumerate_A(deficit: int, r: int, p: int, K: int) -> ZetaSeries:
    """The series of sum_{N} |phi^{-1}| psi at X = p up to Y^K, by direct summation."""
    slope = _min_y_per_a(deficit, r)
    out = [Fraction(0)] * (K + 1)
    q = 1 - Fraction(1, p)
    a = 1
    while slope * a <= K:
        for b in range(1, a + 1):
            for c in range(1, a + 1):
                w = psi(deficit, a, b, c, r)
                if w.y > K:
                    continue
                k, e = fiber_data(a, b, c)
                out[w.y] += q ** k * Fraction(p) ** (e + w.x)
        a += 1
    return ZetaSeries(p, out, K)


def brute_cone_series(cone: Cone, B: int) -> MultiPoly:
    """Sum of X^a Y^b Z^c over cone points with a + b + c <= B."""
    terms = {(a, b, c): 1 for a, b, c in cone.points(B) if a + b + c <= B}
    return MultiPoly(terms, 3)


def partition_violations(deficit: int, bound: int) -> list[tuple[int, int, int, int]]:
    """Points of N with coordinates <= bound lying in other than exactly one cone."""
    cones = [c for c, _ in cone_table(deficit)]
    bad = []
    for a in range(1, bound + 1):
        for b in range(1, a + 1):
            for c in range(1, a + 1):
                hits = sum(cone.contains(a, b, c) for cone in cones)
                if hits != 1:
                    bad.append((a, b, c, hits))
    return bad
