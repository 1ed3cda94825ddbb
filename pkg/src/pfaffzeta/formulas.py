"""Closed forms for local normal zeta functions of T2-groups with nodal Pfaffian curves.

Everything is a :class:`~pfaffzeta.ratfun.RatFun` in X (for p) and Y (for
t = p^{-s}), built from exponent arithmetic in r = d/2.

Two corrections are built in. The displayed A^(4) carries a wrong term, so
:func:`A_correction` returns the corrected form by default (``printed=True``
gives the displayed one). And the node coefficients that
:func:`assemble_zeta` uses are the combinations ``(A - 2 A^(2) + A^(1)) * CF``
for the two rank deficits, because the displayed W_3, W_4 are attached to
the wrong node type and W_4 has the wrong sign. As functions, W_3 equals the
deficit-2 (n2) coefficient and -W_4 the deficit-1 (n1) coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb

from .polynomial import MultiPoly
from .ratfun import RatFun, ZetaSeries, expand_series, geom, mono


def _one_minus(a: int, b: int) -> RatFun:
    return 1 - mono(a, b)


def _one_plus(a: int, b: int) -> RatFun:
    return 1 + mono(a, b)


def _over(num: RatFun, *dens: tuple[int, int]) -> RatFun:
    out = num
    for a, b in dens:
        out = out * geom(a, b)
    return out


@dataclass(frozen=True)
class NumericalData:
    """a_i = d + d' - i and b_i = (d + i)(d' - i) for i = 1..d'-1."""

    d: int
    dprime: int
    a: tuple = field(init=False)
    b: tuple = field(init=False)

    def __post_init__(self):
        idx = range(1, self.dprime)
        object.__setattr__(self, "a", tuple(self.d + self.dprime - i for i in idx))
        object.__setattr__(self, "b", tuple((self.d + i) * (self.dprime - i) for i in idx))

    def X(self, i: int) -> tuple[int, int]:
        """Exponent pair (on X, Y) that X_i is mapped to."""
        return (self.b[i - 1], self.a[i - 1])


def _check_r(r: int) -> None:
    if r < 2:
        raise ValueError(f"r = {r} < 2")


@lru_cache(maxsize=None)
def W(k: int, r: int) -> RatFun:
    """The displayed W_k(X, Y) for d = 2r."""
    _check_r(r)
    Y2 = (1 - mono(0, 1)) * (1 + mono(0, 1))
    if k == 1:
        num = 1 + mono(2 * r, 2 * r + 1) + mono(2 * r + 1, 2 * r + 1) + mono(4 * r, 2 * r + 2)
        num = num + mono(4 * r + 1, 2 * r + 2) + mono(6 * r + 1, 4 * r + 3)
        return _over(num, (4 * r + 2, 2 * r + 2), (2 * r + 2, 2 * r + 1))
    if k == 2:
        num = Y2 * mono(2 * r, 2 * r - 1) * _one_plus(4 * r + 1, 2 * r + 2)
        return _over(num, (2 * r + 1, 2 * r - 1), (2 * r + 2, 2 * r + 1), (4 * r + 2, 2 * r + 2))
    if k == 3:
        num = Y2 * Y2 * mono(2 * r, 2 * r - 3) * _one_plus(2 * r + 1, 2 * r - 1) * _one_plus(4 * r + 1, 2 * r + 2)
        return _over(
            num, (2 * r + 2, 2 * r + 1), (2 * r, 2 * r - 3), (2 * r + 1, 2 * r - 1), (4 * r + 2, 2 * r + 2)
        )
    if k == 4:
        num = Y2 * mono(2 * r, 2 * r - 1) * _one_minus(2 * r + 2, 2 * r - 1) * _one_plus(4 * r + 1, 2 * r + 2)
        return _over(
            num, (2 * r + 1, 2 * r - 1), (2 * r + 1, 2 * r - 1), (2 * r + 2, 2 * r + 1), (4 * r + 2, 2 * r + 2)
        )
    raise ValueError(f"no W_{k}")


@lru_cache(maxsize=None)
def A_correction(k: int, r: int, printed: bool = False) -> RatFun:
    """The correction terms A^(1)..A^(4) for d' = 3.

    A^(1), A^(2): non-singular and smooth rational points; A^(3), A^(4): nodes
    of rank deficit 1 and 2. ``printed=True`` returns the A^(4) display with
    its misprinted middle term (-2 X^{2r-1} Y^{2r+1} instead of -2 X^{2r+1} Y^{2r+1}).
    """
    _check_r(r)
    if k == 1:
        nd = NumericalData(2 * r, 3)
        x2 = nd.X(2)
        return mono(-2, 0) * mono(*x2) * geom(*x2)
    if k == 2:
        num = mono(2 * r, 2 * r - 1) * _one_minus(2 * r + 1, 2 * r + 1)
        return _over(num, (2 * r + 1, 2 * r - 1), (2 * r + 2, 2 * r + 1))
    if k == 3:
        inner = (
            1
            - mono(2 * r + 1, 2 * r - 1, coeff=2)
            + mono(2 * r + 2, 2 * r - 1)
            - mono(2 * r + 2, 2 * r + 1)
            + mono(4 * r + 2, 4 * r)
        )
        return _over(mono(2 * r, 2 * r - 1) * inner, (2 * r + 1, 2 * r - 1), (2 * r + 1, 2 * r - 1), (2 * r + 2, 2 * r + 1))
    if k == 4:
        middle = (2 * r - 1, 2 * r + 1) if printed else (2 * r + 1, 2 * r + 1)
        inner = (
            1
            + mono(2 * r + 1, 2 * r - 1)
            - mono(2 * r, 2 * r - 1, coeff=2)
            - mono(*middle, coeff=2)
            + mono(4 * r + 1, 4 * r)
            + mono(2 * r, 2 * r + 1)
        )
        return _over(mono(2 * r, 2 * r - 3) * inner, (2 * r, 2 * r - 3), (2 * r + 1, 2 * r - 1), (2 * r + 2, 2 * r + 1))
    raise ValueError(f"no A^({k})")


def correction_factor(r: int) -> RatFun:
    """1 + (X^{-1} + 1) X_1 / (1 - X_1) with X_1 = X^{4r+2} Y^{2r+2}."""
    _check_r(r)
    x1 = (4 * r + 2, 2 * r + 2)
    return 1 + (mono(-1, 0) + 1) * mono(*x1) * geom(*x1)


# flag varieties and the Igusa-type sum


def _qpoly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def _qbinomial(n: int, k: int) -> tuple:
    """Gaussian binomial coefficient as a coefficient tuple in q (q-Pascal rule)."""
    if k < 0 or k > n:
        return (0,)
    if k == 0 or k == n:
        return (1,)
    left = list(_qbinomial(n - 1, k - 1))
    right = [0] * k + list(_qbinomial(n - 1, k))
    size = max(len(left), len(right))
    left += [0] * (size - len(left))
    right += [0] * (size - len(right))
    return tuple(x + y for x, y in zip(left, right))


def flag_coeffs(I, dprime: int) -> list:
    """Coefficients in q of the number of F_q-flags of type I in F_q^{d'}."""
    I = sorted(set(I))
    if any(i < 1 or i >= dprime for i in I):
        raise ValueError(f"type {I} not contained in 1..{dprime - 1}")
    out = [1]
    prev = 0
    for i in I + [dprime]:
        out = _qpoly_mul(out, list(_qbinomial(dprime - prev, i - prev)))
        prev = i
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def flag_poly(I, dprime: int) -> MultiPoly:
    """b_I(q) as a univariate MultiPoly in q."""
    return MultiPoly({(k,): c for k, c in enumerate(flag_coeffs(I, dprime))}, 1)


def _flag_at_inverse_X(I, dprime: int) -> RatFun:
    return RatFun(MultiPoly({(-k, 0): c for k, c in enumerate(flag_coeffs(I, dprime))}, 2))


@lru_cache(maxsize=None)
def igusa_sum(d: int, dprime: int) -> RatFun:
    """Sum over I of b_I(X^{-1}) prod_{i in I} X_i/(1 - X_i), X_i -> X^{b_i} Y^{a_i}."""
    if d % 2 or dprime < 2:
        raise ValueError("need even d and d' >= 2")
    nd = NumericalData(d, dprime)
    total = RatFun.const(0)
    for size in range(dprime):
        for I in combinations(range(1, dprime), size):
            term = _flag_at_inverse_X(I, dprime)
            for i in I:
                xi = nd.X(i)
                term = term * mono(*xi) * geom(*xi)
            total = total + term
    return total


# assembly


def prefactor(r: int) -> RatFun:
    """zeta_{Z_p^d}(s) zeta_p((d+3)s - 3d) in X, Y, d = 2r."""
    out = geom(6 * r, 2 * r + 3)
    for i in range(2 * r):
        out = out * geom(i, 1)
    return out


def node_coefficient(deficit: int, r: int) -> RatFun:
    """(A - 2 A^(2) + A^(1)) * CF for nodes of the given rank deficit."""
    if deficit not in (1, 2):
        raise ValueError("rank deficit must be 1 or 2")
    A = A_correction(3 if deficit == 1 else 4, r)
    return (A - 2 * A_correction(2, r) + A_correction(1, r)) * correction_factor(r)


@dataclass(frozen=True, eq=False)
class SymbolicZeta:
    """prefactor * (base + c coeff_c + n1 coeff_n1 + n2 coeff_n2)."""

    r: int
    base: RatFun
    coeff_c: RatFun
    coeff_n1: RatFun
    coeff_n2: RatFun
    prefactor: RatFun

    def parts(self) -> tuple[RatFun, RatFun, RatFun, RatFun]:
        return (self.base, self.coeff_c, self.coeff_n1, self.coeff_n2)

    def evaluate(self, c, n1=0, n2=0) -> RatFun:
        """The zeta function for given invariants as one BiRat."""
        inner = self.base + c * self.coeff_c + n1 * self.coeff_n1 + n2 * self.coeff_n2
        return self.prefactor * inner

    def part_series(self, p: int, K: int) -> tuple[ZetaSeries, ...]:
        return _part_series(self, p, K)

    def series(self, p: int, K: int, c, n1=0, n2=0) -> ZetaSeries:
        s0, s1, s2, s3 = self.part_series(p, K)
        coeffs = [a + c * b + n1 * x + n2 * y for a, b, x, y in zip(s0, s1, s2, s3)]
        return ZetaSeries(p, coeffs, K)


@lru_cache(maxsize=None)
def _part_series(z: SymbolicZeta, p: int, K: int):
    return tuple(expand_series(z.prefactor * part, p, K).coeffs for part in z.parts())


@lru_cache(maxsize=None)
def assemble_zeta(r: int) -> SymbolicZeta:
    _check_r(r)
    return SymbolicZeta(
        r=r,
        base=W(1, r),
        coeff_c=W(2, r),
        coeff_n1=node_coefficient(1, r),
        coeff_n2=node_coefficient(2, r),
        prefactor=prefactor(r),
    )


# the d = 6 elliptic-curve display, kept verbatim for comparison


def elliptic_display(k: int) -> RatFun:
    """The displayed W_1, W_2 of the elliptic-curve case, including their printed denominators."""
    if k == 1:
        num = 1 + mono(6, 7) + mono(7, 7) + mono(12, 8) + mono(13, 8) + mono(19, 15)
        dens = [(8, 7), (14, 8)]
    elif k == 2:
        num = (1 - mono(0, 1)) * (1 + mono(0, 1)) * mono(6, 5) * (1 + mono(13, 8))
        dens = [(8, 7), (7, 5), (14, 8)]
    else:
        raise ValueError("only W_1, W_2 are displayed")
    return _over(num, *dens) * elliptic_display_prefactor()


def elliptic_display_prefactor() -> RatFun:
    """The printed common factor prod_{i=0}^{6}(1 - X^i Y)^{-1} (1 - X^9 Y^18)^{-1}."""
    out = geom(9, 18)
    for i in range(7):
        out = out * geom(i, 1)
    return out


# functional equations


@dataclass
class IdentityCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class FunctionalEquationReport:
    r: int
    checks: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def add(self, name: str, lhs: RatFun, rhs: RatFun) -> None:
        ok = lhs == rhs
        detail = "" if ok else f"lhs = {lhs.format()}\nrhs = {rhs.format()}"
        self.checks.append(IdentityCheck(name, ok, detail))

    def summary(self) -> str:
        lines = [f"{'PASS' if c.passed else 'FAIL'}: {c.name}" for c in self.checks]
        return "\n".join(lines)


def zeta_exponents(r: int) -> tuple[int, int]:
    """(binom(2r+3, 2), 4r+3): the exponents on X and Y in the zeta functional equation."""
    return comb(2 * r + 3, 2), 4 * r + 3


def igusa_exponent(dprime: int) -> tuple[int, int]:
    """(sign, e) with A(1/X, 1/Y) = sign * X^e * A for the Igusa-type sum."""
    return (-1) ** (dprime - 1), comb(dprime, 2)


def check_functional_equation(r: int) -> FunctionalEquationReport:
    """Verify the per-W, Igusa and whole-zeta symmetries under X, Y -> 1/X, 1/Y."""
    _check_r(r)
    rep = FunctionalEquationReport(r)
    for k, e in ((1, 3), (2, 4), (3, 3), (4, 3)):
        rep.add(f"W_{k}(1/X,1/Y) = X^{e} W_{k}", W(k, r).invert_vars(), mono(e, 0) * W(k, r))

    sign, e = igusa_exponent(3)
    A = igusa_sum(2 * r, 3)
    rep.add(f"A(1/X,1/Y) = {'+' if sign > 0 else '-'}X^{e} A for the Igusa sum", A.invert_vars(), sign * mono(e, 0) * A)

    z = assemble_zeta(r)
    ex, ey = zeta_exponents(r)
    # c, n1, n2 are independent formal symbols, so the identity splits into one per part;
    # c also transforms as c -> c/X
    twists = {"1": 0, "c": -1, "n1": 0, "n2": 0}
    for (label, tw), part in zip(twists.items(), z.parts()):
        lhs = (z.prefactor * part).invert_vars() * mono(tw, 0)
        rhs = -mono(ex, ey) * z.prefactor * part
        rep.add(f"zeta(1/X,1/Y) = -X^{ex} Y^{ey} zeta, {label}-part", lhs, rhs)
    return rep
