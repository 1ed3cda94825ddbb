"""Exact rational functions in a few variables, kept with a factored denominator.

A :class:`RatFun` is ``num / prod(f ** m)`` where ``num`` is a Laurent
polynomial and each denominator factor ``f`` is a primitive integer polynomial
with no monomial content and a fixed sign convention. Addition uses the
least common multiple of the factor multisets, so sums of the usual
``X^a Y^b / (1 - X^c Y^e)`` pieces stay small without any polynomial gcd.
Equality is decided by cross-multiplication.

BiRat (variables X, Y) and TriRat (X, Y, Z) are the two instances used
throughout; X stands for p and Y for t = p^{-s}.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .polynomial import MultiPoly

BI_NAMES = ("X", "Y")
TRI_NAMES = ("X", "Y", "Z")


class RatFunError(ValueError):
    pass


def _normalize_factor(f: MultiPoly) -> tuple[MultiPoly, Fraction, tuple]:
    """Split f = unit * X^shift * g with g primitive, monomial-free and sign-normalised."""
    if f.is_zero():
        raise RatFunError("zero denominator factor")
    shift = f.min_exponents()
    g = f.shift(tuple(-s for s in shift))
    c = g.content()
    # sign: the term with lexicographically smallest exponent is positive
    first = min(g.terms)
    if g.terms[first] < 0:
        c = -c
    g = MultiPoly({e: Fraction(v) / c for e, v in g.terms.items()}, g.nvars)
    return g, c, shift


class RatFun:
    """num / prod(factor ** mult); immutable."""

    __slots__ = ("num", "factors", "nvars", "names")

    def __init__(self, num: MultiPoly, factors: Iterable[tuple[MultiPoly, int]] = (), names=None):
        nvars = num.nvars
        names = tuple(names) if names is not None else _default_names(nvars)
        unit = Fraction(1)
        shift = [0] * nvars
        den: Counter = Counter()
        for f, m in factors:
            if m == 0:
                continue
            if m < 0:
                raise RatFunError("negative multiplicity")
            if f.nvars != nvars:
                raise RatFunError("variable count mismatch")
            g, c, s = _normalize_factor(f)
            unit *= c ** m
            for i in range(nvars):
                shift[i] += s[i] * m
            if g.degree() > 0:
                den[g] += m
            else:
                unit *= Fraction(g.coefficient((0,) * nvars)) ** m
        num = num.shift(tuple(-s for s in shift))
        if unit != 1:
            num = num * (1 / unit)
        self.num = num
        self.factors = tuple(sorted(den.items(), key=lambda fm: _factor_key(fm[0])))
        self.nvars = nvars
        self.names = names

    # constructors

    @classmethod
    def const(cls, c, nvars: int = 2, names=None) -> "RatFun":
        return cls(MultiPoly.const(Fraction(c), nvars), (), names)

    @classmethod
    def from_poly(cls, f: MultiPoly, names=None) -> "RatFun":
        return cls(f, (), names)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1, names=None) -> "RatFun":
        return cls(MultiPoly.monomial(tuple(exps), coeff), (), names)

    @classmethod
    def geometric(cls, exps: Sequence[int], names=None) -> "RatFun":
        """1 / (1 - m) for the monomial m with exponent vector ``exps``."""
        n = len(exps)
        return cls(MultiPoly.const(1, n), [(one_minus(exps), 1)], names)

    # structure

    def _den_counter(self) -> Counter:
        return Counter(dict(self.factors))

    def den_poly(self) -> MultiPoly:
        out = MultiPoly.const(1, self.nvars)
        for f, m in self.factors:
            out = out * f ** m
        return out

    @property
    def num_poly(self) -> MultiPoly:
        """Numerator after clearing negative exponents (pairs with :attr:`den`)."""
        lo = self.num.min_exponents()
        return self.num.shift(tuple(-min(0, e) for e in lo))

    @property
    def den(self) -> MultiPoly:
        lo = self.num.min_exponents()
        return self.den_poly().shift(tuple(-min(0, e) for e in lo))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _check(self, other: "RatFun") -> None:
        if self.nvars != other.nvars:
            raise RatFunError("variable count mismatch")

    def _coerce(self, other) -> "RatFun":
        if isinstance(other, RatFun):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return RatFun.const(other, self.nvars, self.names)
        if isinstance(other, MultiPoly):
            return RatFun(other, (), self.names)
        raise TypeError(f"cannot combine RatFun with {type(other).__name__}")

    # arithmetic

    def _lift_to(self, target: Counter) -> MultiPoly:
        """Numerator over the common denominator ``target`` (which contains ours)."""
        num = self.num
        mine = self._den_counter()
        for f, m in target.items():
            extra = m - mine.get(f, 0)
            if extra:
                num = num * f ** extra
        return num

    def __add__(self, other) -> "RatFun":
        other = self._coerce(other)
        target = self._den_counter() | other._den_counter()
        num = self._lift_to(target) + other._lift_to(target)
        return RatFun(num, target.items(), self.names)

    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        return RatFun(-self.num, self.factors, self.names)

    def __sub__(self, other) -> "RatFun":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RatFun":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RatFun":
        other = self._coerce(other)
        den = self._den_counter() + other._den_counter()
        return RatFun(self.num * other.num, den.items(), self.names)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.is_zero():
            raise ZeroDivisionError("RatFun division by zero")
        num = self.den_poly()
        # a monomial numerator moves across as a shift, not as a factor
        if self.num.is_monomial():
            (e, c), = self.num.terms.items()
            return RatFun(num.shift(tuple(-x for x in e)) * (1 / Fraction(c)), (), self.names)
        lo = self.num.min_exponents()
        factor = self.num.shift(tuple(-x for x in lo))
        return RatFun(num.shift(tuple(-x for x in lo)), [(factor, 1)], self.names)

    def __truediv__(self, other) -> "RatFun":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "RatFun":
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "RatFun":
        if n < 0:
            return self.inverse() ** (-n)
        den = Counter({f: m * n for f, m in self.factors})
        return RatFun(self.num ** n, den.items(), self.names)

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except (TypeError, RatFunError):
            return NotImplemented
        target = self._den_counter() | other._den_counter()
        return self._lift_to(target) == other._lift_to(target)

    __hash__ = None

    # substitution

    def substitute_monomials(self, images: Sequence[Sequence[int]], names=None) -> "RatFun":
        """Replace variable i by the Laurent monomial with exponent vector images[i]."""
        nv = len(images[0])
        num = self.num.substitute_monomials(images, nv)
        factors = []
        for f, m in self.factors:
            g = f.substitute_monomials(images, nv)
            if g.is_zero():
                raise RatFunError("denominator vanishes identically after substitution")
            factors.append((g, m))
        return RatFun(num, factors, names)

    def invert_vars(self) -> "RatFun":
        """F(1/X, 1/Y, ...), with Laurent monomials cleared from the factors."""
        n = self.nvars
        images = [tuple(-int(i == j) for j in range(n)) for i in range(n)]
        return self.substitute_monomials(images, self.names)

    def evaluate(self, values: Sequence) -> Fraction:
        den = Fraction(1)
        for f, m in self.factors:
            den *= Fraction(f.evaluate(values)) ** m
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at this point")
        return Fraction(self.num.evaluate(values)) / den

    def specialize(self, index: int, value) -> "RatFun":
        """Set variable ``index`` to a rational number; the result keeps nvars - 1 variables."""
        keep = [i for i in range(self.nvars) if i != index]
        names = tuple(self.names[i] for i in keep)
        value = Fraction(value)

        def spec(f: MultiPoly) -> MultiPoly:
            out: dict = {}
            for e, c in f.terms.items():
                k = e[index]
                v = value ** k if k >= 0 else 1 / value ** (-k)
                key = tuple(e[i] for i in keep)
                out[key] = out.get(key, 0) + c * v
            return MultiPoly(out, len(keep))

        factors = []
        for f, m in self.factors:
            g = spec(f)
            if g.is_zero():
                raise ZeroDivisionError("denominator vanishes after specialisation")
            factors.append((g, m))
        return RatFun(spec(self.num), factors, names)

    # printing

    def format(self) -> str:
        num = self.num.format(self.names, ascending=True)
        if not self.factors:
            return f"({num})"
        den = "*".join(
            f"({f.format(self.names, ascending=True)})" + (f"^{m}" if m > 1 else "") for f, m in self.factors
        )
        return f"({num})/({den})"

    def latex(self) -> str:
        num = self.num.latex(self.names, ascending=True)
        if not self.factors:
            return num
        den = "".join(
            f"({f.latex(self.names, ascending=True)})" + (f"^{{{m}}}" if m > 1 else "") for f, m in self.factors
        )
        return f"\\frac{{{num}}}{{{den}}}"

    def __repr__(self) -> str:
        return f"RatFun({self.format()})"

    def to_json(self) -> dict:
        return {
            "names": list(self.names),
            "num": self.num.to_json(),
            "den": [{"factor": f.to_json(), "mult": m} for f, m in self.factors],
        }


def _default_names(n: int) -> tuple:
    if n == 2:
        return BI_NAMES
    if n == 3:
        return TRI_NAMES
    return tuple(f"x{i + 1}" for i in range(n))


def _factor_key(f: MultiPoly):
    return (f.degree(), len(f), tuple(f.sorted_terms()).__repr__())


def one_minus(exps: Sequence[int], coeff=1) -> MultiPoly:
    """The polynomial 1 - coeff * x^exps."""
    n = len(exps)
    return MultiPoly.const(1, n) - MultiPoly.monomial(tuple(exps), coeff)


# BiRat / TriRat helpers


def BiRat(num: MultiPoly, factors: Iterable[tuple[MultiPoly, int]] = ()) -> RatFun:
    if num.nvars != 2:
        raise RatFunError("BiRat needs 2 variables")
    return RatFun(num, factors, BI_NAMES)


def TriRat(num: MultiPoly, factors: Iterable[tuple[MultiPoly, int]] = ()) -> RatFun:
    if num.nvars != 3:
        raise RatFunError("TriRat needs 3 variables")
    return RatFun(num, factors, TRI_NAMES)


def mono(*exps: int, coeff=1) -> RatFun:
    """The monomial coeff * X^exps[0] Y^exps[1] ... as a RatFun."""
    return RatFun.monomial(exps, coeff)


def geom(*exps: int) -> RatFun:
    """1 / (1 - X^exps[0] Y^exps[1] ...)."""
    return RatFun.geometric(exps)


@dataclass(frozen=True)
class LaurentMonomial:
    """X^x Y^y; the exponent pair of p^{x - s y}."""

    x: int
    y: int

    @property
    def exps(self) -> tuple[int, int]:
        return (self.x, self.y)

    def __mul__(self, other: "LaurentMonomial") -> "LaurentMonomial":
        return LaurentMonomial(self.x + other.x, self.y + other.y)

    def __pow__(self, n: int) -> "LaurentMonomial":
        return LaurentMonomial(self.x * n, self.y * n)

    def as_ratfun(self) -> RatFun:
        return mono(self.x, self.y)


def substitute3(F: RatFun, mX: LaurentMonomial, mY: LaurentMonomial, mZ: LaurentMonomial) -> RatFun:
    """F(mX, mY, mZ) for a TriRat F; the result is a BiRat in X, Y."""
    if F.nvars != 3:
        raise RatFunError("substitute3 needs a TriRat")
    return F.substitute_monomials([mX.exps, mY.exps, mZ.exps], BI_NAMES)


def invert_vars(F: RatFun) -> RatFun:
    return F.invert_vars()


# truncated series


@dataclass
class ZetaSeries:
    """Coefficients of t^0 .. t^order, exact rationals; p is the prime X was set to."""

    p: object
    coeffs: list
    order: int = field(default=-1)

    def __post_init__(self):
        self.coeffs = [_norm(c) for c in self.coeffs]
        if self.order < 0:
            self.order = len(self.coeffs) - 1
        if len(self.coeffs) != self.order + 1:
            raise RatFunError("coefficient list length does not match order")

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, ZetaSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, (list, tuple)):
            return self.coeffs == [_norm(c) for c in other]
        return NotImplemented

    def truncate(self, K: int) -> "ZetaSeries":
        return ZetaSeries(self.p, self.coeffs[: K + 1], min(K, self.order))

    def __add__(self, other: "ZetaSeries") -> "ZetaSeries":
        K = min(self.order, other.order)
        return ZetaSeries(self.p, [a + b for a, b in zip(self.coeffs[: K + 1], other.coeffs)], K)

    def __mul__(self, other) -> "ZetaSeries":
        if isinstance(other, (int, Fraction)):
            return ZetaSeries(self.p, [c * other for c in self.coeffs], self.order)
        K = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        return ZetaSeries(self.p, [sum(a[i] * b[n - i] for i in range(n + 1)) for n in range(K + 1)], K)

    __rmul__ = __mul__

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def is_nonnegative_integral(self) -> bool:
        return self.is_integral() and all(c >= 0 for c in self.coeffs)

    def to_json(self) -> dict:
        return {"p": self.p, "order": self.order, "coeffs": [str(c) for c in self.coeffs]}


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _univariate_at(f: MultiPoly, p, K: int) -> tuple[list, int]:
    """Coefficient list in Y (up to Y^K relative to the lowest power) of f(p, Y), and that power."""
    coeffs: dict = {}
    pf = Fraction(p)
    for (ex, ey), c in f.terms.items():
        v = pf ** ex if ex >= 0 else 1 / pf ** (-ex)
        coeffs[ey] = coeffs.get(ey, 0) + c * v
    coeffs = {k: v for k, v in coeffs.items() if v}
    if not coeffs:
        return [], 0
    lo = min(coeffs)
    return [coeffs.get(lo + i, 0) for i in range(K + 1)], lo


def _series_mul(a: list, b: list, K: int) -> list:
    out = [Fraction(0)] * (K + 1)
    for i, x in enumerate(a[: K + 1]):
        if not x:
            continue
        for j, y in enumerate(b[: K + 1 - i]):
            if y:
                out[i + j] += x * y
    return out


def _series_inverse(a: list, K: int) -> list:
    if not a or a[0] == 0:
        raise RatFunError("denominator has zero constant term in Y; not expandable at Y = 0")
    inv = [Fraction(0)] * (K + 1)
    inv[0] = 1 / Fraction(a[0])
    for n in range(1, K + 1):
        s = sum(a[j] * inv[n - j] for j in range(1, min(n, len(a) - 1) + 1))
        inv[n] = -s * inv[0]
    return inv


def expand_series(F: RatFun, p, K: int) -> ZetaSeries:
    """Coefficients of Y^0..Y^K of the expansion of F(p, Y) at Y = 0."""
    if F.nvars != 2:
        raise RatFunError("expand_series needs a BiRat")
    den = [Fraction(1)] + [Fraction(0)] * K
    for f, m in F.factors:
        coeffs, lo = _univariate_at(f, p, K)
        if lo != 0 or not coeffs:
            raise RatFunError("denominator has zero constant term in Y; not expandable at Y = 0")
        for _ in range(m):
            den = _series_mul(den, coeffs, K)
    inv = _series_inverse(den, K)
    num, lo = _univariate_at(F.num, p, K)
    if not num:
        return ZetaSeries(p, [0] * (K + 1), K)
    shifted = [Fraction(0)] * (K + 1)
    for i, c in enumerate(num):
        n = lo + i
        if n < 0:
            if c:
                raise RatFunError("numerator has negative powers of Y")
            continue
        if n <= K:
            shifted[n] = c
    return ZetaSeries(p, _series_mul(shifted, inv, K), K)


def _truncate(f: MultiPoly, B: int) -> MultiPoly:
    return MultiPoly({e: c for e, c in f.terms.items() if sum(e) <= B}, f.nvars)


def _truncated_mul(f: MultiPoly, g: MultiPoly, B: int) -> MultiPoly:
    out: dict = {}
    for e1, c1 in f.terms.items():
        d1 = sum(e1)
        for e2, c2 in g.terms.items():
            if d1 + sum(e2) <= B:
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
    return MultiPoly(out, f.nvars)


def series_total_degree(F: RatFun, B: int) -> MultiPoly:
    """Multivariate expansion of F at the origin, keeping terms of total degree <= B."""
    n = F.nvars
    if not F.num.is_polynomial():
        raise RatFunError("numerator has negative exponents")
    out = _truncate(F.num, B)
    for f, m in F.factors:
        c0 = f.coefficient((0,) * n)
        if not c0:
            raise RatFunError("denominator factor vanishes at the origin")
        # 1/f = (1/c0) sum_k (-(f - c0)/c0)^k; f - c0 has no constant term
        step = (f - c0) * Fraction(-1, 1) * (1 / Fraction(c0))
        inv = MultiPoly.const(1, n)
        power = MultiPoly.const(1, n)
        for _ in range(B):
            power = _truncated_mul(power, step, B)
            if power.is_zero():
                break
            inv = inv + power
        inv = inv * (1 / Fraction(c0))
        for _ in range(m):
            out = _truncated_mul(out, inv, B)
    return out


def series_of_product_geometric(p: int, exps_list: Sequence[tuple[int, int]], K: int) -> ZetaSeries:
    """Series of prod 1/(1 - X^a Y^b) at X = p without building the RatFun."""
    out = [Fraction(1)] + [Fraction(0)] * K
    for a, b in exps_list:
        if b <= 0:
            raise RatFunError("need positive Y exponent")
        q = Fraction(p) ** a
        for n in range(b, K + 1):
            out[n] += q * out[n - b]
    return ZetaSeries(p, out, K)


__all__ = [
    "RatFun",
    "RatFunError",
    "BiRat",
    "TriRat",
    "LaurentMonomial",
    "ZetaSeries",
    "mono",
    "geom",
    "one_minus",
    "substitute3",
    "invert_vars",
    "expand_series",
    "series_total_degree",
    "series_of_product_geometric",
]
