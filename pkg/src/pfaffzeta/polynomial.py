"""Sparse multivariate polynomials with exact coefficients.

Exponent vectors are tuples of integers. Negative exponents are allowed so the
same class carries the Laurent polynomials used by :mod:`pfaffzeta.ratfun`;
everything else in the package only builds ordinary polynomials.

Coefficients are Python ints or :class:`fractions.Fraction`. A polynomial may
carry a ``modulus`` (a prime), in which case coefficients live in ``[0, p)``.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

import sympy

Coeff = Union[int, Fraction]


def _norm_coeff(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class PolynomialError(ValueError):
    pass


class MultiPoly:
    """Immutable sparse polynomial in ``nvars`` variables."""

    __slots__ = ("nvars", "terms", "modulus", "_hash")

    def __init__(self, terms: Mapping[tuple, Coeff], nvars: int, modulus: int | None = None):
        clean = {}
        for e, c in terms.items():
            if len(e) != nvars:
                raise PolynomialError(f"exponent {e} has wrong length for {nvars} variables")
            if modulus is not None:
                c = _reduce_coeff(c, modulus)
            else:
                c = _norm_coeff(c)
            if c:
                clean[tuple(e)] = c
        self.nvars = nvars
        self.terms = clean
        self.modulus = modulus
        self._hash = None

    # constructors

    @classmethod
    def zero(cls, nvars: int, modulus: int | None = None) -> "MultiPoly":
        return cls({}, nvars, modulus)

    @classmethod
    def const(cls, c: Coeff, nvars: int, modulus: int | None = None) -> "MultiPoly":
        return cls({(0,) * nvars: c}, nvars, modulus)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: Coeff = 1, modulus: int | None = None) -> "MultiPoly":
        return cls({tuple(exps): coeff}, len(exps), modulus)

    @classmethod
    def var(cls, i: int, nvars: int, modulus: int | None = None) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): 1}, nvars, modulus)

    @classmethod
    def linear(cls, coeffs: Sequence[int], modulus: int | None = None) -> "MultiPoly":
        n = len(coeffs)
        return cls({tuple(int(i == k) for i in range(n)): c for k, c in enumerate(coeffs)}, n, modulus)

    # basic protocol

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other, self.nvars, self.modulus)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.modulus == other.modulus and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, self.modulus, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self) -> list[tuple[tuple, Coeff]]:
        """Terms in the canonical order: descending total degree, then lex descending."""
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise PolynomialError("variable count mismatch")
            if other.modulus != self.modulus:
                raise PolynomialError("modulus mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other, self.nvars, self.modulus)
        raise TypeError(f"cannot combine MultiPoly with {type(other).__name__}")

    # arithmetic

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(out, self.nvars, self.modulus)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({e: -c for e, c in self.terms.items()}, self.nvars, self.modulus)

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly.zero(self.nvars, self.modulus)
            return MultiPoly({e: c * other for e, c in self.terms.items()}, self.nvars, self.modulus)
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(out, self.nvars, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise PolynomialError("negative power")
        result = MultiPoly.const(1, self.nvars, self.modulus)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # structure

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def min_exponents(self) -> tuple:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def max_exponents(self) -> tuple:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(max(e[i] for e in self.terms) for i in range(self.nvars))

    def shift(self, exps: Sequence[int]) -> "MultiPoly":
        """Multiply by the monomial with exponent vector ``exps``."""
        return MultiPoly(
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()},
            self.nvars,
            self.modulus,
        )

    def is_polynomial(self) -> bool:
        return all(x >= 0 for e in self.terms for x in e)

    def coefficient(self, exps: Sequence[int]) -> Coeff:
        return self.terms.get(tuple(exps), 0)

    def homogeneous_part(self, deg: int) -> "MultiPoly":
        return MultiPoly({e: c for e, c in self.terms.items() if sum(e) == deg}, self.nvars, self.modulus)

    def content(self) -> Fraction:
        """Positive rational c with self / c having coprime integer coefficients."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            c = Fraction(c)
            num = _gcd(num, c.numerator)
            den = den * c.denominator // _gcd(den, c.denominator)
        return Fraction(num, den)

    # evaluation and substitution

    def evaluate(self, point: Sequence) -> Coeff:
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term = term * (x ** k if k > 0 else Fraction(1) / Fraction(x) ** (-k))
            total += term
        if self.modulus is not None:
            return _reduce_coeff(total, self.modulus)
        return _norm_coeff(total)

    def diff(self, i: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return MultiPoly(out, self.nvars, self.modulus)

    def compose(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute ``images[i]`` for variable ``i`` (non-negative exponents only)."""
        if len(images) != self.nvars:
            raise PolynomialError("need one image per variable")
        target = images[0].nvars
        mod = images[0].modulus
        powers: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in powers:
                powers[key] = images[i] ** k
            return powers[key]

        out = MultiPoly.zero(target, mod)
        for e, c in self.terms.items():
            if any(k < 0 for k in e):
                raise PolynomialError("compose needs non-negative exponents")
            term = MultiPoly.const(c, target, mod)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def substitute_monomials(self, images: Sequence[Sequence[int]], nvars: int) -> "MultiPoly":
        """Substitute the Laurent monomial with exponent vector ``images[i]`` for variable ``i``."""
        out: dict = {}
        for e, c in self.terms.items():
            f = [0] * nvars
            for k, img in zip(e, images):
                if k:
                    for j, x in enumerate(img):
                        f[j] += k * x
            f = tuple(f)
            out[f] = out.get(f, 0) + c
        return MultiPoly(out, nvars, self.modulus)

    def reduce_mod(self, p: int) -> "MultiPoly":
        """Coefficient-wise reduction into F_p; raises if p divides a denominator."""
        return MultiPoly(self.terms, self.nvars, p)

    def lift(self) -> "MultiPoly":
        """Forget the modulus (coefficients become their representatives in [0, p))."""
        return MultiPoly(self.terms, self.nvars, None)

    # printing and serialisation

    def format(self, names: Sequence[str] | None = None, ascending: bool = False) -> str:
        if names is None:
            names = [f"y{i + 1}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        terms = self.sorted_terms()
        for e, c in reversed(terms) if ascending else terms:
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def latex(self, names: Sequence[str], ascending: bool = False) -> str:
        if not self.terms:
            return "0"
        parts = []
        terms = self.sorted_terms()
        for e, c in reversed(terms) if ascending else terms:
            mono = "".join(n if k == 1 else f"{n}^{{{k}}}" for n, k in zip(names, e) if k)
            if not mono:
                coeff = str(c)
            elif c == 1:
                coeff = ""
            elif c == -1:
                coeff = "-"
            else:
                coeff = _latex_coeff(c)
            parts.append(coeff + mono)
        return "+".join(parts).replace("+-", "-")

    def __repr__(self) -> str:
        mod = f" mod {self.modulus}" if self.modulus else ""
        return f"MultiPoly({self.format()}{mod})"

    def to_json(self) -> list:
        return [[list(e), str(c)] for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: Iterable, nvars: int, modulus: int | None = None) -> "MultiPoly":
        return cls({tuple(e): Fraction(c) for e, c in data}, nvars, modulus)

    def dumps(self) -> str:
        return json.dumps({"nvars": self.nvars, "modulus": self.modulus, "terms": self.to_json()})

    # sympy bridge (gcd only)

    def to_sympy(self, gens):
        expr = sympy.Integer(0)
        for e, c in self.terms.items():
            term = sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
            for g, k in zip(gens, e):
                term *= g ** k
            expr += term
        return expr


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _reduce_coeff(c: Coeff, p: int) -> int:
    if isinstance(c, Fraction):
        if c.denominator % p == 0:
            raise PolynomialError(f"coefficient {c} is not {p}-integral")
        return c.numerator * pow(c.denominator, -1, p) % p
    return c % p


def _latex_coeff(c: Coeff) -> str:
    if isinstance(c, Fraction):
        sign = "-" if c < 0 else ""
        return f"{sign}\\frac{{{abs(c.numerator)}}}{{{c.denominator}}}"
    return str(c)


# determinants and Pfaffians of matrices of polynomials


def perfect_matchings(items: Sequence[int]):
    """Yield (sign, pairs) for every perfect matching of ``items``.

    The sign is that of the permutation (i1 j1 i2 j2 ...) with each pair
    written in increasing order, as required by the Pfaffian expansion.
    """
    if not items:
        yield 1, ()
        return
    first = items[0]
    for k in range(1, len(items)):
        partner = items[k]
        rest = items[1:k] + items[k + 1:]
        sign = -1 if (k - 1) % 2 else 1
        for s, pairs in perfect_matchings(rest):
            yield sign * s, ((first, partner),) + pairs


def pfaffian_of(matrix: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Pfaffian of an antisymmetric matrix of polynomials by the matching expansion."""
    n = len(matrix)
    if n % 2:
        raise PolynomialError("Pfaffian needs an even-sized matrix")
    nvars = matrix[0][0].nvars if n else 0
    mod = matrix[0][0].modulus if n else None
    total = MultiPoly.zero(nvars, mod)
    for sign, pairs in perfect_matchings(list(range(n))):
        term = MultiPoly.const(sign, nvars, mod)
        for i, j in pairs:
            entry = matrix[i][j]
            if not entry:
                break
            term = term * entry
        else:
            total = total + term
    return total


def determinant_of(matrix: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Determinant by cofactor expansion along the first row (memoised on column sets).

    Independent of :func:`pfaffian_of`; used to check Pf^2 = det.
    """
    n = len(matrix)
    nvars = matrix[0][0].nvars
    mod = matrix[0][0].modulus
    cache: dict = {}

    def minor(row: int, cols: tuple) -> MultiPoly:
        if row == n:
            return MultiPoly.const(1, nvars, mod)
        if cols in cache:
            return cache[cols]
        total = MultiPoly.zero(nvars, mod)
        for k, c in enumerate(cols):
            entry = matrix[row][c]
            if not entry:
                continue
            sub = minor(row + 1, cols[:k] + cols[k + 1:])
            term = entry * sub
            total = total + (term if k % 2 == 0 else -term)
        cache[cols] = total
        return total

    return minor(0, tuple(range(n)))


def gcd_with_partials(f: MultiPoly) -> MultiPoly:
    """gcd(f, df/dy_1, ..., df/dy_n), computed over Q or over F_p.

    f is square-free (over the algebraic closure) iff this gcd is constant;
    the criterion holds in every characteristic, since a simple factor g of
    f that divides every partial would have all partials zero, making it a
    p-th power.
    """
    gens = sympy.symbols(f"y1:{f.nvars + 1}")
    kw = {"modulus": f.modulus} if f.modulus else {"domain": "QQ"}
    expr = f.lift().to_sympy(gens) if f.modulus else f.to_sympy(gens)
    P = sympy.Poly(expr, *gens, **kw)
    g = P
    for v in gens:
        g = sympy.gcd(g, P.diff(v))
        if g.total_degree() == 0:
            break
    out = {}
    for mon, c in g.terms():
        if f.modulus:
            out[mon] = int(c) % f.modulus
        else:
            out[mon] = Fraction(int(c.p), int(c.q))
    return MultiPoly(out, f.nvars, f.modulus)


def is_squarefree(f: MultiPoly) -> bool:
    """True iff f has no repeated factor over the algebraic closure of its field."""
    if f.is_zero():
        raise PolynomialError("zero polynomial")
    return gcd_with_partials(f).degree() == 0


def is_squarefree_over_Q(f: MultiPoly) -> bool:
    if f.modulus is not None:
        raise PolynomialError("expected a polynomial over Q")
    return is_squarefree(f)


def reduce_mod_p(f: MultiPoly, p: int) -> MultiPoly:
    return f.reduce_mod(p)


def projective_points(n: int, p: int):
    """All points of P^{n-1}(F_p), normalised so the last non-zero coordinate is 1."""
    for last in range(n - 1, -1, -1):
        for head in itertools.product(range(p), repeat=last):
            yield tuple(head) + (1,) + (0,) * (n - 1 - last)


def pfaffian(pres) -> MultiPoly:
    """Pf(M(y)) of a GroupPresentation: homogeneous of degree d/2 in y_1..y_{d'}."""
    if pres.d % 2:
        raise PolynomialError("Pfaffian needs even d")
    return pfaffian_of(pres.poly_matrix())


def determinant(pres) -> MultiPoly:
    return determinant_of(pres.poly_matrix())
