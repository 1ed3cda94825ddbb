"""Class-2 nilpotent group presentations given by antisymmetric matrices of linear forms.

A presentation is a d x d matrix M(y) whose (i, j) entry is the linear form in
y_1..y_{d'} giving the commutator [x_i, x_j]. Everything downstream
(Pfaffian, invariants mod p, the lattice oracle) is derived from it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .polynomial import MultiPoly


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class LinearForm:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def __neg__(self) -> "LinearForm":
        return LinearForm(tuple(-c for c in self.coeffs))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __call__(self, y: Sequence[int]) -> int:
        return sum(c * v for c, v in zip(self.coeffs, y))

    def as_poly(self) -> MultiPoly:
        return MultiPoly.linear(self.coeffs)

    def format(self, names: Sequence[str] | None = None) -> str:
        return self.as_poly().format(names)


@dataclass(frozen=True)
class GroupPresentation:
    d: int
    dprime: int
    matrix: tuple[tuple[LinearForm, ...], ...]
    name: str | None = field(default=None, compare=False)

    @property
    def r(self) -> int:
        return self.d // 2

    def evaluate(self, y: Sequence[int]) -> list[list[int]]:
        """The integer matrix M(y)."""
        return [[form(y) for form in row] for row in self.matrix]

    def poly_matrix(self) -> list[list[MultiPoly]]:
        return [[form.as_poly() for form in row] for row in self.matrix]

    def change_center_basis(self, T: Sequence[Sequence[int]]) -> "GroupPresentation":
        """Apply the linear substitution y -> T y to every entry (coefficient row c -> c T)."""
        T = [list(map(int, row)) for row in T]
        n = self.dprime

        def move(form: LinearForm) -> LinearForm:
            return LinearForm(tuple(sum(form.coeffs[k] * T[k][l] for k in range(n)) for l in range(n)))

        return GroupPresentation(
            self.d, self.dprime, tuple(tuple(move(f) for f in row) for row in self.matrix), self.name
        )

    def to_json(self) -> dict:
        out = {
            "d": self.d,
            "dprime": self.dprime,
            "matrix": [[list(f.coeffs) for f in row] for row in self.matrix],
        }
        if self.name:
            out["name"] = self.name
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json())


@dataclass(frozen=True)
class StructureTensor:
    """lam[i, j, k] = coefficient of y_k in [x_i, x_j] (object array of Python ints)."""

    lam: np.ndarray

    def reassemble(self, name: str | None = None) -> GroupPresentation:
        d, _, dprime = self.lam.shape
        rows = tuple(
            tuple(LinearForm(tuple(int(x) for x in self.lam[i, j])) for j in range(d)) for i in range(d)
        )
        return GroupPresentation(d, dprime, rows, name)


def validate(p: GroupPresentation) -> None:
    """Raise PresentationError describing the first violated invariant."""
    if p.d % 2:
        raise PresentationError(f"d = {p.d} is odd")
    if p.d < 4:
        raise PresentationError(f"d = {p.d} < 4")
    if p.dprime < 2:
        raise PresentationError(f"dprime = {p.dprime} < 2")
    if len(p.matrix) != p.d or any(len(row) != p.d for row in p.matrix):
        raise PresentationError("matrix is not d x d")
    for i, row in enumerate(p.matrix):
        for j, form in enumerate(row):
            if len(form.coeffs) != p.dprime:
                raise PresentationError(
                    f"entry ({i + 1},{j + 1}) has {len(form.coeffs)} coefficients, expected {p.dprime}"
                )
    for i in range(p.d):
        if p.matrix[i][i]:
            raise PresentationError(f"diagonal entry ({i + 1},{i + 1}) is non-zero: not antisymmetric")
        for j in range(i + 1, p.d):
            if p.matrix[i][j] != -p.matrix[j][i]:
                raise PresentationError(f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}): not antisymmetric")


def from_matrix(rows: Sequence[Sequence[Sequence[int]]], name: str | None = None) -> GroupPresentation:
    """Build and validate a presentation from nested coefficient lists."""
    d = len(rows)
    if d == 0:
        raise PresentationError("empty matrix")
    dprime = len(rows[0][0])
    pres = GroupPresentation(
        d, dprime, tuple(tuple(LinearForm(tuple(c)) for c in row) for row in rows), name
    )
    validate(pres)
    return pres


def from_json(data: Mapping | str | Path) -> GroupPresentation:
    """Load the JSON schema {"d", "dprime", "matrix"}; an upper triangle alone is antisymmetrised."""
    if isinstance(data, Path):
        data = json.loads(data.read_text())
    elif isinstance(data, str):
        data = json.loads(data)
    d, dprime = int(data["d"]), int(data["dprime"])
    raw = data["matrix"]
    zero = [0] * dprime
    full = [[list(zero) for _ in range(d)] for _ in range(d)]
    given = [[False] * d for _ in range(d)]
    if len(raw) != d:
        raise PresentationError("matrix has wrong number of rows")
    for i, row in enumerate(raw):
        for j, coeffs in enumerate(row):
            if coeffs is None:
                continue
            if len(coeffs) != dprime:
                raise PresentationError(
                    f"entry ({i + 1},{j + 1}) has {len(coeffs)} coefficients, expected {dprime}"
                )
            full[i][j] = [int(c) for c in coeffs]
            given[i][j] = True
    for i in range(d):
        for j in range(i + 1, d):
            upper, lower = full[i][j], full[j][i]
            if given[j][i] and any(lower):
                neg = [-c for c in lower]
                if given[i][j] and any(upper) and upper != neg:
                    raise PresentationError(
                        f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) conflict: not antisymmetric"
                    )
                full[i][j] = neg
            else:
                full[j][i] = [-c for c in upper]
    return from_matrix(full, data.get("name"))


def block_presentation(R: Sequence[Sequence[Sequence[int]]], name: str | None = None) -> GroupPresentation:
    """M(y) = [[0, R(y)], [-R(y)^t, 0]] for an r x r matrix R of linear forms."""
    r = len(R)
    dprime = len(R[0][0])
    zero = [0] * dprime
    rows = [[list(zero) for _ in range(2 * r)] for _ in range(2 * r)]
    for i in range(r):
        for j in range(r):
            rows[i][r + j] = list(R[i][j])
            rows[r + j][i] = [-c for c in R[i][j]]
    return from_matrix(rows, name)


def _dusautoy_E(D: int = 1) -> GroupPresentation:
    y1, y2, y3, o = [1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]
    R = [
        [[0, 0, D], y1, y2],
        [y1, y3, o],
        [y2, o, y1],
    ]
    return block_presentation(R, f"dusautoy-E(D={D})")


def _G1C() -> GroupPresentation:
    y1, y2, o = [1, 0, 0], [0, 1, 0], [0, 0, 0]
    R = [
        [y1, y2, o],
        [o, y1, y2],
        [[0, 0, -1], o, [1, 0, -1]],
    ]
    return block_presentation(R, "G1C")


def _G2C() -> GroupPresentation:
    y1, y2, o = [1, 0, 0], [0, 1, 0], [0, 0, 0]
    R = [
        [y1, y2, o],
        [o, [1, 0, -1], y2],
        [[0, 0, -1], o, y1],
    ]
    return block_presentation(R, "G2C")


def cubic_norm_form(n: int = 2) -> GroupPresentation:
    """Block presentation with R(y) = y1 I + y2 C + y3 C^2, C the companion matrix of t^3 - n.

    det R(y) is the norm form of Q(n^{1/3}); at primes where t^3 - n stays
    irreducible the Pfaffian curve has no F_p-points.
    """
    C = [[0, 1, 0], [0, 0, 1], [n, 0, 0]]
    C2 = [[sum(C[i][k] * C[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    R = [[[int(i == j), C[i][j], C2[i][j]] for j in range(3)] for i in range(3)]
    return block_presentation(R, f"norm-cubic(n={n})")


BUILTINS = {
    "dusautoy-E": _dusautoy_E,
    "G1C": _G1C,
    "G2C": _G2C,
}


def builtin(name: str, params: Mapping[str, int] | None = None) -> GroupPresentation:
    params = dict(params or {})
    if name not in BUILTINS:
        raise PresentationError(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}")
    try:
        return BUILTINS[name](**params)
    except TypeError as exc:
        raise PresentationError(f"bad parameters for {name}: {params}") from exc


def structure_constants(p: GroupPresentation) -> StructureTensor:
    lam = np.empty((p.d, p.d, p.dprime), dtype=object)
    for i, row in enumerate(p.matrix):
        for j, form in enumerate(row):
            lam[i, j, :] = form.coeffs
    return StructureTensor(lam)


def random_presentation(rng: np.random.Generator, d: int, dprime: int, bound: int = 2) -> GroupPresentation:
    rows = [[[0] * dprime for _ in range(d)] for _ in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            c = [int(x) for x in rng.integers(-bound, bound + 1, size=dprime)]
            rows[i][j] = c
            rows[j][i] = [-x for x in c]
    return from_matrix(rows, f"random(d={d},dprime={dprime})")
