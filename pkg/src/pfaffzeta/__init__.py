"""Local zeta functions counting normal subgroups of class-2 nilpotent groups.

The groups are given by antisymmetric matrices of linear forms; the package
computes Pfaffians, point counts of the Pfaffian curve mod p, the closed
rational formula, and a brute-force lattice oracle to check it against.
"""

from .formulas import W, A_correction, assemble_zeta, igusa_sum
from .geometry import invariants
from .oracle import oracle_zeta
from .polynomial import MultiPoly, determinant, pfaffian
from .presentations import GroupPresentation, builtin, from_json
from .ratfun import RatFun, ZetaSeries, expand_series

__version__ = "0.1.0"

__all__ = [
    "A_correction",
    "GroupPresentation",
    "MultiPoly",
    "RatFun",
    "W",
    "ZetaSeries",
    "assemble_zeta",
    "builtin",
    "determinant",
    "expand_series",
    "from_json",
    "igusa_sum",
    "invariants",
    "oracle_zeta",
    "pfaffian",
]
