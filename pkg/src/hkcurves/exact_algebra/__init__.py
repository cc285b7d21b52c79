"""Exact arithmetic core: Gaussian rationals, matrices, graded polynomial data.

Everything downstream treats these types as the ground field and its
linear algebra; no floating point enters until an explicitly numeric
adapter converts out.
"""

from .ideals import GradedIdeal, sparse_row_rank
from .linalg import ExactMatrix
from .modp import PRIMES, rank_mod, rows_mod, sparse_rank_certificate, value_mod
from .polys import (
    GradedMap,
    HomogPoly,
    UniPoly,
    graded_matrix,
    monomial_basis,
    monomial_count,
    monomial_index,
    uni_gcd,
    uni_interpolate,
)
from .scalars import GaussianRational, gauss

__all__ = [
    "GradedIdeal",
    "sparse_row_rank",
    "ExactMatrix",
    "GradedMap",
    "HomogPoly",
    "UniPoly",
    "GaussianRational",
    "gauss",
    "graded_matrix",
    "monomial_basis",
    "monomial_count",
    "monomial_index",
    "uni_gcd",
    "uni_interpolate",
    "PRIMES",
    "rank_mod",
    "rows_mod",
    "sparse_rank_certificate",
    "value_mod",
]
