"""First-order factors, the second-order discriminant, and reconstruction for separable operators."""

from .disc import Disc2Report, Irreducibility, disc2, disc_formula, irreducible2
from .search import (
    FactorCandidate,
    SearchReport,
    default_bounds,
    divide_first_order,
    left_factor_search,
    remainder_equations,
    right_factor_search,
)
from .separable import (
    Reconstruction,
    SeparableData,
    reconstruct_sum,
    separable_prepare,
    separable_reconstruct,
)
from .tree import Factorization, factor_up_to_order3

__all__ = [
    "Disc2Report",
    "FactorCandidate",
    "Factorization",
    "Irreducibility",
    "Reconstruction",
    "SearchReport",
    "SeparableData",
    "default_bounds",
    "disc2",
    "disc_formula",
    "divide_first_order",
    "factor_up_to_order3",
    "irreducible2",
    "left_factor_search",
    "remainder_equations",
    "reconstruct_sum",
    "right_factor_search",
    "separable_prepare",
    "separable_reconstruct",
]
