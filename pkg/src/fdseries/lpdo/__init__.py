"""Operators in F[d_x, d_y], their symbols, and the skew ring F[E]."""

from .operator import LPDO, change_coordinates, divide_by_first_order
from .skew import SkewPoly, skew_from_lpdo
from .symbol import LinearFactor, SymbolFactorization, SymbolPoly, mult_of, symbol_linear_factors

__all__ = ["LPDO", "LinearFactor", "SkewPoly", "SymbolFactorization", "SymbolPoly", "change_coordinates",
           "divide_by_first_order", "mult_of", "skew_from_lpdo", "symbol_linear_factors"]
