"""The ring R of operators with denominators in F[d_y]."""

from .dxpoly import DxPoly, divide_dx
from .ideal import GcdResult, OreFraction, frac_arith, is_associate, left_gcd, pseudo_reduce, symbol_gcd
from .skewfield import SkewFrac, dy_poly
from .swap import ore_swap, ore_swap_right

__all__ = [
    "DxPoly", "GcdResult", "is_associate", "pseudo_reduce", "OreFraction", "SkewFrac", "divide_dx", "dy_poly", "frac_arith",
    "left_gcd", "ore_swap", "ore_swap_right", "symbol_gcd",
]
