"""Newton polygons, leading equations and series construction."""

from .construct import (Branch, BranchTrace, LevelRecord, construct_series, explore_branches,
                        start_branch, tail_coefficients, walk_branch)
from .leading import (LeadingPolynomial, LeadingRoot, TaylorShift, adjoin_leading_solution,
                      adjoin_linear_solution, common_linear_form, leading_polynomial, leading_roots,
                      taylor_formula, taylor_shift, terminal_operator)
from .polygon import LeadingEdge, NewtonPolygon, build_polygon, convex_hull, leading_edges

__all__ = [
    "Branch", "BranchTrace", "LeadingEdge", "LeadingPolynomial", "LeadingRoot", "LevelRecord",
    "NewtonPolygon", "TaylorShift", "adjoin_leading_solution", "adjoin_linear_solution",
    "build_polygon", "common_linear_form", "construct_series", "convex_hull", "explore_branches",
    "leading_edges", "leading_polynomial", "leading_roots", "start_branch", "tail_coefficients",
    "taylor_formula", "taylor_shift", "terminal_operator", "walk_branch",
]
