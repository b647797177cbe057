"""Differential field towers, univariate polynomials over them, and truncated series."""

from .linalg import nullspace, rank, row_reduce, solve
from .series import TruncatedPowerSeries, expand_series
from .tower import DElement, Tower, base_tower, fmpq, to_fraction
from .upoly import UPoly

__all__ = ["DElement", "Tower", "TruncatedPowerSeries", "UPoly", "base_tower", "expand_series",
           "fmpq", "nullspace", "rank", "row_reduce", "solve", "to_fraction"]
