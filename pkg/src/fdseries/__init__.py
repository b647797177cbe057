"""Fractional-derivatives series for linear partial differential operators."""
