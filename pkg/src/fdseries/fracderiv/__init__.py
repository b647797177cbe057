"""The fractional-derivatives calculus: G-symbols, expansions, specializations and series."""

from .expand import BiExp, derive_graded, expand_closed, expand_recursive
from .gsymbol import FracElement, GSymbol, expand_apply, expand_apply_closed, frac_derive
from .jets import JetExtension, adjoin_characteristic, check_commutation, fresh_name
from .series import FracSeries, Verdict, apply_series, verify_series
from .specialize import MissingConstant, Specialization, specialize

__all__ = ["BiExp", "FracElement", "FracSeries", "GSymbol", "JetExtension", "MissingConstant",
           "Specialization", "Verdict", "adjoin_characteristic", "apply_series", "check_commutation",
           "derive_graded", "expand_apply", "expand_apply_closed", "expand_closed", "expand_recursive",
           "frac_derive", "fresh_name", "specialize", "verify_series"]
