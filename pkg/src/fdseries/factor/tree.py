"""Factorization of operators of order at most three into verified pieces."""

from dataclasses import dataclass, field

from ..errors import PreconditionError, VerificationError
from ..lpdo.operator import LPDO
from ..lpdo.symbol import symbol_linear_factors
from .disc import irreducible2
from .search import default_bounds, left_factor_search, right_factor_search


@dataclass
class Factorization:
    """T = factors[0] * factors[1] * ...; leaves of order > 1 carry how they were certified."""

    T: LPDO
    factors: list
    notes: list = field(default_factory=list)
    bounds: tuple = None

    def product(self):
        out = self.factors[0]
        for f in self.factors[1:]:
            out = out * f
        return out

    def verify(self):
        return self.product() == self.T

    @property
    def complete(self):
        return all(f.order <= 1 for f in self.factors)

    def to_json(self):
        return {
            "factors": [str(f) for f in self.factors],
            "orders": [f.order for f in self.factors],
            "notes": self.notes,
            "bounds": list(self.bounds) if self.bounds else None,
            "remultiplies": self.verify(),
        }


def _non_separable2(T):
    fac = symbol_linear_factors(T.symbol())
    return len(fac.linear) == 1 and fac.linear[0].multiplicity == 2 and not fac.linear[0].a1.is_zero()


def _split(T, bounds, notes):
    """Factor list for T, peeling first-order factors on the right, then on the left."""
    if T.order <= 1:
        return [T]
    if T.order == 2 and _non_separable2(T):
        verdict = irreducible2(T, bounds)
        if not verdict.reducible:
            notes.append(f"irreducible (Disc = {verdict.report.disc}): {T}")
            return [T]
        S, L = verdict.factors
        return [S, L]
    rep = right_factor_search(T, bounds, first_only=True)
    if rep.candidates:
        c = rep.candidates[0]
        return _split(c.cofactor, bounds, notes) + [c.L]
    rep = left_factor_search(T, bounds, first_only=True)
    if rep.candidates:
        c = rep.candidates[0]
        return [c.L] + _split(c.cofactor, bounds, notes)
    notes.append(f"no first-order factor within bounds {list(bounds)}: {T}")
    return [T]


def factor_up_to_order3(T, bounds=None):
    if T.order > 3:
        raise PreconditionError("factor_up_to_order3 needs order <= 3")
    bounds = bounds or default_bounds(T)
    notes = []
    fs = _split(T, bounds, notes)
    res = Factorization(T, fs, notes, bounds)
    if not res.verify():
        raise VerificationError("factors do not re-multiply to the input")
    return res
