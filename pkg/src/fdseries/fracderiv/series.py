"""Truncated fractional-derivatives series and their verification."""

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import PreconditionError
from .gsymbol import FracElement, expand_apply


@dataclass
class FracSeries:
    """sum_{i <= N} h_i G^(s0 - i/q)."""

    gsymbol: object
    s0: Fraction
    coeffs: list
    verified_depth: int = 0
    trace: object = field(default=None, repr=False)

    def __post_init__(self):
        self.s0 = Fraction(self.s0)
        if (self.s0 * self.q).denominator != 1:
            raise PreconditionError("q * s0 must be an integer")
        if not self.coeffs or self.coeffs[0].is_zero():
            raise PreconditionError("leading coefficient h_0 must be nonzero")

    @property
    def q(self):
        return self.gsymbol.q

    @property
    def N(self):
        return len(self.coeffs) - 1

    @property
    def tower(self):
        t = self.gsymbol.tower
        for h in self.coeffs:
            if t.is_ancestor_of(h.tower):
                t = h.tower
        return t

    def exponent(self, i):
        return self.s0 - Fraction(i, self.q)

    def terms(self):
        return [(self.exponent(i), h) for i, h in enumerate(self.coeffs)]

    def records(self):
        return [{"exponent": _q(s), "coefficient": str(h)} for s, h in self.terms()]

    def to_json(self, operator=None):
        out = {
            "tower": self.tower.script(),
            "gsymbol": self.gsymbol.header(),
            "s0": _q(self.s0),
            "q": self.q,
            "terms": self.records(),
            "verified_depth": self.verified_depth,
        }
        if operator is not None:
            out["operator"] = str(operator)
        return out


def _q(v):
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


@dataclass
class Verdict:
    ok: bool
    verified_depth: int
    checked: int
    first_failure: object = None
    residual: object = None


def apply_series(T, S):
    total = FracElement(S.gsymbol)
    for s, h in S.terms():
        if not h.is_zero():
            total = total + expand_apply(T, h, s, S.gsymbol)
    return total


def verify_series(T, S, depth):
    """Check that T(S) vanishes at the top `depth` exponents s0 + n, s0 + n - 1/q, ..."""
    total = apply_series(T, S)
    top = S.s0 + T.order
    step = Fraction(1, S.q)
    verified = 0
    failure = None
    for k in range(depth):
        e = top - k * step
        c = total.coefficient(e)
        if not c.is_zero():
            failure = e
            break
        verified += 1
    if failure is None:
        higher = [e for e in total.terms if e > top]
        if higher:
            failure = max(higher)
            verified = 0
    ok = failure is None
    S.verified_depth = max(S.verified_depth, verified) if ok else verified
    return Verdict(ok, verified, depth, failure, total.coefficient(failure) if failure is not None else None)
