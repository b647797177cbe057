"""Truncated bivariate power series in X = x - x0, Y = y - y0."""

from fractions import Fraction

import flint

from ..errors import MissingGeneratorSeries, PoleError, PreconditionError
from .tower import fmpq, to_fraction

_CTX = flint.fmpq_mpoly_ctx.get(("X", "Y"), "lex")


def _truncate(p, n):
    if n < 0:
        return _CTX.from_dict({})
    d = p.degrees()
    if d[0] + d[1] <= n:
        return p
    return _CTX.from_dict({e: c for e, c in p.to_dict().items() if e[0] + e[1] <= n})


class TruncatedPowerSeries:
    """Coefficients b_{p,q} of (x-x0)^p (y-y0)^q, exact for p + q <= order."""

    __slots__ = ("center", "order", "poly")

    def __init__(self, center, order, poly=None):
        self.center = (Fraction(center[0]), Fraction(center[1]))
        self.order = order
        if poly is None:
            poly = _CTX.from_dict({})
        elif isinstance(poly, dict):
            poly = _CTX.from_dict({k: fmpq(Fraction(v)) for k, v in poly.items() if v != 0})
        self.poly = _truncate(poly, order)

    @classmethod
    def constant(cls, center, order, c):
        return cls(center, order, {(0, 0): c})

    @classmethod
    def variable(cls, center, order, var):
        x0, y0 = Fraction(center[0]), Fraction(center[1])
        if var == "x":
            return cls(center, order, {(0, 0): x0, (1, 0): 1})
        return cls(center, order, {(0, 0): y0, (0, 1): 1})

    def _lift(self, other):
        if isinstance(other, TruncatedPowerSeries):
            if other.center != self.center:
                raise PreconditionError("series with different centers")
            return other
        return TruncatedPowerSeries.constant(self.center, self.order, Fraction(other))

    def __add__(self, other):
        o = self._lift(other)
        n = min(self.order, o.order)
        return TruncatedPowerSeries(self.center, n, _truncate(self.poly + o.poly, n))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedPowerSeries(self.center, self.order, -self.poly)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedPowerSeries(self.center, self.order, self.poly * fmpq(Fraction(other)))
        o = self._lift(other)
        n = min(self.order, o.order)
        return TruncatedPowerSeries(self.center, n, _truncate(_truncate(self.poly, n) * _truncate(o.poly, n), n))

    __rmul__ = __mul__

    def __pow__(self, k):
        r = TruncatedPowerSeries.constant(self.center, self.order, 1)
        for _ in range(k):
            r = r * self
        return r

    def constant_term(self):
        return self.coefficient(0, 0)

    def inverse(self):
        c0 = self.constant_term()
        if c0 == 0:
            raise PoleError("series with zero constant term is not invertible")
        r = (self - c0) * Fraction(-1, 1) * (1 / c0)
        acc = TruncatedPowerSeries.constant(self.center, self.order, 1)
        term = acc
        for _ in range(self.order):
            term = term * r
            acc = acc + term
        return acc * (1 / c0)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * self._lift(other).inverse()

    def derive(self, var):
        i = 0 if var == "x" else 1
        return TruncatedPowerSeries(self.center, max(self.order - 1, -1), self.poly.derivative(i))

    def integrate_x(self, constant):
        """Antiderivative in x whose restriction to x = x0 is the univariate series `constant` (in Y)."""
        p = self.poly.integral(0)
        n = self.order + 1
        if isinstance(constant, TruncatedPowerSeries):
            n = min(n, constant.order)
            p = p + constant.poly
        return TruncatedPowerSeries(self.center, n, p)

    def coefficient(self, p, q):
        return to_fraction(self.poly.to_dict().get((p, q), flint.fmpq(0)))

    def coefficients(self):
        return {e: to_fraction(c) for e, c in self.poly.to_dict().items()}

    def truncate(self, n):
        n = min(n, self.order)
        return TruncatedPowerSeries(self.center, n, self.poly)

    def is_zero(self):
        return self.poly.is_zero()

    def __eq__(self, other):
        o = self._lift(other)
        n = min(self.order, o.order)
        return _truncate(self.poly, n) == _truncate(o.poly, n)

    def __str__(self):
        return f"{self.poly if not self.poly.is_zero() else 0} + O({self.order + 1})"

    __repr__ = __str__


def expand_series(a, center, N, jets=None):
    """Taylor expansion of a tower element through total degree N.

    `jets` maps extension generator names (or jet names) to their series.
    """
    jets = jets or {}
    t = a.tower
    u = t.universe
    images = []
    for name in u.ctx.names():
        if name == "x" or name == "y":
            images.append(TruncatedPowerSeries.variable(center, N, name))
        elif name in jets:
            s = jets[name]
            images.append(s if isinstance(s, TruncatedPowerSeries) else TruncatedPowerSeries.constant(center, N, s))
        else:
            images.append(None)
    num, den = u.lift(a.num), u.lift(a.den)
    for p in (num, den):
        for i in range(len(images)):
            if images[i] is None and p.degrees()[i] > 0:
                raise MissingGeneratorSeries(f"no series supplied for generator {u.ctx.names()[i]}")
    n = min([N] + [s.order for s in images if s is not None])
    zero = _CTX.from_dict({})
    polys = [s.poly if s is not None else zero for s in images]
    sn = TruncatedPowerSeries(center, n, _truncate(_compose(num, polys, n), n))
    sd = TruncatedPowerSeries(center, n, _truncate(_compose(den, polys, n), n))
    if sd.constant_term() == 0:
        raise PoleError(f"{a} has a pole at {center}")
    return sn / sd if not den.is_one() else sn


def _compose(p, polys, n):
    """Substitute series polynomials, truncating powers as they grow."""
    if all(len(q) <= 2 for q in polys) and p.total_degree() <= 12:
        return p.compose(*polys, ctx=_CTX)
    cache = {}

    def power(i, e):
        key = (i, e)
        if key not in cache:
            cache[key] = polys[i] if e == 1 else _truncate(power(i, e - 1) * polys[i], n)
        return cache[key]

    out = _CTX.from_dict({})
    for exps, c in p.to_dict().items():
        term = _CTX.from_dict({(0, 0): c})
        for i, e in enumerate(exps):
            if e:
                term = _truncate(term * power(i, e), n)
        out = out + term
    return out
