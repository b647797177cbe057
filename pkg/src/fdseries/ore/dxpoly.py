"""Elements of R written as polynomials in d_x over the skew field of F[d_y]."""

from math import comb

from ..errors import DivisionByZero
from ..dfield.tower import join
from ..lpdo.operator import LPDO
from .skewfield import SkewFrac, dy_poly


class DxPoly:
    """sum c_i d_x^i, c_i in Frac(F[d_y]), with d_x c = c d_x + delta(c)."""

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower, coeffs):
        self.tower = tower
        cs = [c if isinstance(c, SkewFrac) else SkewFrac.scalar(tower, c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = cs

    @classmethod
    def from_lpdo(cls, T):
        t = T.tower
        rows = {}
        for (i, j), c in T.coeffs.items():
            rows.setdefault(i, {})[j] = c
        coeffs = []
        for i in range(T.order_dx() + 1 if not T.is_zero() else 0):
            row = rows.get(i, {})
            n = max(row, default=-1)
            coeffs.append(SkewFrac(dy_poly(t, [row.get(j, t.zero) for j in range(n + 1)])))
        return cls(t, coeffs)

    @classmethod
    def one(cls, tower):
        return cls(tower, [1])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1]

    def _zero(self):
        return SkewFrac.scalar(self.tower, 0)

    def _common(self, other):
        if not isinstance(other, DxPoly):
            other = DxPoly(self.tower, [other])
        t = join(self.tower, other.tower)
        return DxPoly(t, self.coeffs), DxPoly(t, other.coeffs)

    def __add__(self, other):
        a, b = self._common(other)
        n = max(len(a.coeffs), len(b.coeffs))
        z = a._zero()
        ca = a.coeffs + [z] * (n - len(a.coeffs))
        cb = b.coeffs + [z] * (n - len(b.coeffs))
        return DxPoly(a.tower, [p + q for p, q in zip(ca, cb)])

    def __neg__(self):
        return DxPoly(self.tower, [-c for c in self.coeffs])

    def __sub__(self, other):
        a, b = self._common(other)
        return a + (-b)

    def _dx_power_times(self, i, c):
        """d_x^i c as a coefficient list."""
        out = [self._zero()] * (i + 1)
        d = c
        for k in range(i + 1):
            if d.is_zero():
                break
            out[i - k] = out[i - k] + d * comb(i, k)
            d = d.derive_x()
        return out

    def __mul__(self, other):
        a, b = self._common(other)
        if a.is_zero() or b.is_zero():
            return DxPoly(a.tower, [])
        out = [a._zero()] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, p in enumerate(a.coeffs):
            if p.is_zero():
                continue
            for j, q in enumerate(b.coeffs):
                if q.is_zero():
                    continue
                for k, c in enumerate(a._dx_power_times(i, q)):
                    if not c.is_zero():
                        out[k + j] = out[k + j] + p * c
        return DxPoly(a.tower, out)

    def __eq__(self, other):
        a, b = self._common(other)
        return len(a.coeffs) == len(b.coeffs) and all(p == q for p, q in zip(a.coeffs, b.coeffs))

    def monic(self):
        inv = self.lc().inverse()
        return DxPoly(self.tower, [inv]) * self

    def denominator(self):
        """A common left denominator b (monic) with b*self having polynomial coefficients."""
        t = self.tower
        b = dy_poly(t, [1])
        for c in self.coeffs:
            if c.den.degree > 0:
                if b.degree == 0:
                    b = c.den
                else:
                    u, _ = b.left_lcm_cofactors(c.den)
                    b = (u * b).monic()
        return b

    def clear(self):
        """(b, P) with b in F[d_y], P an LPDO and b * self = P."""
        b = self.denominator()
        cleared = DxPoly(self.tower, [SkewFrac(b)]) * self
        return b, cleared.to_lpdo()

    def to_lpdo(self):
        t = self.tower
        coeffs = {}
        for i, c in enumerate(self.coeffs):
            if c.den.degree != 0:
                raise ValueError("coefficient is not a polynomial in d_y")
            for j, a in enumerate(c.num.coeffs):
                if not a.is_zero():
                    coeffs[(i, j)] = a
        return LPDO(t, coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            mono = "" if i == 0 else ("Dx" if i == 1 else f"Dx^{i}")
            parts.append(f"[{c}]" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    __repr__ = __str__


def divide_dx(A, B):
    """(Q, R) with A = Q*B + R and deg_dx R < deg_dx B."""
    A, B = A._common(B)
    if B.is_zero():
        raise DivisionByZero("division by zero in R")
    q = DxPoly(A.tower, [])
    r = A
    binv = B.lc().inverse()
    while not r.is_zero() and r.degree >= B.degree:
        c = r.lc() * binv
        term = DxPoly(A.tower, [A._zero()] * (r.degree - B.degree) + [c])
        q = q + term
        nr = r - term * B
        if not nr.is_zero() and nr.degree >= r.degree:
            raise AssertionError("division step failed to lower the degree")
        r = nr
    return q, r
