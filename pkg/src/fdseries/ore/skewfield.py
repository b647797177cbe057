"""Left fractions b^{-1} a over the skew polynomial ring F[d_y]."""

from ..errors import DivisionByZero
from ..dfield.tower import join
from ..lpdo.skew import SkewPoly


def dy_poly(tower, coeffs):
    return SkewPoly(tower, (0, 1), coeffs)


def _lift(p, tower):
    return p if p.tower is tower else dy_poly(tower, [tower.coerce(c) for c in p.coeffs])


def delta(p):
    """Coefficientwise d_x on an element of F[d_y] (d_x commutes with d_y)."""
    return p.new([c.derive("x") for c in p.coeffs])


class SkewFrac:
    """b^{-1} a with a, b in F[d_y], b monic and no common left factor."""

    __slots__ = ("den", "num")

    def __init__(self, num, den=None, _normal=False):
        t = num.tower if den is None else join(num.tower, den.tower)
        num = _lift(num, t)
        den = dy_poly(t, [1]) if den is None else _lift(den, t)
        if den.is_zero():
            raise DivisionByZero("zero denominator in a skew fraction")
        if not _normal:
            num, den = _normalize(num, den)
        self.num, self.den = num, den

    @classmethod
    def scalar(cls, tower, c):
        return cls(dy_poly(tower, [tower.coerce(c)]))

    @property
    def tower(self):
        return self.num.tower

    def is_zero(self):
        return self.num.is_zero()

    def _common(self, other):
        if not isinstance(other, SkewFrac):
            other = SkewFrac.scalar(self.tower, other)
        t = join(self.tower, other.tower)
        a = self if self.tower is t else SkewFrac(_lift(self.num, t), _lift(self.den, t), True)
        b = other if other.tower is t else SkewFrac(_lift(other.num, t), _lift(other.den, t), True)
        return a, b

    def __add__(self, other):
        a, b = self._common(other)
        if a.den == b.den:
            return SkewFrac(a.num + b.num, a.den)
        u, v = a.den.left_lcm_cofactors(b.den)
        # u*den_a = v*den_b = m
        return SkewFrac(u * a.num + v * b.num, u * a.den)

    __radd__ = __add__

    def __neg__(self):
        return SkewFrac(-self.num, self.den, True)

    def __sub__(self, other):
        a, b = self._common(other)
        return a + (-b)

    def __rsub__(self, other):
        a, b = self._common(other)
        return b + (-a)

    def __mul__(self, other):
        a, b = self._common(other)
        if a.is_zero() or b.is_zero():
            return SkewFrac(a.num.new([]))
        if b.den.degree == 0:
            return SkewFrac(a.num * b.num, a.den)
        # a.num * b.den^{-1} = u^{-1} v with u * a.num = v * b.den
        u, v = a.num.left_lcm_cofactors(b.den)
        return SkewFrac(v * b.num, u * a.den)

    def __rmul__(self, other):
        a, b = self._common(other)
        return b * a

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero in the skew field")
        return SkewFrac(self.den, self.num)

    def __truediv__(self, other):
        a, b = self._common(other)
        return a * b.inverse()

    def derive_x(self):
        """delta(b^{-1} a) = b^{-1} delta(a) - b^{-1} delta(b) b^{-1} a."""
        binv = SkewFrac(self.den.new([1]), self.den, True)
        da = SkewFrac(delta(self.num))
        db = SkewFrac(delta(self.den))
        return binv * da - binv * db * self

    def __eq__(self, other):
        a, b = self._common(other)
        return a.num == b.num and a.den == b.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.degree == 0:
            return str(self.num)
        return f"({self.den})^-1*({self.num})"

    __repr__ = __str__


def _normalize(num, den):
    if num.is_zero():
        return num, den.new([1])
    g = den.left_gcd(num)
    if g.degree > 0:
        den = den.left_div(g)[0]
        num = num.left_div(g)[0]
    c = den.lc().inverse()
    return num.new([c * x for x in num.coeffs]), den.new([c * x for x in den.coeffs])
