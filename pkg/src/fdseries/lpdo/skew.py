"""The skew polynomial ring F[E] for a first-order operator E = e_x d_x + e_y d_y."""

from math import comb

from ..errors import DivisionByZero, PreconditionError
from ..dfield.tower import join
from .operator import LPDO


class SkewPoly:
    """sum c_i E^i, multiplied with the rule E * c = c * E + E(c)."""

    __slots__ = ("tower", "E", "coeffs")

    def __init__(self, tower, E, coeffs):
        self.tower = tower
        self.E = (tower.coerce(E[0]), tower.coerce(E[1]))
        cs = [tower.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = cs

    @classmethod
    def along(cls, tower, a):
        """The ring for E = d_x + a d_y."""
        return cls(tower, (1, a), [])

    @classmethod
    def dy_ring(cls, tower):
        return cls(tower, (0, 1), [])

    def new(self, coeffs):
        return SkewPoly(self.tower, self.E, coeffs)

    def gen(self):
        return self.new([0, 1])

    def const(self, c):
        return self.new([c])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1]

    def act(self, c):
        """E(c)."""
        ex, ey = self.E
        r = self.tower.zero
        if not ex.is_zero():
            r = r + ex * c.derive("x")
        if not ey.is_zero():
            r = r + ey * c.derive("y")
        return r

    def _check(self, other):
        if not isinstance(other, SkewPoly):
            return self.new([other])
        if other.E[0] != self.E[0] or other.E[1] != self.E[1]:
            raise PreconditionError("skew polynomials over different derivations")
        return other

    def __add__(self, other):
        other = self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.tower.zero
        a = self.coeffs + [z] * (n - len(self.coeffs))
        b = other.coeffs + [z] * (n - len(other.coeffs))
        return self.new([p + q for p, q in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return self.new([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def _e_power_times(self, i, c):
        """E^i * c as a coefficient list."""
        out = [self.tower.zero] * (i + 1)
        d = c
        for k in range(i + 1):
            if d.is_zero():
                break
            out[i - k] = out[i - k] + d * comb(i, k)
            d = self.act(d)
        return out

    def __mul__(self, other):
        other = self._check(other)
        if self.is_zero() or other.is_zero():
            return self.new([])
        out = [self.tower.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero():
                    continue
                for k, c in enumerate(self._e_power_times(i, b)):
                    if not c.is_zero():
                        out[k + j] = out[k + j] + a * c
        return self.new(out)

    def __rmul__(self, other):
        return self._check(other) * self

    def __eq__(self, other):
        other = self._check(other)
        return len(self.coeffs) == len(other.coeffs) and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def right_div(self, other):
        """(Q1, R) with self = Q1 * other + R and deg R < deg other."""
        other = self._check(other)
        if other.is_zero():
            raise DivisionByZero("skew division by zero")
        q = self.new([])
        r = self
        inv = other.lc().inverse()
        while r.degree >= other.degree:
            c = r.lc() * inv
            term = self.new([0] * (r.degree - other.degree) + [c])
            q = q + term
            r = r - term * other
        return q, r

    def left_div(self, other):
        """(Q1, R) with self = other * Q1 + R and deg R < deg other."""
        other = self._check(other)
        if other.is_zero():
            raise DivisionByZero("skew division by zero")
        q = self.new([])
        r = self
        inv = other.lc().inverse()
        while r.degree >= other.degree:
            c = inv * r.lc()
            term = self.new([0] * (r.degree - other.degree) + [c])
            q = q + term
            r = r - other * term
        return q, r

    def monic(self):
        if self.is_zero():
            return self
        inv = self.lc().inverse()
        return self.new([c * inv for c in self.coeffs])

    def right_gcd(self, other):
        """Monic generator of the left ideal F[E]self + F[E]other."""
        a, b = self, self._check(other)
        while not b.is_zero():
            a, b = b, a.right_div(b)[1]
        return a.monic()

    def left_gcd(self, other):
        """Monic generator of the right ideal self F[E] + other F[E]."""
        a, b = self, self._check(other)
        while not b.is_zero():
            a, b = b, a.left_div(b)[1]
        if a.is_zero():
            return a
        inv = a.lc().inverse()
        return a * self.const(inv)

    def left_lcm_cofactors(self, other):
        """(u, v), minimal and nonzero, with u * self = v * other."""
        other = self._check(other)
        # rows track r = s*self + t*other
        r0, s0, t0 = self, self.const(1), self.new([])
        r1, s1, t1 = other, self.new([]), self.const(1)
        while not r1.is_zero():
            q, r = r0.right_div(r1)
            r0, s0, t0, r1, s1, t1 = r1, s1, t1, r, s0 - q * s1, t0 - q * t1
        return s1, -t1

    def right_lcm_cofactors(self, other):
        """(u, v), minimal and nonzero, with self * u = other * v."""
        other = self._check(other)
        r0, s0, t0 = self, self.const(1), self.new([])
        r1, s1, t1 = other, self.new([]), self.const(1)
        while not r1.is_zero():
            q, r = r0.left_div(r1)
            r0, s0, t0, r1, s1, t1 = r1, s1, t1, r, s0 - s1 * q, t0 - t1 * q
        return s1, -t1

    def to_lpdo(self):
        t = self.tower
        E = LPDO(t, {(1, 0): self.E[0], (0, 1): self.E[1]})
        out = LPDO(t)
        power = LPDO.scalar(t, 1)
        for c in self.coeffs:
            out = out + LPDO.scalar(t, c) * power
            power = power * E
        return out

    def in_tower(self, tower):
        return SkewPoly(tower, self.E, self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if c.is_zero():
                continue
            mono = "" if i == 0 else ("E" if i == 1 else f"E^{i}")
            cs = str(c)
            if c.needs_parens():
                cs = f"({cs})"
            terms.append(cs if not mono else (mono if c == 1 else f"{cs}*{mono}"))
        return " + ".join(terms)

    def __repr__(self):
        return f"SkewPoly({self})"


def skew_from_lpdo(T, E):
    """Write T as a polynomial in E when T lies in F[E]; None otherwise."""
    t = join(T.tower, E[0].tower if hasattr(E[0], "tower") else T.tower)
    ring = SkewPoly(t, E, [])
    ex = ring.E[0]
    rem = T.in_tower(t)
    coeffs = [t.zero] * (rem.order + 1)
    while not rem.is_zero():
        n = rem.order
        top = rem.graded_part(n)
        if ex.is_zero():
            c = top.coefficient(0, n)
            if len(top.coeffs) != 1 or c.is_zero():
                return None
            c = c / ring.E[1] ** n
        else:
            c = top.coefficient(n, 0) / ex ** n
        coeffs[n] = c
        rem = rem - ring.new([0] * n + [c]).to_lpdo()
        if not rem.is_zero() and rem.order >= n:
            return None
    return ring.new(coeffs)
