"""Linear partial differential operators sum c_ij d_x^i d_y^j over a tower."""

from math import comb

from ..errors import PreconditionError
from ..dfield.tower import DElement, join


def _derivatives(c, a, b, cache):
    key = (a, b)
    if key not in cache:
        if a > 0:
            cache[key] = _derivatives(c, a - 1, b, cache).derive("x")
        elif b > 0:
            cache[key] = _derivatives(c, 0, b - 1, cache).derive("y")
        else:
            cache[key] = c
    return cache[key]


class LPDO:
    __slots__ = ("tower", "coeffs")

    def __init__(self, tower, coeffs=None):
        self.tower = tower
        self.coeffs = {}
        for k, c in (coeffs or {}).items():
            c = tower.coerce(c)
            if not c.is_zero():
                self.coeffs[(int(k[0]), int(k[1]))] = c

    # -- constructors ----------------------------------------------------
    @classmethod
    def scalar(cls, tower, c):
        return cls(tower, {(0, 0): c})

    @classmethod
    def monomial(cls, tower, i, j, c=1):
        return cls(tower, {(i, j): c})

    @classmethod
    def dx(cls, tower):
        return cls.monomial(tower, 1, 0)

    @classmethod
    def dy(cls, tower):
        return cls.monomial(tower, 0, 1)

    def in_tower(self, tower):
        return LPDO(tower, {k: tower.coerce(c) for k, c in self.coeffs.items()})

    # -- queries -----------------------------------------------------------
    @property
    def order(self):
        return max((i + j for i, j in self.coeffs), default=-1)

    def order_dx(self):
        return max((i for i, _ in self.coeffs), default=-1)

    def order_dy(self):
        return max((j for _, j in self.coeffs), default=-1)

    def is_zero(self):
        return not self.coeffs

    def coefficient(self, i, j):
        return self.coeffs.get((i, j), self.tower.zero)

    def is_scalar(self):
        return all(k == (0, 0) for k in self.coeffs)

    def scalar_value(self):
        if not self.is_scalar():
            raise PreconditionError("operator is not a scalar")
        return self.coefficient(0, 0)

    def graded_part(self, p):
        if p < 0 or p > max(self.order, 0):
            raise PreconditionError(f"graded part {p} out of range 0..{self.order}")
        return LPDO(self.tower, {k: c for k, c in self.coeffs.items() if k[0] + k[1] == p})

    def symbol(self):
        from .symbol import SymbolPoly
        n = self.order
        return SymbolPoly(self.tower, n, {i: c for (i, j), c in self.coeffs.items() if i + j == n})

    def is_in_dy(self):
        return all(i == 0 for i, _ in self.coeffs)

    # -- arithmetic ----------------------------------------------------------
    def _other(self, other):
        if isinstance(other, LPDO):
            if other.tower is self.tower:
                return self.tower, self, other
            t = join(self.tower, other.tower)
            return t, self.in_tower(t), other.in_tower(t)
        if isinstance(other, DElement):
            t = join(self.tower, other.tower)
            return t, self.in_tower(t), LPDO.scalar(t, other)
        return self.tower, self, LPDO.scalar(self.tower, other)

    def __add__(self, other):
        t, a, b = self._other(other)
        out = dict(a.coeffs)
        for k, c in b.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return LPDO(t, out)

    __radd__ = __add__

    def __neg__(self):
        return LPDO(self.tower, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        t, a, b = self._other(other)
        return a + (-b)

    def __rsub__(self, other):
        t, a, b = self._other(other)
        return b + (-a)

    def __mul__(self, other):
        t, a, b = self._other(other)
        if b.is_scalar() and b.coeffs and b.coefficient(0, 0).is_rational():
            q = b.coefficient(0, 0)
            return LPDO(t, {k: c * q for k, c in a.coeffs.items()})
        out = {}
        for (k, l), qc in b.coeffs.items():
            cache = {}
            for (i, j), pc in a.coeffs.items():
                for s in range(i + 1):
                    for r in range(j + 1):
                        d = _derivatives(qc, s, r, cache)
                        if d.is_zero():
                            continue
                        key = (i - s + k, j - r + l)
                        term = pc * d * (comb(i, s) * comb(j, r))
                        out[key] = out[key] + term if key in out else term
        return LPDO(t, out)

    def __rmul__(self, other):
        t, a, b = self._other(other)
        return b * a

    def __pow__(self, n):
        r = LPDO.scalar(self.tower, 1)
        for _ in range(n):
            r = r * self
        return r

    def __eq__(self, other):
        if not isinstance(other, LPDO):
            other = LPDO.scalar(self.tower, other)
        if set(self.coeffs) != set(other.coeffs):
            return False
        return all(self.coeffs[k] == other.coeffs[k] for k in self.coeffs)

    def __hash__(self):
        return hash(tuple(sorted((k, hash(c)) for k, c in self.coeffs.items())))

    def left_scale(self, c):
        """c * T, multiplying every coefficient by the function c."""
        t = join(self.tower, c.tower) if isinstance(c, DElement) else self.tower
        return LPDO(t, {k: v * c for k, v in self.coeffs.items()})

    # -- action --------------------------------------------------------------
    def apply(self, f):
        cache = {}
        out = None
        for (i, j), c in self.coeffs.items():
            term = c * _derivatives(f, i, j, cache)
            out = term if out is None else out + term
        if out is None:
            return f * 0
        return out

    def adjoint(self):
        out = LPDO(self.tower)
        for (i, j), c in self.coeffs.items():
            mono = LPDO.monomial(self.tower, i, j, (-1) ** (i + j))
            out = out + mono * LPDO.scalar(self.tower, c)
        return out

    # -- output --------------------------------------------------------------
    def terms(self):
        """Terms in the printing order: by descending total order, then d_x degree."""
        return sorted(self.coeffs.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j), c in self.terms():
            mono = []
            if i:
                mono.append("Dx" if i == 1 else f"Dx^{i}")
            if j:
                mono.append("Dy" if j == 1 else f"Dy^{j}")
            cs = str(c)
            neg = False
            if cs.startswith("-") and len(c.num) == 1:
                neg, cs = True, str(-c)
            if not mono:
                body = cs
            elif cs == "1":
                body = "*".join(mono)
            else:
                if len(c.num) > 1 or not c.den.is_one():
                    cs = f"({cs})"
                body = "*".join([cs] + mono)
            parts.append(("-" if neg else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"LPDO({self})"


def divide_by_first_order(T, L):
    """T = S * L + r with r free of d_x.  L must have order 1 and a nonzero d_x coefficient."""
    t = join(T.tower, L.tower)
    T, L = T.in_tower(t), L.in_tower(t)
    if L.order != 1 or L.coefficient(1, 0).is_zero():
        raise PreconditionError("divisor must be first order with nonzero d_x coefficient")
    c = L.coefficient(1, 0)
    Lm = L.left_scale(c.inverse())
    S = LPDO(t)
    R = T
    while R.order_dx() >= 1:
        m = R.order_dx()
        for (i, j), rc in list(R.coeffs.items()):
            if i != m:
                continue
            q = LPDO.monomial(t, i - 1, j, rc)
            S = S + q
            R = R - q * Lm
    S = S * LPDO.scalar(t, c.inverse())
    return S, R


def change_coordinates(T, matrix):
    """Rewrite T in coordinates (X, Y) = A (x, y) for an invertible rational 2x2 matrix A.

    Only operators over the base field are supported; the result again uses
    the names x, y for the new coordinates.
    """
    from fractions import Fraction
    from ..dfield.tower import fmpq
    (a11, a12), (a21, a22) = [[Fraction(v) for v in row] for row in matrix]
    det = a11 * a22 - a12 * a21
    if det == 0:
        raise PreconditionError("coordinate change must be invertible")
    t = T.tower
    if t.records:
        raise PreconditionError("coordinate changes are only supported over Q(x, y)")
    u = t.universe
    ctx = u.ctx
    X, Y = ctx.gen(0), ctx.gen(1)
    inv = ((a22 / det, -a12 / det), (-a21 / det, a11 / det))
    xs = X * fmpq(inv[0][0]) + Y * fmpq(inv[0][1])
    ys = X * fmpq(inv[1][0]) + Y * fmpq(inv[1][1])
    images = [xs, ys] + [ctx.gen(i) for i in range(2, ctx.nvars())]
    dX = LPDO(t, {(1, 0): a11, (0, 1): a21})
    dY = LPDO(t, {(1, 0): a12, (0, 1): a22})
    out = LPDO(t)
    for (i, j), c in T.coeffs.items():
        num = u.lift(c.num).compose(*images, ctx=ctx)
        den = u.lift(c.den).compose(*images, ctx=ctx)
        out = out + LPDO.scalar(t, t.element(num, den)) * (dX ** i) * (dY ** j)
    return out
