"""Fractions p b^{-1}, principal generators of left ideals in R, and symbol gcds."""

from dataclasses import dataclass, field

from ..errors import PreconditionError, VerificationError
from ..dfield.tower import join
from ..dfield.upoly import UPoly
from ..lpdo.operator import LPDO
from ..lpdo.symbol import SymbolPoly
from .dxpoly import DxPoly
from .skewfield import SkewFrac, dy_poly
from .swap import _dy_lpdo, ore_swap, ore_swap_right


class OreFraction:
    """The right fraction p b^{-1} with p an LPDO and b in F[d_y]."""

    def __init__(self, p, b=None):
        t = p.tower if b is None else join(p.tower, b.tower)
        self.p = p.in_tower(t)
        self.b = dy_poly(t, [1]) if b is None else dy_poly(t, [t.coerce(c) for c in b.coeffs])
        if self.b.is_zero():
            raise PreconditionError("zero denominator")
        self._left = None

    @property
    def tower(self):
        return self.p.tower

    def left_form(self):
        """(bbar, pbar) with p b^{-1} = bbar^{-1} pbar."""
        if self._left is None:
            self._left = ore_swap(self.p, self.b)
        return self._left

    def _b(self):
        return _dy_lpdo(self.tower, self.b.coeffs)

    def _common(self, other):
        if isinstance(other, LPDO):
            other = OreFraction(other)
        t = join(self.tower, other.tower)
        return OreFraction(self.p.in_tower(t), self.b), OreFraction(other.p.in_tower(t), other.b)

    def __add__(self, other):
        a, c = self._common(other)
        # common right multiple: b_a u = b_c v
        u, v = a.b.right_lcm_cofactors(c.b)
        U, V = _dy_lpdo(a.tower, u.coeffs), _dy_lpdo(a.tower, v.coeffs)
        return OreFraction(a.p * U + c.p * V, a.b * u)

    def __neg__(self):
        return OreFraction(-self.p, self.b)

    def __sub__(self, other):
        a, c = self._common(other)
        return a + (-c)

    def __mul__(self, other):
        a, c = self._common(other)
        # b_a^{-1} p_c = p' b'^{-1}
        p2, b2 = ore_swap_right(a.b, c.p)
        return OreFraction(a.p * p2, c.b * b2)

    def __eq__(self, other):
        a, c = self._common(other)
        u, v = a.b.right_lcm_cofactors(c.b)
        U, V = _dy_lpdo(a.tower, u.coeffs), _dy_lpdo(a.tower, v.coeffs)
        return a.p * U == c.p * V

    def is_polynomial(self):
        return self.b.degree == 0

    def to_dxpoly(self):
        return DxPoly.from_lpdo(self.p) * DxPoly(self.tower, [SkewFrac(self.b.new([1]), self.b)])

    def to_json(self):
        return {"num": str(self.p), "den": str(self._b()), "side": "right"}

    def __str__(self):
        return f"({self.p})*({self._b()})^-1" if self.b.degree else str(self.p)


def frac_arith(A, B, which):
    if which == "add":
        return A + B
    if which == "mul":
        return A * B
    raise ValueError(f"unknown operation {which}")


@dataclass
class GcdResult:
    """p generates the left ideal; witnesses: bbar0_i * g_i = pbar0_i * p and b * p = sum c_j g_j."""

    p: LPDO
    divisibility: list = field(default_factory=list)
    combination: tuple = None

    def verify(self, generators):
        t = self.p.tower
        for g, (b0, pb0) in zip(generators, self.divisibility):
            if _dy_lpdo(t, b0.coeffs) * g.in_tower(t) != pb0 * self.p:
                return False
        if self.combination is None:
            return True
        b, cs = self.combination
        total = LPDO(t)
        for c, g in zip(cs, generators):
            total = total + c * g.in_tower(t)
        return _dy_lpdo(t, b.coeffs) * self.p == total


def _lc_dx(r):
    """Top d_x coefficient of an LPDO as an element of F[d_y]."""
    n = r.order_dx()
    m = max((j for (i, j) in r.coeffs if i == n), default=0)
    return dy_poly(r.tower, [r.coefficient(n, j) for j in range(m + 1)])


def pseudo_reduce(r, a):
    """(U, Q, R) with U r = Q a + R, U in F[d_y] nonzero, deg_dx R < deg_dx a.

    Fraction-free: each step left-multiplies by an element of F[d_y], a unit of R.
    """
    t = r.tower
    U = dy_poly(t, [1])
    Q = LPDO(t)
    alpha = _lc_dx(a)
    m = a.order_dx()
    while not r.is_zero() and r.order_dx() >= m:
        k = r.order_dx() - m
        rho = _lc_dx(r)
        u, v = rho.left_lcm_cofactors(alpha)
        Uu, V = _dy_lpdo(t, u.coeffs), _dy_lpdo(t, v.coeffs) * LPDO.monomial(t, k, 0)
        nr = Uu * r - V * a
        if not nr.is_zero() and nr.order_dx() > r.order_dx():
            raise AssertionError("pseudo-division step raised the degree")
        if not nr.is_zero() and nr.order_dx() == r.order_dx() and k == 0 and nr.order_dx() >= m:
            # same d_x-degree with k = 0 cannot happen once leading terms cancel
            if _lc_dx(nr) == rho:
                raise AssertionError("pseudo-division does not progress")
        r = nr
        U = u * U
        Q = Uu * Q + V
    return U, Q, r


def _dx_rows(r):
    """Coefficients e_i in F[d_y] with r = sum e_i d_x^i."""
    t = r.tower
    out = []
    for i in range(r.order_dx() + 1):
        m = max((j for (a, j) in r.coeffs if a == i), default=-1)
        out.append(dy_poly(t, [r.coefficient(i, j) for j in range(m + 1)]))
    return out


def left_content(r):
    """(g, r') with r = g r', g in F[d_y] monic, r' with top coefficient monic in d_y up to g."""
    es = _dx_rows(r)
    g = None
    for e in es:
        if not e.is_zero():
            g = e if g is None else g.left_gcd(e)
    t = r.tower
    g = g.monic()
    coeffs = {}
    for i, e in enumerate(es):
        if e.is_zero():
            continue
        q, rem = e.left_div(g)
        if not rem.is_zero():
            raise AssertionError("left content does not divide a coefficient")
        for j, c in enumerate(q.coeffs):
            if not c.is_zero():
                coeffs[(i, j)] = c
    rp = LPDO(t, coeffs)
    s = _lc_dx(rp).lc()
    # r = g rp = (g s) (s^{-1} rp)
    return g * g.new([s]), rp.left_scale(s.inverse())


def left_gcd(generators, bezout=True):
    """Generator p of the left ideal sum R g_i, with verified witnesses.

    Euclid's algorithm in d_x with fraction-free pseudo-division; each
    remainder is made primitive by removing its left content in F[d_y].
    With bezout set, the combination of the generators is tracked in R and
    cleared at the end; its coefficients can grow large, so it may be skipped.
    """
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        raise PreconditionError("all generators are zero")
    t = gens[0].tower
    for g in gens[1:]:
        t = join(t, g.tower)
    gens = [g.in_tower(t) for g in generators]
    one, zero = DxPoly.one(t), DxPoly(t, [])
    rows = []
    for i, g in enumerate(gens):
        if g.is_zero():
            continue
        c, gp = left_content(g)
        if bezout:
            inv = DxPoly(t, [SkewFrac(c.new([1]), c)])
            rows.append((gp, [inv if i == j else zero for j in range(len(gens))]))
        else:
            rows.append((gp, None))
    while len(rows) > 1:
        rows.sort(key=lambda r: (r[0].order_dx(), r[0].order))
        (a, ca), rest = rows[0], rows[1:]
        new = [(a, ca)]
        for r, cr in rest:
            U, Q, rem = pseudo_reduce(r, a)
            if rem.is_zero():
                continue
            c, rp = left_content(rem)
            if not bezout:
                new.append((rp, None))
                continue
            Ud = DxPoly(t, [SkewFrac(U)])
            Qd = DxPoly.from_lpdo(Q)
            cinv = DxPoly(t, [SkewFrac(c.new([1]), c)])
            new.append((rp, [cinv * (Ud * x - Qd * y) for x, y in zip(cr, ca)]))
        rows = new
    p, combo = rows[0]
    combination = None
    if bezout:
        bcomb = _common_denominator(combo)
        Bc = DxPoly(t, [SkewFrac(bcomb)])
        cs = [(Bc * c).to_lpdo() if not c.is_zero() else LPDO(t) for c in combo]
        combination = (bcomb, cs)
    divis = []
    for g in gens:
        U, Q, rem = pseudo_reduce(g, p)
        if not rem.is_zero():
            raise VerificationError("a generator is not a left multiple of the gcd")
        divis.append((U, Q))
    res = GcdResult(p, divis, combination)
    if not res.verify(gens):
        raise VerificationError("gcd witnesses do not re-multiply")
    return res


def _common_denominator(polys):
    """Monic b in F[d_y] with b * P polynomial for every P."""
    t = polys[0].tower
    b = dy_poly(t, [1])
    for P in polys:
        if P.is_zero():
            continue
        d = P.denominator()
        if d.degree == 0:
            continue
        if b.degree == 0:
            b = d
        else:
            u, _ = b.left_lcm_cofactors(d)
            b = (u * b).monic()
    return b


def is_associate(p, q):
    """p and q generate the same left ideal of R."""
    t = join(p.tower, q.tower)
    p, q = p.in_tower(t), q.in_tower(t)
    return pseudo_reduce(p, q)[2].is_zero() and pseudo_reduce(q, p)[2].is_zero()


def symbol_gcd(generators):
    """(g, e): the gcd of the symbols as forms in xi, eta, and e = deg g."""
    syms = [g.symbol() for g in generators if not g.is_zero()]
    if not syms:
        raise PreconditionError("all generators are zero")
    t = syms[0].tower
    for s in syms[1:]:
        t = join(t, s.tower)
    eta = min(s.eta_multiplicity() for s in syms)
    g = None
    for s in syms:
        d = s.dehomogenize()
        d = UPoly(t, [t.coerce(c) for c in d.coeffs])
        g = d if g is None else g.gcd(d)
    g = g.monic()
    deg = g.degree + eta
    coeffs = {j: c for j, c in enumerate(g.coeffs)}
    return SymbolPoly(t, deg, coeffs), deg
