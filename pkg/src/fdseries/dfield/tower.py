"""Differential field towers over Q(x, y).

Every tower built from one base shares a growing polynomial ring (the
"universe") whose variables are x, y and all extension generators.  An
element is a reduced fraction num/den of polynomials in that ring, where

* den is free of algebraic generators and has leading coefficient 1,
* num is reduced modulo the triangular set of algebraic minimal polynomials,
* gcd(num, den) = 1.

This form is unique, so equality is structural.
"""

import itertools
from fractions import Fraction

import flint

from ..errors import (DivisionByZero, IntegrabilityError, PoleError, PreconditionError,
                      ReducibleMinimalPolynomial, TowerMismatchError)

_uid = itertools.count()


def fmpq(v):
    if isinstance(v, flint.fmpq):
        return v
    if isinstance(v, Fraction):
        return flint.fmpq(v.numerator, v.denominator)
    if isinstance(v, int):
        return flint.fmpq(v)
    raise TypeError(f"not a rational: {v!r}")


def to_fraction(q):
    return Fraction(int(q.p), int(q.q))


def jet_name(base, i, k):
    return f"{base}_{i}_{k}"


def split_jet_name(name):
    parts = name.rsplit("_", 2)
    if len(parts) != 3 or not parts[1].isdigit() or not parts[2].isdigit():
        return None
    return parts[0], int(parts[1]), int(parts[2])


class _Universe:
    def __init__(self):
        self.ctx = flint.fmpq_mpoly_ctx.get(("x", "y"), "lex")
        self.owner = {"x": None, "y": None}
        self.families = {}
        self.algebraic = []
        self.deriv_cache = {}

    def add_names(self, names):
        fresh = [n for n in names if n not in self.owner]
        if fresh:
            self.ctx = self.ctx.append_gens(*fresh)
        return fresh

    def lift(self, p):
        if p.context() is self.ctx:
            return p
        return p.project_to_context(self.ctx)

    def index(self, name):
        return self.ctx.variable_to_index(name)

    def gen(self, name):
        return self.ctx.gen(self.index(name))

    def used_names(self, p):
        names = self.ctx.names()
        return [names[i] for i, d in enumerate(p.degrees()) if d > 0]

    def split(self, p, idxs):
        """Group the terms of p by their exponents at positions idxs."""
        groups = {}
        for exps, c in p.to_dict().items():
            key = tuple(exps[i] for i in idxs)
            e = list(exps)
            for i in idxs:
                e[i] = 0
            groups.setdefault(key, {})[tuple(e)] = c
        return {k: self.ctx.from_dict(v) for k, v in groups.items()}

    def reduce(self, num, den):
        """Reduce num modulo the algebraic relations, scaling den."""
        degs = num.degrees()
        for rec in reversed(self.algebraic):
            i = self.index(rec.name)
            if i >= len(degs) or degs[i] < rec.degree:
                continue
            lead, tail = rec.lifted(self)
            coeffs = self.split(num, [i])
            coeffs = {k[0]: v for k, v in coeffs.items()}
            top = max(coeffs)
            mult = 0
            while top >= rec.degree:
                c = coeffs.pop(top)
                for e in coeffs:
                    coeffs[e] = coeffs[e] * lead
                shift = top - rec.degree
                for e, g in tail.items():
                    cur = coeffs.get(e + shift)
                    term = c * g
                    coeffs[e + shift] = -term if cur is None else cur - term
                mult += 1
                coeffs = {e: v for e, v in coeffs.items() if not v.is_zero()}
                if not coeffs:
                    return num.context().from_dict({}), den
                top = max(coeffs)
            z = self.ctx.gen(i)
            num = sum((v * z ** e for e, v in coeffs.items()), self.ctx.from_dict({}))
            den = den * lead ** mult
            degs = num.degrees()
        return num, den


class _Algebraic:
    kind = "algebraic"

    def __init__(self, name, coeffs):
        self.name = name
        self.coeffs = coeffs
        self.degree = len(coeffs) - 1
        self.tower = None
        self._lifted_ctx = None

    def setup(self, universe):
        lead = None
        for c in self.coeffs:
            d = universe.lift(c.den)
            lead = d if lead is None else lead * (d / lead.gcd(d))
        self.lead = lead
        self.tail = {}
        for e, c in enumerate(self.coeffs[:-1]):
            if not c.is_zero():
                self.tail[e] = universe.lift(c.num) * (lead / universe.lift(c.den))

    def lifted(self, universe):
        if self._lifted_ctx is not universe.ctx:
            self._lifted_ctx = universe.ctx
            self._lead = universe.lift(self.lead)
            self._tail = {e: universe.lift(g) for e, g in self.tail.items()}
        return self._lead, self._tail

    def derive(self, name, var):
        t = self.tower
        z = t.gen(self.name)
        gd = t.zero
        gp = t.zero
        for e, c in enumerate(self.coeffs):
            gd = gd + c.derive(var) * z ** e
            if e:
                gp = gp + e * c * z ** (e - 1)
        return -gd / gp

    def declaration(self):
        z = self.name
        terms = []
        for e, c in reversed(list(enumerate(self.coeffs))):
            if c.is_zero():
                continue
            mono = "1" if e == 0 else (z if e == 1 else f"{z}^{e}")
            terms.append(f"({c})*{mono}")
        return f"adjoin {self.name} : " + " + ".join(terms)


class _Differential:
    kind = "differential"

    def __init__(self, name, dx, dy):
        self.name = name
        self.dx = dx
        self.dy = dy
        self.tower = None

    def derive(self, name, var):
        return self.tower.coerce(self.dx if var == "x" else self.dy)

    def declaration(self):
        return f"differential {self.name} : {self.dx} , {self.dy}"


class _Jets:
    """A differential indeterminate with jets u_{i,k} = d_x^i d_y^k u.

    With order r and orientation 'x' the jets with i >= r are eliminated by
    the relation d_x^r u = rho; orientation 'y' is the mirror image.  Without
    an order the indeterminate is free.
    """

    kind = "jets"

    def __init__(self, name, order=None, orient="x"):
        self.name = name
        self.order = order
        self.orient = orient
        self.rho = None
        self.tower = None
        self._rho_derivs = {}

    def is_free_jet(self, i, k):
        if self.order is None:
            return True
        return i < self.order if self.orient == "x" else k < self.order

    def jet(self, i, k):
        if not self.is_free_jet(i, k):
            if self.orient == "x":
                return self._rho_deriv(k, "y").derive_word("x" * (i - self.order))
            return self._rho_deriv(i, "x").derive_word("y" * (k - self.order))
        name = jet_name(self.name, i, k)
        u = self.tower.universe
        u.add_names([name])
        u.owner.setdefault(name, self)
        return DElement(self.tower, u.gen(name), u.ctx.from_dict({(0,) * u.ctx.nvars(): 1}), _raw=True)

    def _rho_deriv(self, k, var):
        if k not in self._rho_derivs:
            self._rho_derivs[k] = self.rho if k == 0 else self._rho_deriv(k - 1, var).derive(var)
        return self._rho_derivs[k]

    def derive(self, name, var):
        _, i, k = split_jet_name(name)
        if var == "x":
            return self.jet(i + 1, k)
        return self.jet(i, k + 1)

    def declaration(self):
        if self.order is None:
            return f"free {self.name}"
        return f"jet {self.name} {self.orient} {self.order} = {self.rho}"


class Tower:
    """An immutable differential field: Q(x, y) plus a chain of extensions."""

    def __init__(self, universe=None, parent=None, record=None):
        self.universe = universe if universe is not None else _Universe()
        self.parent = parent
        self.record = record
        self.uid = next(_uid)
        self._ancestors = (parent._ancestors if parent else frozenset()) | {self.uid}
        self.records = (parent.records if parent else ()) + ((record,) if record else ())
        if record is not None:
            record.tower = self

    # -- construction helpers -------------------------------------------
    def _poly(self, p):
        return self.universe.lift(p)

    def _one_poly(self):
        ctx = self.universe.ctx
        return ctx.from_dict({(0,) * ctx.nvars(): 1})

    def element(self, num, den=None):
        if den is None:
            den = self._one_poly()
        return DElement(self, num, den)

    def const(self, q):
        ctx = self.universe.ctx
        q = fmpq(q)
        return DElement(self, ctx.from_dict({(0,) * ctx.nvars(): q} if q != 0 else {}),
                        self._one_poly(), _raw=True)

    @property
    def zero(self):
        return self.const(0)

    @property
    def one(self):
        return self.const(1)

    @property
    def x(self):
        return self.gen("x")

    @property
    def y(self):
        return self.gen("y")

    def coerce(self, v):
        if isinstance(v, DElement):
            if v.tower is self:
                return v
            if v.tower.uid in self._ancestors:
                return DElement(self, v.num, v.den, _raw=True)
            raise TowerMismatchError("element does not belong to this tower")
        return self.const(v)

    def restrict(self, v):
        """Move an element from an extension of self back to self when its generators allow."""
        if v.tower is self or v.tower.uid in self._ancestors:
            return self.coerce(v)
        for n in v.free_names():
            if not self.has_name(n):
                raise TowerMismatchError(f"{n} does not belong to this tower")
        return DElement(self, v.num, v.den, _raw=True)

    def family(self, name):
        for rec in self.records:
            if rec.name == name:
                return rec
        return None

    def has_name(self, name):
        if name in ("x", "y"):
            return True
        if self.family(name) is not None:
            return True
        parts = split_jet_name(name)
        if parts is None:
            return False
        rec = self.family(parts[0])
        return rec is not None and rec.kind == "jets"

    def gen(self, name):
        if name in ("x", "y") or (self.family(name) is not None and self.family(name).kind != "jets"):
            return DElement(self, self.universe.gen(name), self._one_poly(), _raw=True)
        parts = split_jet_name(name)
        if parts is not None:
            rec = self.family(parts[0])
            if rec is not None and rec.kind == "jets":
                return self.coerce(rec.jet(parts[1], parts[2]))
        if self.family(name) is not None:
            return self.coerce(self.family(name).jet(0, 0))
        raise PreconditionError(f"unknown generator {name!r}")

    def jet(self, name, i=0, k=0):
        rec = self.family(name)
        if rec is None or rec.kind != "jets":
            raise PreconditionError(f"{name!r} is not a differential indeterminate")
        return self.coerce(rec.jet(i, k))

    def algebraic_records(self):
        return [r for r in self.records if r.kind == "algebraic"]

    def is_ancestor_of(self, other):
        return self.uid in other._ancestors

    def names(self):
        return ["x", "y"] + [r.name for r in self.records]

    def script(self):
        """Declarations that rebuild this tower when replayed."""
        return [r.declaration() for r in self.records]

    def __repr__(self):
        return f"Tower({', '.join(self.names())})"

    def _check_name(self, name):
        if not name.isalnum() or not name[0].isalpha():
            raise PreconditionError(f"generator names must be alphanumeric: {name!r}")
        if name in ("x", "y", "Dx", "Dy") or name in self.universe.owner or name in self.universe.families:
            raise PreconditionError(f"generator name {name!r} already in use")

    # -- extensions ------------------------------------------------------
    def adjoin_algebraic(self, name, coeffs):
        """Adjoin a root of the monic polynomial with coefficients `coeffs` (low to high)."""
        from .upoly import UPoly
        coeffs = [self.coerce(c) for c in coeffs]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        if len(coeffs) < 2:
            raise PreconditionError("minimal polynomial must have positive degree")
        if coeffs[-1] != 1:
            lc = coeffs[-1]
            coeffs = [c / lc for c in coeffs]
        if len(coeffs) == 2:
            return self, -coeffs[0]
        self._check_name(name)
        g = UPoly(self, coeffs)
        factors = g.factor()
        if len(factors) != 1 or factors[0][1] != 1:
            raise ReducibleMinimalPolynomial(
                f"minimal polynomial for {name} is reducible", [f for f, _ in factors])
        rec = _Algebraic(name, coeffs)
        self.universe.add_names([name])
        self.universe.owner[name] = rec
        rec.setup(self.universe)
        self.universe.algebraic.append(rec)
        t = Tower(self.universe, self, rec)
        return t, t.gen(name)

    def adjoin_differential(self, name, dx, dy):
        """Adjoin a transcendental w with d_x w = dx and d_y w = dy."""
        dx, dy = self.coerce(dx), self.coerce(dy)
        self._check_name(name)
        if dx.derive("y") != dy.derive("x"):
            raise IntegrabilityError(f"d_y({dx}) != d_x({dy})")
        rec = _Differential(name, dx, dy)
        self.universe.add_names([name])
        self.universe.owner[name] = rec
        t = Tower(self.universe, self, rec)
        return t, t.gen(name)

    def adjoin_jets(self, name, order=None, orient="x", rho=None):
        """Adjoin a differential indeterminate, optionally subject to d^order u = rho.

        `rho` is a callable receiving the new tower and returning the
        right-hand side, which may use the free jets of the new family.
        """
        self._check_name(name)
        if order is not None and order < 1:
            raise PreconditionError("relation order must be positive")
        rec = _Jets(name, order, orient)
        self.universe.families[name] = rec
        t = Tower(self.universe, self, rec)
        if order is not None:
            r = t.coerce(rho(t) if callable(rho) else t.coerce(rho))
            for n in r.free_names():
                parts = split_jet_name(n)
                if parts and parts[0] == name and not rec.is_free_jet(parts[1], parts[2]):
                    raise PreconditionError(f"relation for {name} refers to eliminated jet {n}")
            rec.rho = r
        return t, t.jet(name)


def base_tower():
    """A fresh Q(x, y)."""
    return Tower()


def join(a, b):
    if a is b or a.uid in b._ancestors:
        return b
    if b.uid in a._ancestors:
        return a
    raise TowerMismatchError("elements live in unrelated towers")


class DElement:
    __slots__ = ("tower", "num", "den")

    def __init__(self, tower, num, den, _raw=False):
        self.tower = tower
        if _raw:
            self.num, self.den = num, den
            return
        u = tower.universe
        num, den = u.lift(num), u.lift(den)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            self.num, self.den = num, tower._one_poly()
            return
        num, den = u.reduce(num, den)
        if num.is_zero():
            self.num, self.den = num, tower._one_poly()
            return
        if not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num, den = num / g, den / g
            lc = den.leading_coefficient()
            if lc != 1:
                num, den = num / lc, den / lc
        self.num, self.den = num, den

    # -- coercion ----------------------------------------------------------
    def _other(self, other):
        if isinstance(other, DElement):
            if other.tower is self.tower:
                return self.tower, self, other
            t = join(self.tower, other.tower)
            return t, t.coerce(self), t.coerce(other)
        if isinstance(other, (int, Fraction, flint.fmpq)):
            return self.tower, self, self.tower.const(other)
        return None

    def _lifted(self):
        # lifting does not change the value, so keep the lifted form
        ctx = self.tower.universe.ctx
        if self.num.context() is not ctx:
            self.num = self.num.project_to_context(ctx)
        if self.den.context() is not ctx:
            self.den = self.den.project_to_context(ctx)
        return self.num, self.den

    def _pair(self, other):
        return self._lifted() + other._lifted()

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        r = self._other(other)
        if r is None:
            return NotImplemented
        t, a, b = r
        if b.num.is_zero():
            return a
        if a.num.is_zero():
            return b
        an, ad, bn, bd = a._pair(b)
        if ad == bd:
            return DElement(t, an + bn, ad)
        return DElement(t, an * bd + bn * ad, ad * bd)

    __radd__ = __add__

    def __neg__(self):
        return DElement(self.tower, -self.num, self.den, _raw=True)

    def __sub__(self, other):
        r = self._other(other)
        if r is None:
            return NotImplemented
        return r[1] + (-r[2])

    def __rsub__(self, other):
        r = self._other(other)
        if r is None:
            return NotImplemented
        return r[2] + (-r[1])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, flint.fmpq)):
            if other == 0:
                return self.tower.zero
            q = fmpq(other)
            return DElement(self.tower, self.num * q, self.den, _raw=True)
        r = self._other(other)
        if r is None:
            return NotImplemented
        t, a, b = r
        if a.num.is_zero() or b.num.is_zero():
            return t.zero
        an, ad, bn, bd = a._pair(b)
        return DElement(t, an * bn, ad * bd)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise DivisionByZero("division by zero in the tower")
        u = self.tower.universe
        num = u.lift(self.num)
        if not any(num.degrees()[u.index(r.name)] for r in self.tower.algebraic_records()):
            return DElement(self.tower, u.lift(self.den), num)
        return DElement(self.tower, u.lift(self.den), self.tower._one_poly()) * _algebraic_inverse(self.tower, num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, flint.fmpq)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return DElement(self.tower, self.num / fmpq(other), self.den, _raw=True)
        r = self._other(other)
        if r is None:
            return NotImplemented
        return r[1] * r[2].inverse()

    def __rtruediv__(self, other):
        r = self._other(other)
        if r is None:
            return NotImplemented
        return r[2] * r[1].inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.tower.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction, flint.fmpq)):
            other = self.tower.const(other)
        if not isinstance(other, DElement):
            return NotImplemented
        if other.tower.universe is not self.tower.universe:
            return False
        an, ad, bn, bd = self._pair(other)
        return an == bn and ad == bd

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_rational(self):
        return self.den.is_one() and self.num.is_constant()

    def as_fraction(self):
        if self.num.is_zero():
            return Fraction(0)
        if not self.is_rational():
            raise PreconditionError(f"{self} is not a rational constant")
        return to_fraction(self.num.leading_coefficient())

    def free_names(self):
        u = self.tower.universe
        return sorted(set(u.used_names(u.lift(self.num))) | set(u.used_names(u.lift(self.den))))

    def is_algebraic_free(self):
        names = set(self.free_names())
        return not any(r.name in names for r in self.tower.algebraic_records())

    # -- derivations -------------------------------------------------------
    def derive(self, var):
        if var not in ("x", "y"):
            raise PreconditionError(f"unknown derivation {var!r}")
        if self.num.is_constant() and self.den.is_one():
            return self.tower.zero
        u = self.tower.universe
        t = self.tower
        num, den = u.lift(self.num), u.lift(self.den)
        dn = _derive_poly(t, num, var)
        if den.is_one():
            return dn
        dd = _derive_poly(t, den, var)
        n = DElement(t, num, t._one_poly(), _raw=True)
        d = DElement(t, den, t._one_poly(), _raw=True)
        return (dn * d - n * dd) / (d * d)

    def derive_word(self, word):
        r = self
        for v in word:
            r = r.derive(v)
        return r

    def dx(self):
        return self.derive("x")

    def dy(self):
        return self.derive("y")

    # -- output ------------------------------------------------------------
    def __str__(self):
        n = str(self.num) if not self.num.is_zero() else "0"
        if self.den.is_one():
            return n
        if len(self.num) > 1:
            n = f"({n})"
        d = str(self.den)
        if len(self.den) > 1 or "*" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"DElement({self})"

    def needs_parens(self):
        return len(self.num) > 1 or (not self.den.is_one()) or str(self.num).startswith("-")

    def coefficients_in(self, names):
        """Write self as a polynomial in the given generators: {exponent tuple: coefficient}.

        The denominator must not involve those generators.
        """
        u = self.tower.universe
        known = [n for n in names if n in u.owner or n in ("x", "y")]
        num, den = u.lift(self.num), u.lift(self.den)
        idxs = [u.index(n) for n in known]
        degs = den.degrees()
        if any(degs[i] for i in idxs):
            raise PreconditionError("denominator depends on the extraction variables")
        parts = u.split(num, idxs) if idxs else {(): num}
        out = {}
        for key, p in parts.items():
            full = []
            it = iter(key)
            for n in names:
                full.append(int(next(it)) if n in known else 0)
            out[tuple(full)] = DElement(self.tower, p, den)
        return out

    def evaluate(self, point):
        """Substitute rationals for generators given as {name: value}."""
        u = self.tower.universe
        vals = {n: fmpq(v) for n, v in point.items()}
        num = u.lift(self.num).subs(vals)
        den = u.lift(self.den).subs(vals)
        if den.is_zero():
            raise PoleError(f"{self} has a pole at {point}")
        return DElement(self.tower, num, den)


def _derive_poly(tower, p, var):
    u = tower.universe
    t = tower
    result = None
    names = u.used_names(p)
    dvs = [(name, u_deriv(t, name, var)) for name in names]
    p = u.lift(p)
    plain = u.ctx.from_dict({})
    for name, dv in dvs:
        if dv.is_zero():
            continue
        part = p.derivative(u.index(name))
        if dv.den.is_one():
            plain = plain + part * u.lift(dv.num)
        else:
            term = DElement(t, part, t._one_poly()) * dv
            result = term if result is None else result + term
    main = DElement(t, plain, t._one_poly())
    return main if result is None else main + result


def u_deriv(tower, name, var):
    """Derivative of a single generator, cached in the universe."""
    if name in ("x", "y"):
        return tower.one if name == var else tower.zero
    u = tower.universe
    key = (name, var)
    d = u.deriv_cache.get(key)
    if d is None:
        rec = u.owner.get(name)
        if rec is None:
            raise PreconditionError(f"unknown generator {name!r}")
        d = rec.derive(name, var)
        u.deriv_cache[key] = d
    return d


def _algebraic_inverse(tower, num):
    """1/num for a polynomial num involving algebraic generators."""
    from .linalg import solve
    u = tower.universe
    recs = tower.algebraic_records()
    idxs = [u.index(r.name) for r in recs]
    basis = list(itertools.product(*[range(r.degree) for r in recs]))
    one = tower._one_poly()
    gens = [u.ctx.gen(i) for i in idxs]

    def mono(e):
        m = one
        for g, k in zip(gens, e):
            m = m * g ** k
        return m

    cols = []
    for b in basis:
        p, d = u.reduce(num * mono(b), one)
        parts = u.split(p, idxs)
        cols.append([DElement(tower, parts[e], d) if e in parts else tower.zero for e in basis])
    rows = [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]
    rhs = [tower.one if i == 0 else tower.zero for i in range(len(basis))]
    sol = solve(rows, rhs)
    if sol is None:
        raise DivisionByZero("element is zero in the tower")
    result = tower.zero
    for c, b in zip(sol, basis):
        if not c.is_zero():
            result = result + c * DElement(tower, mono(b), one, _raw=True)
    return result
