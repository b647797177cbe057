"""Univariate polynomials over a tower, with square-free decomposition and factoring.

Factoring over a tower without algebraic generators is delegated to flint's
multivariate factorization after clearing denominators.  Over algebraic
extensions the norm method is used: shift until the norm (an iterated
resultant against the minimal polynomials) is square-free, factor the norm
over the transcendental part and recover the factors by gcds.
"""

import flint

_AUX = "uAUX"


class UPoly:
    __slots__ = ("tower", "coeffs")

    def __init__(self, tower, coeffs):
        cs = [tower.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.tower = tower
        self.coeffs = cs

    @classmethod
    def monomial(cls, tower, c, n):
        return cls(tower, [tower.zero] * n + [c])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1]

    def monic(self):
        if not self.coeffs:
            return self
        lc = self.lc()
        if lc == 1:
            return self
        inv = lc.inverse()
        return UPoly(self.tower, [c * inv for c in self.coeffs])

    def _binary(self, other):
        if not isinstance(other, UPoly):
            other = UPoly(self.tower, [other])
        return other

    def __add__(self, other):
        other = self._binary(other)
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.tower.zero
        a = self.coeffs + [z] * (n - len(self.coeffs))
        b = other.coeffs + [z] * (n - len(other.coeffs))
        return UPoly(self.tower, [p + q for p, q in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return UPoly(self.tower, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._binary(other))

    def __rsub__(self, other):
        return self._binary(other) - self

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            c = self.tower.coerce(other)
            return UPoly(self.tower, [a * c for a in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UPoly(self.tower, [])
        out = [self.tower.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return UPoly(self.tower, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        r = UPoly(self.tower, [1])
        for _ in range(n):
            r = r * self
        return r

    def __eq__(self, other):
        if not isinstance(other, UPoly):
            other = UPoly(self.tower, [other])
        return len(self.coeffs) == len(other.coeffs) and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def divmod(self, other):
        if other.is_zero():
            from ..errors import DivisionByZero
            raise DivisionByZero("polynomial division by zero")
        r = list(self.coeffs)
        q = [self.tower.zero] * max(len(r) - len(other.coeffs) + 1, 0)
        inv = other.lc().inverse()
        d = other.degree
        for k in range(len(r) - 1, d - 1, -1):
            c = r[k]
            if c.is_zero():
                continue
            f = c * inv
            q[k - d] = f
            for j, b in enumerate(other.coeffs):
                r[k - d + j] = r[k - d + j] - f * b
        return UPoly(self.tower, q), UPoly(self.tower, r[:d])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __call__(self, v):
        r = self.tower.zero
        for c in reversed(self.coeffs):
            r = r * v + c
        return r

    def derivative(self):
        return UPoly(self.tower, [i * c for i, c in enumerate(self.coeffs)][1:])

    def shift(self, delta):
        """p(u + delta)."""
        r = UPoly(self.tower, [])
        lin = UPoly(self.tower, [delta, 1])
        for c in reversed(self.coeffs):
            r = r * lin + c
        return r

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree(self):
        """Yun's algorithm: list of (monic square-free factor, multiplicity)."""
        if self.degree < 1:
            return []
        f = self.monic()
        d = f.derivative()
        a = f.gcd(d)
        b = f // a
        c = d // a - b.derivative()
        out = []
        i = 1
        while b.degree > 0:
            g = b.gcd(c)
            if g.degree > 0:
                out.append((g, i))
            b = b // g
            c = c // g - b.derivative()
            i += 1
        return out

    def factor(self):
        """Monic irreducible factors with multiplicities."""
        out = []
        for s, m in self.squarefree():
            for f in _factor_squarefree(s):
                out.append((f, m))
        return out

    def roots(self):
        return [(-f.coeffs[0], m) for f, m in self.factor() if f.degree == 1]

    def __str__(self):
        terms = []
        for i, c in reversed(list(enumerate(self.coeffs))):
            if c.is_zero():
                continue
            mono = "" if i == 0 else ("u" if i == 1 else f"u^{i}")
            cs = str(c)
            if c.needs_parens():
                cs = f"({cs})"
            terms.append(cs if not mono else (mono if c == 1 else f"{cs}*{mono}"))
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"UPoly({self})"


def _aux_ctx(u):
    names = u.ctx.names()
    return flint.fmpq_mpoly_ctx.get(tuple(names) + (_AUX,), "lex")


def to_flint(p):
    """Clear denominators; return a polynomial in the universe ring plus the aux variable."""
    u = p.tower.universe
    ctx = _aux_ctx(u)
    den = None
    for c in p.coeffs:
        d = u.lift(c.den)
        den = d if den is None else den * (d / den.gcd(d))
    t = ctx.gen(ctx.nvars() - 1)
    out = ctx.from_dict({})
    for i, c in enumerate(p.coeffs):
        if c.is_zero():
            continue
        coeff = u.lift(c.num) * (den / u.lift(c.den))
        out = out + coeff.project_to_context(ctx) * t ** i
    return out


def from_flint(tower, poly):
    u = tower.universe
    ctx = poly.context()
    k = ctx.nvars() - 1
    groups = {}
    for exps, c in poly.to_dict().items():
        e = list(exps)
        deg = e[k]
        e[k] = 0
        groups.setdefault(deg, {})[tuple(e)] = c
    n = max(groups) if groups else -1
    coeffs = []
    for i in range(n + 1):
        g = groups.get(i)
        if g is None:
            coeffs.append(tower.zero)
        else:
            coeffs.append(tower.element(ctx.from_dict(g).project_to_context(u.ctx)))
    return UPoly(tower, coeffs).monic()


def _aux_degree(poly):
    return poly.degrees()[-1]


def _factor_squarefree(s):
    if s.degree == 1:
        return [s.monic()]
    t = s.tower
    if not t.algebraic_records():
        return _factor_plain(s)
    recs = t.algebraic_records()
    u = t.universe
    thetas = [t.gen(r.name) for r in recs]
    for k in range(0, 12):
        theta = t.zero
        for j, z in enumerate(thetas):
            theta = theta + (k + 1) ** j * z
        delta = theta * k if k else t.zero
        sk = s.shift(-delta) if k else s
        norm = to_flint(sk)
        ctx = norm.context()
        for rec in reversed(recs):
            lead, tail = rec.lifted(u)
            g = lead.project_to_context(ctx) * ctx.gen(u.index(rec.name)) ** rec.degree
            for e, c in tail.items():
                g = g + c.project_to_context(ctx) * ctx.gen(u.index(rec.name)) ** e
            norm = norm.resultant(g, rec.name)
        aux = ctx.nvars() - 1
        sqf = norm.gcd(norm.derivative(aux))
        if _aux_degree(sqf) > 0:
            continue
        factors = []
        _, fl = norm.factor()
        for f, _m in fl:
            if _aux_degree(f) == 0:
                continue
            nf = from_flint(t, f)
            g = sk.gcd(nf)
            if g.degree > 0:
                factors.append(g.shift(delta) if k else g)
        return [f.monic() for f in factors]
    raise RuntimeError("no square-free norm found")


def _factor_plain(s):
    t = s.tower
    _, fl = to_flint(s).factor()
    return [from_flint(t, f) for f, _m in fl if _aux_degree(f) > 0]
