"""First-order right and left factors by remainder equations and bounded ansatz."""

from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from ..errors import PreconditionError, VerificationError
from ..dfield.tower import join, split_jet_name
from ..fracderiv.jets import fresh_name
from ..lpdo.operator import LPDO, divide_by_first_order
from ..lpdo.symbol import LinearFactor, symbol_linear_factors


@dataclass
class FactorCandidate:
    """L = a1 d_x + a2 d_y + b with T = S L (right) or T = L S (left)."""

    side: str
    direction: tuple
    b: object
    L: LPDO
    cofactor: LPDO
    method: str = "linear"

    def verify(self, T):
        t = join(T.tower, self.L.tower)
        prod = self.cofactor * self.L if self.side == "right" else self.L * self.cofactor
        return prod.in_tower(t) == T.in_tower(t)

    def to_json(self):
        return {"side": self.side, "factor": str(self.L), "cofactor": str(self.cofactor),
                "method": self.method}


@dataclass
class SearchReport:
    candidates: list
    bounds: tuple
    exhausted: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.candidates)

    def __len__(self):
        return len(self.candidates)

    def __getitem__(self, i):
        return self.candidates[i]


def default_bounds(T):
    return (T.order + 2, T.order + 2)


def first_order(t, direction, b):
    a1, a2 = direction
    return LPDO(t, {(1, 0): t.coerce(a1), (0, 1): t.coerce(a2), (0, 0): t.coerce(b)})


def divide_first_order(T, L):
    """(S, R) with T = S L + R; R free of d_x, or of d_y when L has no d_x term."""
    if not L.coefficient(1, 0).is_zero():
        return divide_by_first_order(T, L)
    t = join(T.tower, L.tower)
    T, L = T.in_tower(t), L.in_tower(t)
    c = L.coefficient(0, 1)
    if L.order != 1 or c.is_zero():
        raise PreconditionError("divisor must be first order")
    Lm = L.left_scale(c.inverse())
    S, R = LPDO(t), T
    while R.order_dy() >= 1:
        m = R.order_dy()
        for (i, j), rc in list(R.coeffs.items()):
            if j != m:
                continue
            q = LPDO.monomial(t, i, j - 1, rc)
            S = S + q
            R = R - q * Lm
    return S * LPDO.scalar(t, c.inverse()), R


def directions(T, algebraic=False):
    """(tower, (a1, a2), extension generator or None) for each linear factor of the symbol."""
    fac = symbol_linear_factors(T.symbol())
    t = T.tower
    out = [(t, lf.direction, None, lf.multiplicity) for lf in fac.linear]
    if algebraic:
        for f, m in fac.residual:
            name = fresh_name(t, "z")
            t2, z = t.adjoin_algebraic(name, f.coeffs)
            out.append((t2, (t2.one, -z), z, m))
    return out


def remainder_equations(T, direction):
    """Coefficients of the remainder of T by a1 d_x + a2 d_y + b with b a free indeterminate."""
    t = T.tower
    name = fresh_name(t, "b")
    t2, b = t.adjoin_jets(name)
    L = first_order(t2, direction, b)
    _, R = divide_first_order(T.in_tower(t2), L)
    return t2, name, [c for c in R.coeffs.values() if not c.is_zero()]


def _jets_of(e, family):
    out = []
    for n in e.free_names():
        parts = split_jet_name(n)
        if parts and parts[0] == family:
            out.append(n)
    return out


def _linear_solution(eqs, family, base):
    """b from the first equation of the form c1 b + c0 with c1 != 0 and no derivatives of b."""
    b00 = f"{family}_0_0"
    for e in eqs:
        jets = _jets_of(e, family)
        if jets != [b00]:
            continue
        parts = e.coefficients_in([b00])
        if max(k[0] for k in parts) != 1:
            continue
        c1 = parts[(1,)]
        c0 = parts.get((0,), e.tower.zero)
        try:
            return base.restrict(-c0 / c1)
        except PreconditionError:
            continue
    return None


def _to_sympy(e, symbols):
    u = e.tower.universe
    names = u.ctx.names()

    def conv(p):
        out = sympy.Integer(0)
        for exps, c in u.lift(p).to_dict().items():
            term = sympy.Rational(int(c.p), int(c.q))
            for n, k in zip(names, exps):
                if k:
                    term *= symbols[n] ** int(k)
            out += term
        return out

    return conv(e.num), conv(e.den)


def _from_sympy(expr, t, X, Y):
    num, den = sympy.fraction(sympy.together(expr))

    def conv(p):
        P = sympy.Poly(sympy.expand(p), X, Y)
        out = t.zero
        for (i, j), c in P.terms():
            c = sympy.Rational(c)
            out = out + t.const(Fraction(int(c.p), int(c.q))) * t.x ** i * t.y ** j
        return out

    return conv(num) / conv(den)


def _monomials(d, X, Y):
    return [X ** i * Y ** (k - i) for k in range(d + 1) for i in range(k, -1, -1)]


def _ansatz_solutions(eqs, family, base, bounds):
    """b = P/Q with deg P <= bounds[0], deg Q <= bounds[1] solving all equations."""
    syms = {"x": sympy.Symbol("x"), "y": sympy.Symbol("y")}
    X, Y = syms["x"], syms["y"]
    jet_syms = {}
    exprs = []
    for e in eqs:
        for n in e.free_names():
            if n in ("x", "y"):
                continue
            parts = split_jet_name(n)
            if not parts or parts[0] != family:
                return None
            jet_syms.setdefault(n, sympy.Symbol(n))
        syms.update(jet_syms)
        num, den = _to_sympy(e, syms)
        exprs.append(num)
    for total in range(bounds[0] + bounds[1] + 1):
        for dd in range(min(total, bounds[1]) + 1):
            dn = total - dd
            if dn > bounds[0]:
                continue
            pm = _monomials(dn, X, Y)
            qm = _monomials(dd, X, Y)
            top = [m for m in qm if sympy.Poly(m, X, Y).total_degree() == dd]
            for lead in range(len(top)):
                ps = sympy.symbols(f"p0:{len(pm)}")
                qs = list(sympy.symbols(f"q0:{len(qm)}"))
                fixed = {}
                for k, m in enumerate(qm):
                    if m in top[:lead]:
                        fixed[qs[k]] = 0
                    elif m == top[lead]:
                        fixed[qs[k]] = 1
                P = sum(p * m for p, m in zip(ps, pm))
                Q = sum(fixed.get(q, q) * m for q, m in zip(qs, qm))
                bexpr = P / Q
                subs = {}
                for n, s in jet_syms.items():
                    _, i, k = split_jet_name(n)
                    subs[s] = sympy.diff(bexpr, X, i, Y, k)
                conds = []
                for ex in exprs:
                    num = sympy.numer(sympy.together(ex.subs(subs)))
                    conds.extend(sympy.Poly(sympy.expand(num), X, Y).coeffs())
                unknowns = list(ps) + [q for q in qs if q not in fixed]
                sols = sympy.solve(conds, unknowns, dict=True) if conds else [{}]
                for sol in sols:
                    free = {u: 0 for u in unknowns if u not in sol}
                    val = {u: sympy.sympify(v).subs(free) for u, v in sol.items()}
                    val.update(free)
                    Qv = sympy.expand(Q.subs(val))
                    if Qv == 0:
                        continue
                    bval = sympy.cancel(P.subs(val) / Qv)
                    yield _from_sympy(bval, base, X, Y), (dn, dd)
    return None


def right_factor_search(T, bounds=None, algebraic=False, first_only=False, direction=None):
    """Verified right factors L of T, T = S L, one search per symbol direction.

    A remainder equation linear in b determines b directly; otherwise b is
    searched as P/Q within the degree bounds.
    """
    if T.order < 1:
        raise PreconditionError("operator of order zero has no first-order factors")
    bounds = bounds or default_bounds(T)
    found, exhausted = [], []
    for t, dirn, _, mult in directions(T, algebraic):
        if direction is not None and not _same_direction(dirn, direction, t):
            continue
        Tt = T.in_tower(t)
        t2, family, eqs = remainder_equations(Tt, dirn)
        if any(not _jets_of(e, family) for e in eqs):
            continue
        candidates = []
        if not eqs:
            candidates.append((t.zero, "linear"))
        else:
            b = _linear_solution(eqs, family, t)
            if b is not None:
                candidates.append((b, "linear"))
            else:
                gen = _ansatz_solutions(eqs, family, t, bounds)
                if gen is not None:
                    for bval, degs in gen:
                        candidates.append((bval, f"ansatz{degs}"))
                        break
                exhausted.append({"direction": [str(a) for a in dirn], "bounds": list(bounds),
                                  "found": bool(candidates)})
        for b, method in candidates:
            L = first_order(t, dirn, b)
            S, R = divide_first_order(Tt, L)
            if not R.is_zero():
                continue
            cand = FactorCandidate("right", dirn, b, L, S, method)
            if not cand.verify(T):
                raise VerificationError("factor certificate does not re-multiply")
            found.append(cand)
        if first_only and found:
            break
    return SearchReport(found, bounds, exhausted)


def _same_direction(d, e, t):
    a1, a2 = t.coerce(d[0]), t.coerce(d[1])
    b1, b2 = t.coerce(e[0]), t.coerce(e[1])
    return (a1 * b2 - a2 * b1).is_zero()


def left_factor_search(T, bounds=None, algebraic=False, first_only=False):
    """Verified left factors L of T, T = L S, via right factors of the adjoint."""
    rep = right_factor_search(T.adjoint(), bounds, algebraic, first_only)
    out = []
    for c in rep.candidates:
        # T* = S' L'  gives  T = L'* S'*; L'* = -(a1 d_x + a2 d_y) + ..., so negate both
        L = -(c.L.adjoint())
        S = -(c.cofactor.adjoint())
        a1, a2 = L.coefficient(1, 0), L.coefficient(0, 1)
        cand = FactorCandidate("left", (a1, a2), L.coefficient(0, 0), L, S, c.method)
        if not cand.verify(T):
            raise VerificationError("left factor certificate does not re-multiply")
        out.append(cand)
    return SearchReport(out, rep.bounds, rep.exhausted)
