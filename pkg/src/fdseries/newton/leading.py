"""Leading polynomials of edges, their roots, and the shift to the next level."""

from dataclasses import dataclass, field
from math import comb, factorial

from ..errors import LeadingEquationUnsupported, PreconditionError, VerificationError
from ..dfield.tower import jet_name
from ..dfield.upoly import UPoly
from ..fracderiv.expand import BiExp
from ..fracderiv.jets import adjoin_characteristic, fresh_name
from ..lpdo.operator import LPDO
from .polygon import f_jets, h_jets


@dataclass
class LeadingPolynomial:
    """Q = sum_t B_t with B_t = h * Btilde_t, Btilde_t homogeneous of degree t in (v1, v2)."""

    edge: object
    polygon: object
    base: object
    B: dict
    forms: dict
    Q: dict = field(default_factory=dict)

    @property
    def tower(self):
        return self.base

    def evaluate(self, v1, v2):
        out = None
        for (a, b), c in self.Q.items():
            term = c * v1 ** a * v2 ** b
            out = term if out is None else out + term
        return out if out is not None else v1 * 0

    def partial(self, i1, i2):
        """d^(i1+i2) Q / dv1^i1 dv2^i2 as a coefficient dict."""
        out = {}
        for (a, b), c in self.Q.items():
            if a >= i1 and b >= i2:
                k = factorial(a) // factorial(a - i1) * (factorial(b) // factorial(b - i2))
                out[(a - i1, b - i2)] = c * k
        return out

    def __str__(self):
        parts = []
        for (a, b), c in sorted(self.Q.items(), reverse=True):
            mono = "*".join(p for p in ("v1" if a == 1 else (f"v1^{a}" if a else ""),
                                        "v2" if b == 1 else (f"v2^{b}" if b else "")) if p)
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return "h*(" + " + ".join(parts) + ")" if parts else "0"


def leading_polynomial(P, edge):
    """Collect B_t on the edge and check that each is h times a form of degree t in grad f."""
    if edge.is_terminal:
        raise PreconditionError("a slope-0 edge has no leading polynomial; use terminal_operator")
    h0 = jet_name(P.h_name, 0, 0)
    v1, v2 = jet_name(P.f_name, 1, 0), jet_name(P.f_name, 0, 1)
    base = coefficient_tower(P)
    B, forms, Q = {}, {}, {}
    for pt in edge.on_edge:
        c = P.points.get(pt)
        if c is None or c.is_zero():
            continue
        for name, i, k in h_jets(P, c):
            if i + k:
                raise AssertionError(f"B_{pt.t} depends on the derivative {name} of h")
        for name, i, k in f_jets(P, c):
            if i + k != 1:
                raise AssertionError(f"B_{pt.t} contains the higher derivative {name}")
        form = {}
        for (eh, a, b), coef in c.coefficients_in([h0, v1, v2]).items():
            if eh != 1 or a + b != pt.t:
                raise AssertionError(f"B_{pt.t} is not h times a form of degree {pt.t}")
            coef = base.restrict(coef)
            form[(a, b)] = coef
            Q[(a, b)] = Q[(a, b)] + coef if (a, b) in Q else coef
        B[pt.t] = c
        forms[pt.t] = form
    return LeadingPolynomial(edge, P, base, B, forms, {k: v for k, v in Q.items() if not v.is_zero()})


def common_linear_form(L):
    """Find ell = v1 + alpha*v2 (alpha None meaning ell = v2) with Btilde_t = c_t ell^t.

    Returns (alpha, {t: c_t}) or raises LeadingEquationUnsupported.
    """
    top = max(L.forms)
    form = L.forms[top]
    t = L.tower
    alpha = None
    if (top, 0) in form:
        c = form[(top, 0)]
        alpha = form.get((top - 1, 1), t.zero) / (c * top)
    cs = {}
    for deg, f in L.forms.items():
        if alpha is None:
            c = f.get((0, deg), t.zero)
            expect = {(0, deg): c}
        else:
            c = f.get((deg, 0), t.zero)
            expect = {(deg - b, b): c * comb(deg, b) * alpha ** b for b in range(deg + 1)}
        expect = {k: v for k, v in expect.items() if not v.is_zero()}
        if set(expect) != set(f) or any(expect[k] != f[k] for k in f):
            raise LeadingEquationUnsupported(
                "the leading polynomial is not a polynomial in a single linear form of grad f; "
                "supply the next element explicitly")
        cs[deg] = c
    return alpha, cs


@dataclass
class LeadingRoot:
    tower: object
    value: object
    extension: str = None
    minimal_polynomial: object = None


def leading_roots(L, base):
    """Nonzero roots lambda of P(lambda) = sum_t c_t lambda^t, adjoining algebraic roots as needed."""
    alpha, cs = common_linear_form(L)
    lo = min(cs)
    coeffs = [base.coerce(cs.get(k, base.zero)) for k in range(lo, max(cs) + 1)]
    p = UPoly(base, coeffs)
    roots = []
    for f, _ in p.factor():
        if f.degree == 1:
            lam = -f.coeffs[0] / f.coeffs[1]
            if not lam.is_zero():
                roots.append(LeadingRoot(base, lam))
        else:
            name = fresh_name(base, "z")
            monic = f.monic()
            t2, z = base.adjoin_algebraic(name, [c for c in monic.coeffs])
            roots.append(LeadingRoot(t2, z, name, monic))
    return alpha, roots


def adjoin_leading_solution(base, alpha, lam, prefix="f"):
    """Adjoin f with ell(grad f) = lam, i.e. d_x f + alpha d_y f = lam (or d_y f = lam)."""
    name = fresh_name(base, prefix)
    direction = (1, alpha) if alpha is not None else (0, 1)
    ext = adjoin_characteristic(base, name, direction, 0, lam)
    return ext


def taylor_formula(L, grad, h, vbar):
    """Btilde shifted by grad: for each t the form sum 1/(i1! i2!) d^t Q(grad) vbar^i times h."""
    out = {}
    top = max(L.edge.pivot.t, max(L.forms, default=0))
    v1, v2 = grad
    w1, w2 = vbar
    for t in range(top + 1):
        acc = None
        for i1 in range(t + 1):
            i2 = t - i1
            d = L.partial(i1, i2)
            if not d:
                continue
            val = None
            for (a, b), c in d.items():
                term = c * v1 ** a * v2 ** b
                val = term if val is None else val + term
            term = val * w1 ** i1 * w2 ** i2 / (factorial(i1) * factorial(i2))
            acc = term if acc is None else acc + term
        if acc is not None and not acc.is_zero():
            out[t] = h * acc
    return out


@dataclass
class TaylorShift:
    Bbar: dict
    t0: int
    formula: dict


def taylor_shift(L, f, slope, next_polygon):
    """The coefficients Bbar_t of the next polygon on the shifted line, by two routes.

    Route (a) is the Taylor formula in grad f, route (b) reads them off the
    re-expanded next polygon; a disagreement raises AssertionError.
    """
    P2 = next_polygon
    t = P2.tower
    v1, v2 = t.coerce(f).dx(), t.coerce(f).dy()
    if not L.evaluate(t.coerce(v1), t.coerce(v2)).is_zero():
        raise VerificationError("the chosen element does not solve the leading equation")
    h = t.jet(P2.h_name)
    vbar = (t.jet(P2.f_name, 1, 0), t.jet(P2.f_name, 0, 1))
    formula = taylor_formula(L, (v1, v2), h, vbar)
    j3, t3 = L.edge.pivot
    read = {}
    for tt in range(t3 + 1):
        c = P2.points.get(BiExp(j3 + slope * (t3 - tt), tt))
        if c is not None and not c.is_zero():
            read[tt] = c
    if set(read) != set(formula) or any(read[k] != formula[k] for k in read):
        raise AssertionError("Taylor formula and re-expansion disagree on the shifted line")
    if not read:
        raise AssertionError("all shifted coefficients vanish")
    t0 = min(read)
    if not 1 <= t0 <= t3:
        raise AssertionError(f"t0 = {t0} outside [1, {t3}]")
    return TaylorShift(read, t0, formula)


def terminal_operator(P, edge):
    """The coefficient at the lower end of a slope-0 edge as an operator acting on h."""
    c = P.points[edge.end]
    hs = h_jets(P, c)
    if f_jets(P, c):
        raise AssertionError("terminal coefficient depends on the formal next element")
    coeffs = {}
    names = [n for n, _, _ in hs]
    for exps, coef in c.coefficients_in(names).items():
        if sum(exps) != 1:
            raise AssertionError("terminal coefficient is not linear in h")
        _, i, k = hs[exps.index(1)]
        coeffs[(i, k)] = coef
    base = coefficient_tower(P)
    return LPDO(base, {k: base.restrict(v) for k, v in coeffs.items()})


def coefficient_tower(P):
    """The tower below the formal H, F extensions (they never occur in the coefficients)."""
    t = P.tower
    while t.record is not None and t.record.name in (P.h_name, P.f_name):
        t = t.parent
    return t


def adjoin_linear_solution(base, B, source, prefix="h"):
    """Adjoin h with B(h) = source, solving for a pure d_x (or d_y) top derivative."""
    r = B.order
    name = fresh_name(base, prefix)
    src = base.coerce(source)
    top_x = B.coefficient(r, 0)
    top_y = B.coefficient(0, r)
    if not top_x.is_zero():
        orient, top = "x", (r, 0)
    elif not top_y.is_zero():
        orient, top = "y", (0, r)
    else:
        raise LeadingEquationUnsupported(f"the operator {B} has no pure top derivative; supply h explicitly")
    ctop = B.coefficient(*top)

    def rho(t):
        acc = t.coerce(src)
        for (i, k), c in B.coeffs.items():
            if (i, k) != top:
                acc = acc - t.coerce(c) * t.jet(name, i, k)
        return acc / t.coerce(ctop)

    t2, h = base.adjoin_jets(name, r, orient, rho)
    return t2, h
