"""Construction of truncated fractional-derivatives series solutions along a branch."""

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from ..errors import LeadingEquationUnsupported, PreconditionError, VerificationError
from ..dfield.tower import join
from ..fracderiv.gsymbol import GSymbol, expand_apply
from ..fracderiv.jets import adjoin_characteristic, fresh_name
from ..fracderiv.series import FracSeries, verify_series
from ..lpdo.symbol import LinearFactor, mult_of
from .leading import (adjoin_leading_solution, adjoin_linear_solution, leading_polynomial,
                      leading_roots, taylor_shift, terminal_operator)
from .polygon import BiExp, build_polygon, leading_edges


def _q(v):
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


@dataclass
class LevelRecord:
    level: int
    pivot: BiExp
    end: BiExp
    slope: Fraction
    q: int
    q_prev: int
    t0: int
    intercept: Fraction
    element: str
    leading: str
    extensions: list = field(default_factory=list)
    taylor_agrees: bool = True

    @property
    def multiplicity(self):
        return self.pivot.t

    @property
    def bound(self):
        """t4 + (t3 - t4) q_{k-1} / q_k."""
        return self.end.t + Fraction((self.pivot.t - self.end.t) * self.q_prev, self.q)

    def to_json(self):
        return {
            "level": self.level,
            "edge": {"pivot": [_q(self.pivot.j), self.pivot.t], "end": [_q(self.end.j), self.end.t]},
            "slope": _q(self.slope),
            "q": self.q,
            "multiplicity": self.multiplicity,
            "t0": self.t0,
            "t0_bound": _q(self.bound),
            "intercept": _q(self.intercept),
            "element": self.element,
            "leading_polynomial": self.leading,
            "extensions": list(self.extensions),
        }


@dataclass
class BranchTrace:
    order: int
    m: int
    levels: list = field(default_factory=list)
    terminal: dict = field(default_factory=dict)
    strategy: str = "least_slope"

    @property
    def q(self):
        return self.levels[-1].q if self.levels else 1

    @property
    def slopes(self):
        return [r.slope for r in self.levels]

    def check(self):
        """Denominator and multiplicity ledger checks; returns a list of violations."""
        bad = []
        prev_q, prev_c, prev_s = 1, Fraction(self.order), Fraction(1)
        for r in self.levels:
            if r.q % prev_q:
                bad.append(f"level {r.level}: q_{r.level - 1} does not divide q_{r.level}")
            if not 0 < r.slope < prev_s:
                bad.append(f"level {r.level}: slope {r.slope} not in (0, {prev_s})")
            if r.t0 > r.bound:
                bad.append(f"level {r.level}: t0 = {r.t0} exceeds {r.bound}")
            if not r.intercept < prev_c:
                bad.append(f"level {r.level}: intercept {r.intercept} does not decrease")
            prev_q, prev_c, prev_s = r.q, r.intercept, r.slope
        for r in self.levels:
            if r.t0 == r.multiplicity and r.q != r.q_prev:
                bad.append(f"level {r.level}: t0 = t3 but the denominator changed")
        if self.q > 2 ** (self.m - 1):
            bad.append(f"q = {self.q} exceeds 2^(m-1) = {2 ** (self.m - 1)}")
        if len(self.levels) > self.q:
            bad.append(f"{len(self.levels)} leading edges before a slope-0 edge, more than q = {self.q}")
        if self.strategy == "least_slope" and self.q > self.m:
            bad.append(f"least-slope branch ends with q = {self.q} > m = {self.m}")
        return bad

    def to_json(self):
        return {
            "order": self.order,
            "m": self.m,
            "q": self.q,
            "strategy": self.strategy,
            "levels": [r.to_json() for r in self.levels],
            "terminal": self.terminal,
        }


def _choice(choices, level, key, default=None):
    if not choices:
        return default
    if isinstance(choices, dict):
        c = choices.get(level)
    else:
        c = choices[level - 2] if level - 2 < len(choices) else None
    if not c:
        return default
    return c.get(key, default)


def start_branch(T, factor, f1=None):
    """The tower carrying f_1 with (a1 d_x + a2 d_y) f_1 = 0, and the multiplicity m."""
    if isinstance(factor, LinearFactor):
        direction = factor.direction
        tower = T.tower if factor.extension is None else join(T.tower, factor.extension)
    else:
        direction = factor
        tower = T.tower
    for v in direction:
        if hasattr(v, "tower"):
            tower = join(tower, v.tower)
    T = T.in_tower(tower)
    m = mult_of(T, direction)
    if m < 1:
        raise PreconditionError("the factor does not divide the symbol")
    a1, a2 = (tower.coerce(v) for v in direction)
    if f1 is None:
        ext = adjoin_characteristic(tower, fresh_name(tower, "f1"), (a1, a2))
        return T.in_tower(ext.tower), ext.tower, ext.element, m
    f1 = join(tower, f1.tower).coerce(f1) if hasattr(f1, "tower") else tower.coerce(f1)
    if not (a1 * f1.dx() + a2 * f1.dy()).is_zero():
        raise VerificationError("the supplied f_1 does not satisfy the characteristic equation")
    if f1.dx().is_zero() and f1.dy().is_zero():
        raise PreconditionError("f_1 must be non-constant")
    return T.in_tower(f1.tower), f1.tower, f1, m


class Branch:
    """A partially built branch: known (f_i, s_i) and the current polygon."""

    def __init__(self, T, base, known, P, trace, q_prev=1, max_slope=Fraction(1), taylor=None,
                 polygons=None):
        self.T = T
        self.base = base
        self.known = known
        self.P = P
        self.trace = trace
        self.q_prev = q_prev
        self.max_slope = max_slope
        self.taylor = taylor or []
        self.polygons = polygons if polygons is not None else [P]

    @classmethod
    def start(cls, T, factor, f1=None, strategy="least_slope"):
        T, base, f1, m = start_branch(T, factor, f1)
        known = [(f1, Fraction(1))]
        P = build_polygon(T, known, 2)
        return cls(T, base, known, P, BranchTrace(T.order, m, strategy=strategy))

    @property
    def level(self):
        return len(self.known) + 1

    def edges(self):
        edges = leading_edges(self.P, self.max_slope)
        if not edges:
            raise AssertionError("no edge below the start point")
        return edges

    def roots(self, edge):
        L = leading_polynomial(self.P, edge)
        return L, leading_roots(L, self.base)

    def advance(self, edge, root=0, f=None):
        """Take a positive-slope edge, solve its leading equation and move to the next level."""
        if edge.is_terminal:
            raise PreconditionError("cannot advance along a slope-0 edge")
        level = self.level
        if level - 1 > 2 ** (self.trace.m - 1) + 1:
            raise AssertionError("branch does not terminate")
        s = edge.slope
        q = lcm(self.q_prev, s.denominator)
        exts = []
        if f is not None:
            L = leading_polynomial(self.P, edge)
            base = join(self.base, f.tower) if hasattr(f, "tower") else self.base
            fk = base.coerce(f)
        else:
            L, (alpha, roots) = self.roots(edge)
            if not roots:
                raise LeadingEquationUnsupported("the leading equation has no nonzero root")
            r = roots[root]
            if r.extension:
                exts.append(r.extension)
            ext = adjoin_leading_solution(r.tower, alpha, r.value, f"f{level}")
            exts.append(ext.name)
            base, fk = ext.tower, ext.element
        known = self.known + [(fk, s)]
        P2 = build_polygon(self.T.in_tower(base), known, level + 1)
        shift = taylor_shift(L, fk, s, P2)
        j3, t3 = edge.pivot
        P2.start = BiExp(j3 + s * (t3 - shift.t0), shift.t0)
        trace = BranchTrace(self.trace.order, self.trace.m, list(self.trace.levels),
                            strategy=self.trace.strategy)
        trace.levels.append(LevelRecord(level, edge.pivot, edge.end, s, q, self.q_prev, shift.t0,
                                        j3 + s * t3, str(fk), str(L), exts))
        return Branch(self.T, base, known, P2, trace, q, s, self.taylor + [shift],
                      self.polygons + [P2])

    def finish(self, edge):
        B = terminal_operator(self.P, edge)
        self.trace.terminal = {"pivot": [_q(edge.pivot.j), edge.pivot.t], "j": _q(edge.end.j),
                               "operator": str(B), "order": B.order}
        return B


def walk_branch(T, factor, strategy="least_slope", choices=None, f1=None):
    """Run the leading-edge recursion down to a slope-0 edge.

    By default each level takes the edge of least slope (the last one met);
    `choices` maps a level to {"edge": index, "root": index, "f": element}.
    Returns (branch, terminal edge, terminal operator).
    """
    br = Branch.start(T, factor, f1, strategy if not choices else "scripted")
    while True:
        edges = br.edges()
        idx = _choice(choices, br.level, "edge")
        edge = edges[idx] if idx is not None else edges[-1]
        if edge.is_terminal:
            return br, edge, br.finish(edge)
        br = br.advance(edge, _choice(choices, br.level, "root", 0), _choice(choices, br.level, "f"))


def tail_coefficients(T, G, Bbar, j5, h0, N, base=None, supplied=None):
    """h_1..h_N with Bbar(h_i) = fbar_i, fbar_i read off the shifted expansion."""
    q = G.q
    base = base or h0.tower
    hs = [h0]
    total = None
    for i in range(1, N + 1):
        prev = hs[-1]
        if not prev.is_zero():
            part = expand_apply(T, prev, -Fraction(i - 1, q), G)
            total = part if total is None else total + part
        fbar = -total.coefficient(j5 - Fraction(i, q)) if total is not None else base.zero
        if supplied and i in supplied:
            hi = supplied[i]
            if Bbar.apply(hi) != fbar:
                raise VerificationError(f"supplied h_{i} does not solve its equation")
        elif fbar.is_zero():
            hi = base.zero
        else:
            base = join(base, fbar.tower)
            base, hi = adjoin_linear_solution(base, Bbar, base.restrict(fbar), f"h{i}")
        base = join(base, hi.tower)
        hs.append(hi)
    return hs


def construct_series(T, factor, N=2, strategy="least_slope", choices=None, f1=None, h=None,
                     depth=None, verify=True):
    """A truncated series solution sum_{i<=N} h_i G^(-i/q) of T along the chosen branch.

    The result carries its BranchTrace in `.trace`.  With verify set, T(S)
    is checked to vanish at the top `depth` exponents; the default depth is
    every exponent the N + 1 coefficients determine.
    """
    br, edge, B = walk_branch(T, factor, strategy, choices, f1)
    T, base, j5, trace = br.T, br.base, edge.end.j, br.trace
    fs = [f for f, _ in br.known]
    exps = [s for _, s in br.known][1:]
    G = GSymbol(fs, exps)
    if h is not None:
        h0 = join(base, h.tower).coerce(h) if hasattr(h, "tower") else base.coerce(h)
        if not B.apply(h0).is_zero():
            raise VerificationError("supplied h does not solve the terminal equation")
        if h0.is_zero():
            raise PreconditionError("h must be nonzero")
    else:
        base, h0 = adjoin_linear_solution(base, B, 0, "h0")
    hs = tail_coefficients(T, G, B, j5, h0, N)
    S = FracSeries(G, 0, hs, trace=trace)
    if verify:
        if depth is None:
            depth = int(S.q * (T.order - j5)) + N + 1
        verdict = verify_series(T, S, depth)
        if not verdict.ok:
            raise VerificationError(f"series fails at exponent {verdict.first_failure}",
                                    verdict.first_failure)
    return S


def explore_branches(T, factor, limit=64, f1=None):
    """Traces of the branches of the construction tree over all edges and roots.

    Returns (traces, unsupported) where unsupported lists the leading
    equations the engine could not solve.
    """
    traces, unsupported = [], []

    def rec(br):
        if len(traces) >= limit:
            return
        for edge in br.edges():
            if edge.is_terminal:
                br.finish(edge)
                traces.append(br.trace)
                continue
            try:
                _, (_, roots) = br.roots(edge)
            except LeadingEquationUnsupported as e:
                unsupported.append((br.level, str(e)))
                continue
            for i in range(len(roots)):
                rec(br.advance(edge, i))

    rec(Branch.start(T, factor, f1))
    return traces, unsupported
