"""Newton polygons of T(h G) with respect to a formal next element f."""

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import PreconditionError
from ..dfield.tower import join, split_jet_name
from ..fracderiv.expand import BiExp, expand_recursive
from ..fracderiv.jets import fresh_name


def _q(v):
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


@dataclass
class LeadingEdge:
    pivot: BiExp
    end: BiExp
    slope: Fraction
    on_edge: list = field(default_factory=list)

    @property
    def multiplicity(self):
        return self.pivot.t

    @property
    def is_terminal(self):
        return self.slope == 0

    def to_json(self):
        return {
            "slope": _q(self.slope),
            "pivot": [_q(self.pivot.j), self.pivot.t],
            "end": [_q(self.end.j), self.end.t],
            "multiplicity": self.multiplicity,
        }


@dataclass
class NewtonPolygon:
    level: int
    points: dict
    hull: list
    start: BiExp
    tower: object
    h_name: str
    f_name: str
    order: int
    known: list = field(default_factory=list)

    def coefficient(self, point):
        return self.points.get(BiExp(*point), self.tower.zero)

    def edges(self, max_slope=None):
        return leading_edges(self, max_slope)

    def to_json(self, max_slope=None):
        return {
            "level": self.level,
            "points": [
                {"j": _q(p.j), "t": p.t, "coeff": str(c)}
                for p, c in sorted(self.points.items(), key=lambda kv: (-kv[0].t, -kv[0].j))
            ],
            "hull": [[_q(p.j), p.t] for p in self.hull],
            "edges": [e.to_json() for e in leading_edges(self, max_slope)],
        }


def convex_hull(points):
    """Vertices of the convex hull, counter-clockwise, collinear points dropped."""
    pts = sorted(set((Fraction(p[0]), Fraction(p[1])) for p in points))
    if len(pts) <= 2:
        return [BiExp(*p) for p in pts]

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return [BiExp(*p) for p in lower[:-1] + upper[:-1]]


def build_polygon(T, known, level, start=None):
    """Points of T(H G^(0)) where G involves the known (f_i, s_i) and a formal next element.

    `known` is a list of (element, exponent) pairs.  The formal element F
    carries weight (0, 1) and H is a formal coefficient, so a point (j, t)
    records the accumulated known weight j and the number t of factors
    coming from derivatives of F.
    """
    base = T.tower
    for f, _ in known:
        base = join(base, f.tower)
    h_name = fresh_name(base, "H")
    t1, H = base.adjoin_jets(h_name)
    f_name = fresh_name(t1, "F")
    t2, F = t1.adjoin_jets(f_name)
    gens = [(t2.coerce(f), BiExp(s, 0)) for f, s in known] + [(F, BiExp(0, 1))]
    terms = expand_recursive(T.in_tower(t2), H, BiExp(0, 0), gens)
    points = {BiExp(*k): v for k, v in terms.items()}
    n = T.order
    if level == 2:
        if BiExp(n, 0) in points:
            raise PreconditionError("the symbol does not vanish on f_1; the factor does not divide the symbol")
        if start is None:
            ts = [p.t for p in points if p.j + p.t == n]
            start = BiExp(n - min(ts), min(ts)) if ts else None
    hull = convex_hull(list(points) + [BiExp(0, 0)])
    return NewtonPolygon(level, points, hull, BiExp(*start) if start is not None else None,
                         t2, h_name, f_name, n, list(known))


def leading_edges(P, max_slope=None, start=None):
    """Edges met walking down the upper-right boundary from the start point.

    Each edge runs from its pivot to the farthest collinear point below it.
    Positive slopes are candidates for leading edges; a slope-0 edge ends the walk.
    """
    cur = BiExp(*(start or P.start))
    pts = list(P.points)
    edges = []
    while True:
        below = [p for p in pts if p.t < cur.t]
        if not below:
            break
        slopes = {p: (p.j - cur.j) / (cur.t - p.t) for p in below}
        best = max(slopes.values())
        if best < 0:
            break
        on = sorted([p for p in below if slopes[p] == best], key=lambda p: -p.t)
        end = on[-1]
        if max_slope is not None and best >= max_slope and not edges:
            raise AssertionError("edge slope does not decrease along the branch")
        edges.append(LeadingEdge(cur, end, best, [cur] + on))
        if best == 0:
            break
        cur = end
    return edges


def h_jets(P, elem):
    """Jet names of the formal coefficient H occurring in elem."""
    out = []
    for n in elem.free_names():
        parts = split_jet_name(n)
        if parts and parts[0] == P.h_name:
            out.append((n, parts[1], parts[2]))
    return out


def f_jets(P, elem):
    out = []
    for n in elem.free_names():
        parts = split_jet_name(n)
        if parts and parts[0] == P.f_name:
            out.append((n, parts[1], parts[2]))
    return out
