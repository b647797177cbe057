"""Intersections of principal ideals generated by first-order operators."""

from dataclasses import dataclass, field

from ..errors import PreconditionError, VerificationError
from ..dfield.linalg import fraction_free_rank, nullspace
from ..dfield.tower import join
from ..lpdo.operator import LPDO, divide_by_first_order
from ..lpdo.skew import SkewPoly


@dataclass
class FirstOrderIdeal:
    """The left ideal generated by L = d_x + a d_y + b."""

    a: object
    b: object

    @property
    def generator(self):
        t = join(self.a.tower, self.b.tower)
        return LPDO(t, {(1, 0): t.one, (0, 1): t.coerce(self.a), (0, 0): t.coerce(self.b)})


@dataclass
class RankCertificate:
    """A homogeneous system with only the trivial solution: rank equals the number of unknowns."""

    rows: int
    unknowns: int
    rank: int

    @property
    def infeasible(self):
        return self.rank == self.unknowns

    def to_json(self):
        return {"rows": self.rows, "unknowns": self.unknowns, "rank": self.rank}


@dataclass
class ClassGenerator:
    """Z in F[E] generating the intersection of <E + b_j>, with T_j (E + b_j) = Z."""

    a: object
    Z: SkewPoly
    witnesses: list
    bs: list
    minimality: RankCertificate = None

    @property
    def order(self):
        return self.Z.degree

    def lpdo(self):
        return self.Z.to_lpdo()

    def verify(self):
        t = self.Z.tower
        for T, b in zip(self.witnesses, self.bs):
            if T * self.Z.new([t.coerce(b), 1]) != self.Z:
                return False
        return True


def _coerce_all(values):
    t = None
    for v in values:
        if hasattr(v, "tower"):
            t = v.tower if t is None else join(t, v.tower)
    return t


def _skew_system(ring, factors, s):
    """Rows of T_1 F_1 = T_i F_i with T_i of degree s - 1 in F[E]."""
    n = len(factors)
    prods = []
    for F in factors:
        prods.append([ring.new([0] * k + [1]) * F for k in range(s)])
    rows = []
    for i in range(1, n):
        for d in range(s + 1):
            row = [ring.tower.zero] * (n * s)
            for k in range(s):
                c1 = prods[0][k].coeffs[d] if d < len(prods[0][k].coeffs) else ring.tower.zero
                ci = prods[i][k].coeffs[d] if d < len(prods[i][k].coeffs) else ring.tower.zero
                row[k] = c1
                row[i * s + k] = -ci
            rows.append(row)
    return rows


def same_symbol_generator(a, bs, tower=None):
    """The monic generator Z in F[E], E = d_x + a d_y, of the intersection of the <E + b>."""
    t = tower or _coerce_all([a, *bs])
    if t is None:
        raise PreconditionError("need a tower for rational inputs")
    a = t.coerce(a)
    uniq = []
    for b in bs:
        b = t.coerce(b)
        if all(b != c for c in uniq):
            uniq.append(b)
    if not uniq:
        raise PreconditionError("no ideals to intersect")
    ring = SkewPoly.along(t, a)
    factors = [ring.new([b, 1]) for b in uniq]
    n = len(factors)
    last = None
    for s in range(1, n + 1):
        if n == 1:
            Ts = [ring.const(1)]
        else:
            rows = _skew_system(ring, factors, s)
            sol = None
            for vec in nullspace(rows, n * s, t):
                T1 = ring.new(vec[:s])
                if not T1.is_zero():
                    sol = vec
                    break
            if sol is None:
                last = RankCertificate(len(rows), n * s, fraction_free_rank(rows, n * s))
                continue
            Ts = [ring.new(sol[i * s:(i + 1) * s]) for i in range(n)]
        Z = Ts[0] * factors[0]
        inv = Z.lc().inverse()
        Z = ring.const(inv) * Z
        Ts = [ring.const(inv) * T for T in Ts]
        g = ClassGenerator(a, Z, Ts, uniq, last)
        if not g.verify():
            raise VerificationError("class generator is not a common left multiple")
        return g
    raise AssertionError("no common multiple up to the number of ideals")


def is_right_divisible(Q, L):
    """Q = W L exactly for the first-order L."""
    _, R = divide_by_first_order(Q, L)
    return R.is_zero()


@dataclass
class PrincipalityResult:
    principal: bool
    Q: LPDO = None
    multipliers: list = field(default_factory=list)
    certificate: RankCertificate = None
    s: int = 0

    def to_json(self):
        out = {"principal": self.principal, "s": self.s}
        if self.principal:
            out["generator"] = str(self.Q)
            out["order"] = self.Q.order
        else:
            out["certificate"] = self.certificate.to_json()
        return out


def _monomials(order):
    return [(i, j) for i in range(order + 1) for j in range(order + 1 - i)]


def principality_test(classes):
    """Q generating the intersection of the <Z_i>, or a rank certificate that none exists.

    Searches V_i with ord(V_i) <= s - s_i and V_1 Z_1 = ... = V_l Z_l.
    """
    if not classes:
        raise PreconditionError("no classes given")
    for i, c in enumerate(classes):
        for d in classes[i + 1:]:
            if c.a == d.a:
                raise PreconditionError("classes share a direction; merge them first")
    Zs = [c.lpdo() for c in classes]
    t = Zs[0].tower
    for Z in Zs[1:]:
        t = join(t, Z.tower)
    Zs = [Z.in_tower(t) for Z in Zs]
    s = sum(c.order for c in classes)
    if len(Zs) == 1:
        return PrincipalityResult(True, Zs[0], [LPDO.scalar(t, 1)], None, s)
    monos = [_monomials(s - c.order) for c in classes]
    prods = [[LPDO.monomial(t, i, j) * Z for (i, j) in ms] for ms, Z in zip(monos, Zs)]
    offsets = []
    total = 0
    for ms in monos:
        offsets.append(total)
        total += len(ms)
    keys = set()
    for ps in prods:
        for p in ps:
            keys |= set(p.coeffs)
    keys = sorted(keys)
    rows = []
    for i in range(1, len(Zs)):
        for k in keys:
            row = [t.zero] * total
            for m, p in enumerate(prods[0]):
                row[offsets[0] + m] = p.coefficient(*k)
            for m, p in enumerate(prods[i]):
                row[offsets[i] + m] = -p.coefficient(*k)
            rows.append(row)
    basis = nullspace(rows, total, t)
    if not basis:
        cert = RankCertificate(len(rows), total, fraction_free_rank(rows, total))
        return PrincipalityResult(False, certificate=cert, s=s)
    vec = basis[0]
    Vs = []
    for ms, off in zip(monos, offsets):
        Vs.append(LPDO(t, {m: vec[off + k] for k, m in enumerate(ms) if not vec[off + k].is_zero()}))
    Q = Vs[0] * Zs[0]
    for V, Z in zip(Vs[1:], Zs[1:]):
        if V * Z != Q:
            raise VerificationError("multipliers do not agree")
    if Q.order != s:
        raise AssertionError(f"generator has order {Q.order}, expected {s}")
    lc = Q.coefficient(s, 0)
    if not lc.is_zero():
        inv = lc.inverse()
        Q = Q.left_scale(inv)
        Vs = [V.left_scale(inv) for V in Vs]
    return PrincipalityResult(True, Q, Vs, None, s)


def intersect_first_order(pairs, tower=None):
    """Intersection of <d_x + a_i d_y + b_i>: class generators, then the principality test."""
    t = tower or _coerce_all([v for p in pairs for v in p])
    groups = []
    for a, b in pairs:
        a, b = t.coerce(a), t.coerce(b)
        for g in groups:
            if g[0] == a:
                g[1].append(b)
                break
        else:
            groups.append((a, [b]))
    classes = [same_symbol_generator(a, bs, t) for a, bs in groups]
    return classes, principality_test(classes)
