"""Power-series solutions of separable operators as sums of specialized series solutions."""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import sympy

from ..errors import PoleError, PreconditionError, VerificationError
from ..dfield.series import TruncatedPowerSeries, _truncate, expand_series
from ..dfield.tower import fmpq
from ..lpdo.symbol import symbol_linear_factors


def _derivs(u, word, cache):
    """u differentiated along word ('x'/'y' characters), cached by word."""
    if word not in cache:
        cache[word] = u if not word else _derivs(u, word[:-1], cache).derive(word[-1])
    return cache[word]


class _Expansion:
    """sum_k u_k G^(k)(f) with series coefficients; d (u G^(k)) = d(u) G^(k) + u d(f) G^(k+1)."""

    def __init__(self, terms, df):
        self.terms = terms
        self.df = df

    def derive(self, var):
        out = {}
        for k, u in self.terms.items():
            du = u.derive(var)
            out[k] = out[k] + du if k in out else du
            v = u * self.df[var]
            out[k + 1] = out[k + 1] + v if k + 1 in out else v
        return _Expansion(out, self.df)


def expand_on_series(T, coeffs, f, h):
    """Coefficients of G^(k)(f) in T(h G^(0)(f)), all as truncated series."""
    df = {"x": f.derive("x"), "y": f.derive("y")}
    cache = {}

    def word(i, j):
        w = "x" * i + "y" * j
        if w not in cache:
            cache[w] = _Expansion({0: h}, df) if not w else word(*_shorter(i, j)).derive(w[-1])
        return cache[w]

    out = {}
    for (i, j), c in coeffs.items():
        for k, u in word(i, j).terms.items():
            v = c * u
            out[k] = out[k] + v if k in out else v
    return out


def _shorter(i, j):
    return (i, j - 1) if j else (i - 1, j)


def apply_on_series(coeffs, u):
    out = None
    cache = {}
    for (i, j), c in coeffs.items():
        term = c * _derivs(u, "x" * i + "y" * j, cache)
        out = term if out is None else out + term
    return out


@dataclass
class SeparableData:
    """Directions a_i with d_x f_i - a_i d_y f_i = 0; per direction the series f_i and h_{j,i}."""

    T: object
    center: tuple
    N: int
    directions: list
    values: list
    f: list
    h: list
    coeffs: dict = field(repr=False, default=None)

    def to_json(self):
        return {
            "center": [str(c) for c in self.center],
            "N": self.N,
            "directions": [str(a) for a in self.directions],
            "values": [str(v) for v in self.values],
            "f": [str(f.truncate(min(3, self.N))) for f in self.f],
        }


def _picard_x(rhs_of, initial, order):
    """u with d_x u = rhs_of(u) and u(x0, y) = initial, through the given order."""
    u = initial
    for _ in range(order + 2):
        u = rhs_of(u).integrate_x(initial).truncate(order)
    return u


def separable_prepare(T, center, N):
    n = T.order
    fac = symbol_linear_factors(T.symbol())
    if fac.residual or any(lf.multiplicity != 1 or lf.a1.is_zero() for lf in fac.linear):
        raise PreconditionError("symbol must split into distinct factors xi + a eta")
    if len(fac.linear) != n:
        raise PreconditionError("symbol is not separable")
    center = (Fraction(center[0]), Fraction(center[1]))
    point = {"x": center[0], "y": center[1]}
    dirs, vals = [], []
    for lf in fac.linear:
        a = -(lf.a2 / lf.a1)
        try:
            v = a.evaluate(point).as_fraction()
        except PoleError:
            raise PreconditionError(f"direction {a} has a pole at the center; choose another center")
        dirs.append(a)
        vals.append(v)
    if len(set(vals)) != n:
        raise PreconditionError("directions coincide at the center; perturb the center")
    if T.coefficient(n, 0).evaluate(point).is_zero():
        raise PreconditionError("leading coefficient vanishes at the center")
    order = sorted(range(n), key=lambda i: -vals[i])
    dirs = [dirs[i] for i in order]
    vals = [vals[i] for i in order]
    W = N + n + 2
    try:
        coeffs = {m: expand_series(c, center, W) for m, c in T.coeffs.items()}
        aser = [expand_series(a, center, W) for a in dirs]
    except PoleError as e:
        raise PreconditionError(f"coefficient pole at the center: {e}")
    Y = TruncatedPowerSeries(center, W, {(0, 1): 1})
    one = TruncatedPowerSeries.constant(center, W, 1)
    zero = TruncatedPowerSeries(center, W)
    X = TruncatedPowerSeries(center, W, {(1, 0): 1})
    fs, hs = [], []
    for a in aser:
        f = _picard_x(lambda u: a * u.derive("y"), Y, W)
        fs.append(f)
        B1 = expand_on_series(T, coeffs, f, one)
        if not B1.get(n, zero).truncate(W - n - 1).is_zero():
            raise VerificationError("f is not characteristic through the working order")
        beta = B1.get(n - 1, zero)
        gx = expand_on_series(T, coeffs, f, X).get(n - 1, zero) - X * beta
        gy = expand_on_series(T, coeffs, f, Y).get(n - 1, zero) - Y * beta
        if gx.constant_term() == 0:
            raise PreconditionError("transport equation degenerates at the center")
        inv = gx.inverse()
        hj = []
        for j in range(N + 1):
            rhs = zero
            for l in range(1, min(j, n - 1) + 1):
                rhs = rhs - expand_on_series(T, coeffs, f, hj[j - l]).get(n - 1 - l, zero)
            init = one if j == 0 else zero
            h = _picard_x(lambda u: (rhs - gy * u.derive("y") - beta * u) * inv, init, W)
            hj.append(h)
        hs.append(hj)
    data = SeparableData(T, center, N, dirs, vals, fs, hs, coeffs)
    check_prepared(data)
    return data


def check_prepared(data):
    """f_i(center) = 0, d_y f_i(center) != 0, h_i(center) != 0 and the defining equations to N."""
    N, n = data.N, data.T.order
    for i, (a, f, hj) in enumerate(zip(data.directions, data.f, data.h)):
        aser = expand_series(a, data.center, N + 1)
        if f.constant_term() != 0 or f.coefficient(0, 1) == 0 or hj[0].constant_term() == 0:
            raise VerificationError(f"normalization fails for direction {i}")
        if not (f.derive("x") - aser * f.derive("y")).truncate(N).is_zero():
            raise VerificationError(f"f_{i} is not characteristic through order {N}")
        U = sum_for_direction(data, i, {0: Fraction(1)}, N)
        r = apply_on_series(data.coeffs, U).truncate(N - n)
        if not r.is_zero():
            raise VerificationError(f"series solution for direction {i} fails through order {N - n}")
    return True


def _phi(data, i, m, N):
    """sum_j h_{j,i} f_i^{m+j}/(m+j)! through order N.

    f has valuation 1, so h_j f^{m+j} is exact through order(h_j) + m + j.
    """
    f, hj = data.f[i], data.h[i]
    poly = f.poly * 0
    fp = _truncate(f.poly ** m, N) if m else f.poly ** 0
    for j in range(0, N - m + 1):
        if hj[j].order + m + j < N:
            raise VerificationError("transport solution known to too low an order")
        poly = poly + _truncate(hj[j].poly * fp, N) * fmpq(Fraction(1, factorial(m + j)))
        fp = _truncate(fp * f.poly, N)
    return TruncatedPowerSeries(data.center, N, poly)


def sum_for_direction(data, i, cs, N):
    out = TruncatedPowerSeries(data.center, N)
    for m, c in cs.items():
        if c:
            out = out + _phi(data, i, m, N) * c
    return out


@dataclass
class Reconstruction:
    constants: dict
    residual: TruncatedPowerSeries
    N: int

    @property
    def exact(self):
        return self.residual.is_zero()

    def table(self):
        return [{"k": k, "i": i + 1, "c": f"{c.numerator}/{c.denominator}"}
                for (k, i), c in sorted(self.constants.items())]

    def to_json(self):
        return {"constants": self.table(), "residual": "0" if self.exact else str(self.residual),
                "N": self.N}


def reconstruct_sum(data, constants, N):
    out = TruncatedPowerSeries(data.center, N)
    for (k, i), c in constants.items():
        if c:
            out = out + _phi(data, i, k, N) * c
    return out


def separable_reconstruct(T, solution, data, N=None):
    """Constants c_{k,i} with solution = sum_i sum_k c_{k,i} phi_{k,i} through order N.

    For k < n - 1 only the first k + 1 directions are used, which makes each
    degree-k system square.
    """
    N = data.N if N is None else N
    n = T.order
    if N > data.N:
        raise PreconditionError("data prepared to a lower order")
    if T != data.T:
        raise PreconditionError("data prepared for a different operator")
    if solution.center != data.center:
        raise PreconditionError("solution expanded at a different center")
    if solution.order < N:
        raise PreconditionError("solution known to a lower order")
    r = apply_on_series(data.coeffs, solution.truncate(N)).truncate(N - n)
    if not r.is_zero():
        raise PreconditionError("input is not annihilated by T")
    phis = {}
    residual = solution.truncate(N)
    consts = {}
    for k in range(N + 1):
        active = list(range(min(k + 1, n)))
        rows = list(range(min(k, n - 1) + 1))
        for i in active:
            phis[(k, i)] = _phi(data, i, k, N)
        M = sympy.Matrix([[sympy.Rational(phis[(k, i)].coefficient(p, k - p)) for i in active]
                          for p in rows])
        rhs = sympy.Matrix([sympy.Rational(residual.coefficient(p, k - p)) for p in rows])
        if M.det() == 0:
            raise VerificationError(f"singular system at degree {k}")
        sol = M.LUsolve(rhs)
        for i, c in zip(active, sol):
            c = Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q))
            consts[(k, i)] = c
            if c:
                residual = residual - phis[(k, i)] * c
    return Reconstruction(consts, residual, N)
