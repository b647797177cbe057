"""Expansion of T(h G^(s0)) in the fractional derivatives of G.

Two independent routes are provided: iterating the differentiation rule
(y-derivatives first, then x-derivatives), and the closed partition formula.
Both work over any coefficient type supporting +, * and derive(var), and over
any exponent type supporting +, so the same code serves plain rational
exponents and the bi-graded (j, t) exponents used for polygons.
"""

from fractions import Fraction
from functools import lru_cache
from math import factorial


class BiExp(tuple):
    """Exponent pair (j, t): j accumulated known weight, t count of formal factors."""

    def __new__(cls, j, t):
        return tuple.__new__(cls, (Fraction(j), int(t)))

    def __add__(self, other):
        return BiExp(self[0] + other[0], self[1] + other[1])

    @property
    def j(self):
        return self[0]

    @property
    def t(self):
        return self[1]


def _add(out, key, value):
    cur = out.get(key)
    out[key] = value if cur is None else cur + value


def _prune(terms):
    return {k: v for k, v in terms.items() if not v.is_zero()}


def derive_graded(terms, var, gens, dcache=None):
    """d(sum h_s G^(s)) = sum (d h_s) G^(s) + h_s sum_i (d f_i) G^(s + w_i)."""
    if dcache is None:
        dcache = {}
    dfs = dcache.get(var)
    if dfs is None:
        dfs = [(f.derive(var), w) for f, w in gens]
        dfs = [(df, w) for df, w in dfs if not df.is_zero()]
        dcache[var] = dfs
    out = {}
    for s, h in terms.items():
        dh = h.derive(var)
        if not dh.is_zero():
            _add(out, s, dh)
        for df, w in dfs:
            _add(out, s + w, h * df)
    return _prune(out)


def expand_recursive(T, h, s0, gens, coerce=None):
    """T(h G^(s0)) by iterating the differentiation rule."""
    coerce = coerce or (lambda c: c)
    dcache = {}
    ychain = [{s0: h} if not h.is_zero() else {}]
    xcache = {}

    def dyn(j):
        while len(ychain) <= j:
            ychain.append(derive_graded(ychain[-1], "y", gens, dcache))
        return ychain[j]

    def dxn(i, j):
        if i == 0:
            return dyn(j)
        key = (i, j)
        if key not in xcache:
            xcache[key] = derive_graded(dxn(i - 1, j), "x", gens, dcache)
        return xcache[key]

    out = {}
    for (i, j), c in sorted(T.coeffs.items()):
        c = coerce(c)
        for s, v in dxn(i, j).items():
            _add(out, s, c * v)
    return _prune(out)


@lru_cache(maxsize=None)
def _multisets(L, R, K):
    """Multisets of triples (l, r, kappa), l + r >= 1, with sum l = L and sum r = R.

    Each result is a tuple of ((l, r, kappa), multiplicity).
    """
    parts = [(l, r, k) for l in range(L + 1) for r in range(R + 1) if l + r >= 1 for k in range(K)]
    out = []

    def rec(idx, L, R, chosen):
        if L == 0 and R == 0:
            out.append(tuple(chosen))
            return
        if idx == len(parts):
            return
        l, r, k = parts[idx]
        w = 0
        while w * l <= L and w * r <= R:
            if w:
                chosen.append(((l, r, k), w))
            rec(idx + 1, L - w * l, R - w * r, chosen)
            if w:
                chosen.pop()
            w += 1

    rec(0, L, R, [])
    return tuple(out)


def _deriv(e, l, r, cache):
    key = (id(e), l, r)
    if key not in cache:
        if l > 0:
            cache[key] = _deriv(e, l - 1, r, cache).derive("x")
        elif r > 0:
            cache[key] = _deriv(e, 0, r - 1, cache).derive("y")
        else:
            cache[key] = e
        cache[(key, "ref")] = e
    return cache[key]


def expand_closed(T, h, s0, gens, coerce=None):
    """T(h G^(s0)) by the closed partition formula."""
    coerce = coerce or (lambda c: c)
    cache = {}
    out = {}
    K = len(gens)
    for (i, k), c in sorted(T.coeffs.items()):
        c = coerce(c)
        for l0 in range(i + 1):
            for r0 in range(k + 1):
                dh = _deriv(h, l0, r0, cache)
                if dh.is_zero():
                    continue
                base = Fraction(factorial(i) * factorial(k), factorial(l0) * factorial(r0))
                for ms in _multisets(i - l0, k - r0, K):
                    coef = base
                    prod = None
                    key = s0
                    skip = False
                    for (l, r, kap), w in ms:
                        coef /= (factorial(l) * factorial(r)) ** w * factorial(w)
                        f, wt = gens[kap]
                        df = _deriv(f, l, r, cache)
                        if df.is_zero():
                            skip = True
                            break
                        p = df ** w
                        prod = p if prod is None else prod * p
                        for _ in range(w):
                            key = key + wt
                    if skip:
                        continue
                    term = dh * (c * coef) if prod is None else dh * prod * (c * coef)
                    _add(out, key, term)
    return _prune(out)
