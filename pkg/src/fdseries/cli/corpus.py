"""Seeded generators of random operators for property suites."""

import random
from fractions import Fraction

from ..errors import PreconditionError
from ..lpdo.operator import LPDO


def _linear(rng, t, deg=1, lo=-2, hi=2):
    c = [rng.randint(lo, hi) for _ in range(3)]
    if not deg:
        return t.const(c[0])
    return c[0] + c[1] * t.x + c[2] * t.y


def _poly_coeff(rng, t, deg):
    """Random polynomial with small integer coefficients and total degree <= deg."""
    out = t.zero
    for d in range(deg + 1):
        for i in range(d + 1):
            if rng.random() < 0.5:
                out = out + rng.randint(-2, 2) * t.x ** i * t.y ** (d - i)
    return out


def random_operator(rng, t, order, deg=1):
    coeffs = {}
    for i in range(order + 1):
        for j in range(order + 1 - i):
            coeffs[(i, j)] = _poly_coeff(rng, t, deg)
    if all(coeffs.get((i, order - i), t.zero).is_zero() for i in range(order + 1)):
        coeffs[(order, 0)] = t.one
    return LPDO(t, coeffs)


def first_order_product(rng, t, count=None):
    """A product of 1..3 operators d_x + a d_y + b, with a, b of degree <= 1."""
    k = count or rng.randint(1, 3)
    T = None
    for _ in range(k):
        L = LPDO(t, {(1, 0): 1, (0, 1): _linear(rng, t, 1, -1, 1), (0, 0): _linear(rng, t)})
        T = L if T is None else T * L
    return T


def designated_factor(rng, t, m, n):
    """(T, (1, c)) with (xi + c eta)^m exactly dividing the symbol of the order-n T."""
    if n < m:
        raise PreconditionError("order below the multiplicity")
    c = Fraction(rng.choice([1, -1, 2, 0, Fraction(1, 2)]))
    poly = {0: Fraction(1)}
    for _ in range(m):
        new = {}
        for k, v in poly.items():
            new[k + 1] = new.get(k + 1, 0) + v
            new[k] = new.get(k, 0) + v * c
        poly = new
    rest = n - m
    while True:
        rc = [Fraction(rng.randint(-2, 2)) for _ in range(rest + 1)]
        if rest:
            rc[-1] = Fraction(rng.choice([1, 2]))
        else:
            rc = [Fraction(1)]
        # the cofactor must not vanish at xi/eta = -c
        if sum(b * (-c) ** j for j, b in enumerate(rc)) != 0:
            break
    sym = {}
    for i, a in poly.items():
        for j, b in enumerate(rc):
            sym[i + j] = sym.get(i + j, 0) + a * b
    coeffs = {}
    for i, v in sym.items():
        if v:
            coeffs[(i, n - i)] = t.const(v)
    for o in range(n):
        for i in range(o + 1):
            if rng.random() < 0.6:
                coeffs[(i, o - i)] = _linear(rng, t)
    return LPDO(t, coeffs), (1, c)


def ore_pair(rng, t):
    """(S1, S2, L): random S_i of order <= 2 and a first-order L."""
    S1 = random_operator(rng, t, rng.randint(1, 2))
    S2 = random_operator(rng, t, rng.randint(1, 2))
    L = LPDO(t, {(1, 0): 1, (0, 1): _linear(rng, t, 1, -1, 2), (0, 0): _linear(rng, t)})
    return S1, S2, L


def generate(kind, seed, count, t):
    rng = random.Random(seed)
    out = []
    for k in range(count):
        if kind == "factor":
            out.append(first_order_product(rng, t))
        elif kind == "newton":
            m = 1 + k % 3
            out.append(designated_factor(rng, t, m, rng.randint(m, 3))[0])
        elif kind == "random":
            out.append(random_operator(rng, t, rng.randint(1, 3)))
        else:
            raise PreconditionError(f"unknown corpus kind {kind!r}")
    return out
