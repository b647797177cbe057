"""Hypothesis strategies for elements and operators over Q(x, y)."""

from hypothesis import strategies as st

from fdseries.lpdo import LPDO

small = st.integers(min_value=-3, max_value=3)
MONOMIALS = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


def poly(t, coeffs):
    out = t.zero
    for (i, j), c in zip(MONOMIALS, coeffs):
        if c:
            out = out + c * t.x ** i * t.y ** j
    return out


poly_coeffs = st.lists(small, min_size=6, max_size=6)
nonzero_coeffs = poly_coeffs.filter(any)


def operator(t, order, table):
    coeffs = {}
    k = 0
    for i in range(order + 1):
        for j in range(order + 1 - i):
            coeffs[(i, j)] = poly(t, table[k])
            k += 1
    return LPDO(t, coeffs)


def operator_tables(order):
    n = (order + 1) * (order + 2) // 2
    return st.lists(st.lists(small, min_size=6, max_size=6), min_size=n, max_size=n)
