from hypothesis import given, settings

from fdseries.dfield import base_tower
from fdseries.lpdo import LPDO
from fdseries.ore import (DxPoly, OreFraction, divide_dx, dy_poly, is_associate, left_gcd,
                          ore_swap, ore_swap_right, symbol_gcd)
from fdseries.ore.swap import _dy_lpdo
from strategies import nonzero_coeffs, operator, operator_tables, poly


def ops(t):
    return LPDO.dx(t), LPDO.dy(t), t.x, t.y


def test_swap_commuting(t):
    Dx, Dy, x, y = ops(t)
    bbar, pbar = ore_swap(x * Dx, Dy)
    assert bbar.degree == 1 and pbar == x * Dx


def test_swap_with_correction(t):
    Dx, Dy, x, y = ops(t)
    bbar, pbar = ore_swap(y * Dx, Dy)
    assert _dy_lpdo(t, bbar.coeffs) == Dy - LPDO.scalar(t, 1 / y)
    assert pbar == y * Dx
    assert _dy_lpdo(t, bbar.coeffs) * (y * Dx) == pbar * Dy


def test_right_swap(t):
    Dx, Dy, x, y = ops(t)
    pbar, bbar = ore_swap_right(Dy, y * Dx)
    assert (y * Dx) * _dy_lpdo(t, bbar.coeffs) == Dy * pbar


def test_divide_dx(t):
    Dx, Dy, x, y = ops(t)
    A = DxPoly.from_lpdo(Dx * Dx + Dy * Dx)
    B = DxPoly.from_lpdo(Dx + 1)
    Q, R = divide_dx(A, B)
    assert Q * B + R == A
    assert R.degree < B.degree


def test_fraction_arithmetic(t):
    Dx, Dy, x, y = ops(t)
    assert OreFraction(Dx, dy_poly(t, [0, 1])) * OreFraction(Dy) == OreFraction(Dx)
    half = OreFraction(Dx, dy_poly(t, [0, 1]))
    assert (half + half) * OreFraction(Dy) == OreFraction(2 * Dx)
    assert (half - half).p.is_zero()


def test_gcd_of_multiples(t):
    Dx, Dy, x, y = ops(t)
    L = Dx + x * Dy
    res = left_gcd([L, Dy * L])
    assert is_associate(res.p, L)
    assert res.verify([L, Dy * L])


def test_gcd_of_common_right_factor(t):
    Dx, Dy, x, y = ops(t)
    a = (Dx + Dy) * (Dx - Dy)
    b = (Dx + LPDO.scalar(t, x)) * (Dx - Dy)
    res = left_gcd([a, b])
    assert is_associate(res.p, Dx - Dy)
    assert res.combination is not None and res.verify([a, b])
    res = left_gcd([a, b], bezout=False)
    assert res.combination is None and res.verify([a, b])


def test_symbol_gcd(t):
    Dx, Dy, x, y = ops(t)
    g, e = symbol_gcd([(Dx + Dy) * (Dx - Dy), (Dx + Dy) * Dx])
    assert e == 1 and g == (Dx + Dy).symbol()
    _, e = symbol_gcd([Dx + Dy, Dx - Dy])
    assert e == 0


def test_associates(t):
    Dx, Dy, x, y = ops(t)
    assert is_associate(Dx + Dy, x * (Dx + Dy))
    assert not is_associate(Dx + Dy, Dx - Dy)


@settings(max_examples=20, deadline=None)
@given(operator_tables(1), nonzero_coeffs)
def test_swap_identity(table, c):
    t = base_tower()
    p = operator(t, 1, table)
    b = dy_poly(t, [poly(t, c), t.one])
    bbar, pbar = ore_swap(p, b)
    assert _dy_lpdo(t, bbar.coeffs) * p == pbar * _dy_lpdo(t, b.coeffs)
    assert not bbar.is_zero()


@settings(max_examples=15, deadline=None)
@given(nonzero_coeffs, nonzero_coeffs)
def test_gcd_recovers_shared_factor(a, c):
    t = base_tower()
    Dx, Dy = LPDO.dx(t), LPDO.dy(t)
    L = Dx + poly(t, a) * Dy
    g1, g2 = Dy * L, (Dx + poly(t, c)) * L
    res = left_gcd([g1, g2], bezout=False)
    assert res.verify([g1, g2])
    # d_y is a unit of R, so the ideal is generated by L
    assert is_associate(res.p, L)


@settings(max_examples=20, deadline=None)
@given(operator_tables(2), operator_tables(1))
def test_divide_dx_reconstructs(a, b):
    t = base_tower()
    A, B = DxPoly.from_lpdo(operator(t, 2, a)), DxPoly.from_lpdo(operator(t, 1, b))
    if B.is_zero():
        return
    Q, R = divide_dx(A, B)
    assert Q * B + R == A
    assert R.is_zero() or R.degree < B.degree
