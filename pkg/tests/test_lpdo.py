from hypothesis import given, settings

from fdseries.dfield import base_tower
from fdseries.lpdo import (LPDO, SkewPoly, change_coordinates, divide_by_first_order, mult_of,
                           symbol_linear_factors)
from strategies import nonzero_coeffs, operator, operator_tables, poly, poly_coeffs


def ops(t):
    return LPDO.dx(t), LPDO.dy(t), t.x, t.y


def test_leibniz_composition(t):
    Dx, Dy, x, y = ops(t)
    assert Dx * (x * Dy) == x * Dx * Dy + Dy
    assert str(Dx * (x * Dy)) == "x*Dx*Dy + Dy"


def test_product_of_first_order(t):
    Dx, Dy, x, y = ops(t)
    T = (Dx + Dy + x) * (Dx + Dy)
    assert T == Dx ** 2 + 2 * Dx * Dy + Dy ** 2 + x * Dx + x * Dy
    assert T * LPDO.scalar(t, 1) == T


def test_apply(t):
    Dx, Dy, x, y = ops(t)
    assert (Dx ** 2 - Dy ** 2).apply((x + y) ** 2).is_zero()
    assert Dx.apply(y).is_zero()
    assert (Dx * Dy).apply(x * y) == 1


def test_symbol_and_graded_part(t):
    Dx, Dy, x, y = ops(t)
    T = Dx ** 2 + 2 * Dx * Dy + Dy ** 2 + Dx
    assert str(T.symbol()) == "xi^2 + 2*xi*eta + eta^2"
    assert T.graded_part(1) == Dx
    assert str((x * Dx * Dy + y * Dx).symbol()) == "x*xi*eta"


def test_linear_factors(t):
    Dx, Dy, x, y = ops(t)
    f = symbol_linear_factors(((Dx + Dy) ** 2).symbol())
    assert [(l.a1, l.a2, l.multiplicity) for l in f.linear] == [(1, 1, 2)]
    f = symbol_linear_factors((Dx ** 2 - Dy ** 2).symbol())
    assert sorted((l.a2.as_fraction(), l.multiplicity) for l in f.linear) == [(-1, 1), (1, 1)]
    assert not f.residual


def test_residual_then_adjoin(t):
    Dx, Dy, x, y = ops(t)
    T = Dx ** 2 - x * Dy ** 2
    f = symbol_linear_factors(T.symbol())
    assert not f.linear and f.residual_degree() == 2
    p, _ = f.residual[0]
    t2, s = t.adjoin_algebraic("s", p.coeffs)
    f2 = symbol_linear_factors(T.in_tower(t2).symbol())
    assert sorted(str(l.a2) for l in f2.linear) == ["-s", "s"]


def test_multiplicity(t):
    Dx, Dy, x, y = ops(t)
    T = (Dx + Dy) ** 2 * Dx
    assert mult_of(T, (1, 1)) == 2
    assert mult_of(T, (1, 0)) == 1
    assert mult_of(T, (1, 2)) == 0


def test_adjoint_examples(t):
    Dx, Dy, x, y = ops(t)
    assert Dx.adjoint() == -Dx
    assert (x * Dx).adjoint() == -x * Dx - 1
    assert (Dx * Dy).adjoint() == Dx * Dy


def test_divide_by_first_order(t):
    Dx, Dy, x, y = ops(t)
    S, R = divide_by_first_order((Dx + Dy + x) * (Dx + Dy), Dx + Dy)
    assert S == Dx + Dy + x and R.is_zero()
    S, R = divide_by_first_order(Dx ** 2 + Dy, Dx)
    assert S == Dx and R == Dy
    S, R = divide_by_first_order(Dx + Dy, Dx + Dy)
    assert S == 1 and R.is_zero()


def test_skew_ring(t):
    ring = SkewPoly.along(t, t.one)
    E = ring.gen()
    one = ring.const(1)
    assert E * (E + one) == E * E + E
    q, r = (E * E + E).right_div(E + one)
    assert q == E and r.is_zero()
    q, r = E.right_div(E)
    assert q == one and r.is_zero()
    assert (E * E + E).to_lpdo() == (LPDO.dx(t) + LPDO.dy(t)) ** 2 + LPDO.dx(t) + LPDO.dy(t)


def test_change_coordinates_preserves_order(t):
    Dx, Dy, x, y = ops(t)
    T = Dx ** 2 - Dy ** 2
    U = change_coordinates(T, [[1, 1], [1, -1]])
    assert U.order == 2


@settings(max_examples=25, deadline=None)
@given(operator_tables(1), operator_tables(1), operator_tables(1))
def test_composition_is_associative(a, b, c):
    t = base_tower()
    A, B, C = operator(t, 1, a), operator(t, 1, b), operator(t, 1, c)
    assert (A * B) * C == A * (B * C)


@settings(max_examples=25, deadline=None)
@given(operator_tables(2), operator_tables(1))
def test_adjoint_is_an_anti_involution(a, b):
    t = base_tower()
    A, B = operator(t, 2, a), operator(t, 1, b)
    assert A.adjoint().adjoint() == A
    assert (A * B).adjoint() == B.adjoint() * A.adjoint()


@settings(max_examples=25, deadline=None)
@given(operator_tables(1), operator_tables(1), poly_coeffs)
def test_apply_is_a_module_action(a, b, f):
    t = base_tower()
    A, B, f = operator(t, 1, a), operator(t, 1, b), poly(t, f)
    assert (A * B).apply(f) == A.apply(B.apply(f))


@settings(max_examples=25, deadline=None)
@given(operator_tables(1), operator_tables(1))
def test_symbol_is_multiplicative(a, b):
    t = base_tower()
    A, B = operator(t, 1, a), operator(t, 1, b)
    if A.order == 1 and B.order == 1:
        assert (A * B).symbol() == A.symbol() * B.symbol()


@settings(max_examples=25, deadline=None)
@given(operator_tables(2), poly_coeffs, poly_coeffs)
def test_division_reconstructs(a, alpha, beta):
    t = base_tower()
    T = operator(t, 2, a)
    L = LPDO(t, {(1, 0): 1, (0, 1): poly(t, alpha), (0, 0): poly(t, beta)})
    S, R = divide_by_first_order(T, L)
    assert S * L + R == T
    assert R.order_dx() <= 0


@settings(max_examples=20, deadline=None)
@given(nonzero_coeffs)
def test_multiplicity_of_products(c):
    t = base_tower()
    a = poly(t, c)
    L = LPDO(t, {(1, 0): 1, (0, 1): a})
    assert mult_of(L * L, (1, a)) == 2
    assert mult_of(L * LPDO.dx(t), (1, a)) == 1
