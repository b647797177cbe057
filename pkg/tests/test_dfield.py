from fractions import Fraction

import pytest
from hypothesis import given, settings

from fdseries.dfield import TruncatedPowerSeries, UPoly, base_tower, expand_series, nullspace
from fdseries.dfield.linalg import fraction_free_rank
from fdseries.errors import (DivisionByZero, IntegrabilityError, PoleError, PreconditionError,
                             ReducibleMinimalPolynomial)
from strategies import nonzero_coeffs, poly, poly_coeffs


def test_inverse_pair(t):
    assert (t.x / t.y) * (t.y / t.x) == 1
    assert (t.x + (-t.x)).is_zero()


def test_quotient_is_reduced(t):
    q = (t.x ** 2 - t.y ** 2) / (t.x - t.y)
    assert q == t.x + t.y
    assert str(q) == "x + y"


def test_rational_derivatives(t):
    assert (t.x * t.y).dx() == t.y
    assert (1 / t.y).dy() == -1 / t.y ** 2


def test_division_by_zero(t):
    with pytest.raises(DivisionByZero):
        t.x / t.zero


def test_sqrt_x_derivative(t):
    t2, a = t.adjoin_algebraic("a", [-t.x, 0, 1])
    assert a * a == t2.x
    assert a.dx() == 1 / (2 * a)
    assert a.dy().is_zero()
    # reduction modulo the minimal polynomial
    assert a ** 3 == t2.x * a
    assert (1 / a) * a == 1


def test_imaginary_unit_is_constant(t):
    t2, i = t.adjoin_algebraic("i", [1, 0, 1])
    assert i * i == -1
    assert i.dx().is_zero() and i.dy().is_zero()


def test_degree_one_returns_value(t):
    t2, v = t.adjoin_algebraic("w", [-t.x, 1])
    assert t2 is t and v == t.x


def test_reducible_minimal_polynomial_rejected(t):
    with pytest.raises(ReducibleMinimalPolynomial):
        t.adjoin_algebraic("r", [-t.x ** 2, 0, 1])


def test_differential_generator(t):
    t2, w = t.adjoin_differential("w", -t.y, -t.x)
    assert w.dx() == -t2.y and w.dy() == -t2.x
    assert w.dx().dy() == w.dy().dx()
    t3, v = t.adjoin_differential("v", 1, -1)
    assert (v + t3.y).dx() == 1


def test_differential_integrability(t):
    with pytest.raises(IntegrabilityError):
        t.adjoin_differential("w", t.y, t.y)


def test_name_reuse_rejected(t):
    t2, _ = t.adjoin_algebraic("s", [-t.x, 0, 1])
    with pytest.raises(PreconditionError):
        t2.adjoin_algebraic("s", [-t.y, 0, 1])


def test_jets_commute_with_relation(t):
    # d_x f = -x d_y f
    t2, f = t.adjoin_jets("f", 1, "x", lambda u: -u.x * u.jet("f", 0, 1))
    assert f.dx() == -t2.x * t2.jet("f", 0, 1)
    assert f.dx().dy() == f.dy().dx()
    assert f.dy().dx() == -t2.x * t2.jet("f", 0, 2)


def test_tower_script_replays(t):
    t2, a = t.adjoin_algebraic("a", [-t.x, 0, 1])
    assert t2.script() == [r.declaration() for r in t2.records]
    assert t2.names() == ["x", "y", "a"]


def test_series_geometric(t):
    s = expand_series(1 / (1 - t.x), (0, 0), 3)
    assert s == TruncatedPowerSeries((0, 0), 3, {(0, 0): 1, (1, 0): 1, (2, 0): 1, (3, 0): 1})


def test_series_shifted_center(t):
    s = expand_series(t.x * t.y, (1, 1), 2)
    assert s == TruncatedPowerSeries((1, 1), 2, {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1})


def test_series_pole(t):
    with pytest.raises(PoleError):
        expand_series(1 / t.x, (0, 0), 3)


def test_series_integrate_and_inverse():
    s = TruncatedPowerSeries((0, 0), 4, {(0, 0): 2, (1, 1): 3})
    assert (s * s.inverse()) == TruncatedPowerSeries.constant((0, 0), 4, 1)
    assert s.integrate_x(s.truncate(0)).derive("x").truncate(3) == s.truncate(3)


def test_upoly_factor(t):
    p = UPoly(t, [-1, 0, 1])
    facs = p.factor()
    assert len(facs) == 2 and all(f.degree == 1 and m == 1 for f, m in facs)
    assert sorted(r.as_fraction() for r, _ in p.roots()) == [-1, 1]


def test_nullspace_and_rank(t):
    rows = [[t.one, t.x], [t.y, t.x * t.y]]
    basis = nullspace(rows, 2, t)
    assert len(basis) == 1
    v = basis[0]
    assert all((r[0] * v[0] + r[1] * v[1]).is_zero() for r in rows)
    assert fraction_free_rank(rows, 2) == 1
    assert fraction_free_rank([[t.one, t.x], [t.y, t.one]], 2) == 2


@settings(max_examples=40, deadline=None)
@given(poly_coeffs, poly_coeffs, nonzero_coeffs)
def test_field_axioms(a, b, c):
    t = base_tower()
    a, b, c = poly(t, a), poly(t, b), poly(t, c)
    assert a * (b + c) == a * b + a * c
    assert (a / c) * c == a
    assert (a + b) - b == a


@settings(max_examples=40, deadline=None)
@given(poly_coeffs, nonzero_coeffs)
def test_leibniz_and_commuting_derivations(a, b):
    t = base_tower()
    a, b = poly(t, a), poly(t, b)
    e = a / b
    for var in ("x", "y"):
        assert (a * e).derive(var) == a.derive(var) * e + a * e.derive(var)
    assert e.dx().dy() == e.dy().dx()


@settings(max_examples=30, deadline=None)
@given(poly_coeffs, poly_coeffs)
def test_series_is_a_ring_map(a, b):
    t = base_tower()
    a, b = poly(t, a), poly(t, b)
    center = (Fraction(1, 2), -1)
    sa, sb = expand_series(a, center, 5), expand_series(b, center, 5)
    assert expand_series(a * b, center, 5) == sa * sb
    assert expand_series(a.dx(), center, 4) == sa.derive("x").truncate(4)
