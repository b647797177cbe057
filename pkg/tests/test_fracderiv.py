from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fdseries.dfield import base_tower
from fdseries.errors import PreconditionError
from fdseries.fracderiv import (FracSeries, GSymbol, adjoin_characteristic, expand_apply,
                                expand_apply_closed, specialize, verify_series)
from fdseries.lpdo import LPDO
from strategies import nonzero_coeffs, operator, operator_tables, poly, poly_coeffs

HALF = Fraction(1, 2)


def formal_pair(t):
    """A tower with two free differential indeterminates f, g and h."""
    t, f = t.adjoin_jets("f")
    t, g = t.adjoin_jets("g")
    t, h = t.adjoin_jets("h")
    return t, f, g, h


def test_exponents_must_decrease(t):
    with pytest.raises(PreconditionError):
        GSymbol([t.x, t.y], [Fraction(3, 2)])
    G = GSymbol([t.x, t.y], [HALF])
    assert G.q == 2 and G.k0 == 2


def test_first_derivative_rule(t):
    t, f, g, h = formal_pair(t)
    G = GSymbol([f, g], [HALF])
    e = expand_apply(LPDO.dx(t), h, 0, G)
    assert e.coefficient(0) == h.dx()
    assert e.coefficient(HALF) == h * g.dx()
    assert e.coefficient(1) == h * f.dx()
    assert e.exponents() == [1, HALF, 0]


def test_single_generator_shift(t):
    t, f, _, _ = formal_pair(t)
    G = GSymbol([f])
    s = Fraction(-3, 2) * 2  # any exponent
    e = expand_apply(LPDO.dx(t), t.one, s, G)
    assert e.exponents() == [1 + s]
    assert e.coefficient(1 + s) == f.dx()


def test_mixed_second_derivative(t):
    t, f, _, h = formal_pair(t)
    G = GSymbol([f])
    e = expand_apply(LPDO.dx(t) * LPDO.dy(t), h, 0, G)
    assert e.coefficient(0) == h.dx().dy()
    assert e.coefficient(1) == h.dx() * f.dy() + h.dy() * f.dx() + h * f.dx().dy()
    assert e.coefficient(2) == h * f.dx() * f.dy()


def test_identity_operator(t):
    t, f, _, h = formal_pair(t)
    G = GSymbol([f])
    e = expand_apply(LPDO.scalar(t, 1), h, Fraction(-1, 3), G)
    assert e.exponents() == [Fraction(-1, 3)] and e.coefficient(Fraction(-1, 3)) == h


def test_symbol_kills_top_coefficient(t):
    Dx, Dy = LPDO.dx(t), LPDO.dy(t)
    T = Dx ** 2 + 2 * Dx * Dy + Dy ** 2 + Dx
    ext = adjoin_characteristic(t, "f", (1, 1))
    t2 = ext.tower
    t2, h = t2.adjoin_jets("h")
    e = expand_apply(T, h, 0, GSymbol([ext.element]))
    assert e.coefficient(2).is_zero()
    assert e.coefficient(1) == h * ext.element.dx()


def test_closed_form_reproduces_examples(t):
    t, f, g, h = formal_pair(t)
    Dx, Dy = LPDO.dx(t), LPDO.dy(t)
    for T, G in ((Dx, GSymbol([f, g], [HALF])), (Dx * Dy, GSymbol([f])),
                 (LPDO.scalar(t, 1), GSymbol([f]))):
        assert expand_apply_closed(T, h, 0, G) == expand_apply(T, h, 0, G)


def test_characteristic_jets(t):
    ext = adjoin_characteristic(t, "f", (1, t.x))
    f = ext.element
    assert f.dx() == -ext.tower.x * f.dy()
    assert f.dx().dy() == f.dy().dx()
    # inhomogeneous relation with an imaginary source
    t2, i = t.adjoin_algebraic("i", [1, 0, 1])
    ext2 = adjoin_characteristic(t2, "g", (1, 1), 0, i)
    g = ext2.element
    assert g.dx() + g.dy() == i


def test_specialization_constants():
    sp = specialize([], {-2: 2}, 2, default=0)
    assert sp(0) == {(2,): 1}
    assert sp(1) == {(1,): 2}
    assert sp(-1) == {}
    full = specialize([HALF], {}, 4, default=1)
    assert all(full.check_rule(s) for s in (0, -HALF, -1))


def test_right_factor_series_vanishes(t):
    Dx, Dy = LPDO.dx(t), LPDO.dy(t)
    E = Dx + Dy
    T = (E + LPDO.scalar(t, t.x)) * E
    S = FracSeries(GSymbol([t.x - t.y]), 0, [t.one])
    v = verify_series(T, S, 6)
    assert v.ok and v.verified_depth == 6
    bad = FracSeries(S.gsymbol, 0, [t.one, t.x])
    v = verify_series(T, bad, 6)
    assert not v.ok and v.first_failure is not None and not v.residual.is_zero()


def test_series_json_shape(t):
    S = FracSeries(GSymbol([t.x - t.y, t.y], [HALF]), 0, [t.one, t.x])
    doc = S.to_json()
    assert doc["q"] == 2
    assert [r["exponent"] for r in doc["terms"]] == ["0/1", "-1/2"]


@settings(max_examples=25, deadline=None)
@given(nonzero_coeffs, poly_coeffs, poly_coeffs, st.sampled_from([HALF, Fraction(1, 3)]))
def test_derivations_commute(hc, fc, gc, s2):
    t = base_tower()
    h, f, g = poly(t, hc), poly(t, fc) + t.x, poly(t, gc) + t.y
    G = GSymbol([f, g], [s2])
    Dx, Dy = LPDO.dx(t), LPDO.dy(t)
    assert expand_apply(Dy * Dx, h, 0, G) == expand_apply(Dx * Dy, h, 0, G)


@settings(max_examples=25, deadline=None)
@given(operator_tables(1), nonzero_coeffs, poly_coeffs)
def test_expansion_respects_composition(table, hc, fc):
    t = base_tower()
    U = operator(t, 1, table)
    h, f = poly(t, hc), poly(t, fc) + t.x
    G = GSymbol([f])
    lhs = expand_apply(LPDO.dx(t) * U, h, -1, G)
    assert lhs == expand_apply(U, h, -1, G).derive("x")
    assert lhs == expand_apply_closed(LPDO.dx(t) * U, h, -1, G)
