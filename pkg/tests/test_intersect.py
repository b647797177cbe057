import pytest
from hypothesis import given, settings

from fdseries.dfield import base_tower
from fdseries.errors import PreconditionError
from fdseries.intersect import (FirstOrderIdeal, intersect_first_order, is_right_divisible,
                                principality_test, same_symbol_generator)
from fdseries.lpdo import LPDO
from strategies import nonzero_coeffs, poly


def test_two_ideals_same_direction(t):
    g = same_symbol_generator(t.one, [t.zero, t.one], t)
    E = LPDO.dx(t) + LPDO.dy(t)
    assert g.order == 2 and g.verify()
    assert g.lpdo() == E * E + E
    for b in (0, 1):
        assert is_right_divisible(g.lpdo(), E + LPDO.scalar(t, b))
    assert g.minimality.infeasible


def test_variable_coefficient_class(t):
    x = t.x
    g = same_symbol_generator(t.one, [t.zero, x], t)
    E = LPDO.dx(t) + LPDO.dy(t)
    assert g.lpdo() == E * E + (x - x.inverse()) * E
    assert is_right_divisible(g.lpdo(), E + LPDO.scalar(t, x))


def test_single_ideal_is_its_own_generator(t):
    classes, res = intersect_first_order([(t.one, t.x)], t)
    assert len(classes) == 1 and classes[0].order == 1
    assert res.principal and res.Q == FirstOrderIdeal(t.one, t.x).generator


def test_duplicates_are_merged(t):
    g = same_symbol_generator(t.one, [t.x, t.x], t)
    assert g.order == 1


def test_wave_operator_is_the_intersection(t):
    Dx, Dy = LPDO.dx(t), LPDO.dy(t)
    classes, res = intersect_first_order([(1, 0), (-1, 0)], t)
    assert res.principal and res.s == 2
    assert res.Q == Dx * Dx - Dy * Dy


def test_three_ideals(t):
    classes, res = intersect_first_order([(1, 0), (1, 1), (-1, 0)], t)
    assert res.principal and res.Q.order == 3
    for a, b in [(1, 0), (1, 1), (-1, 0)]:
        assert is_right_divisible(res.Q, FirstOrderIdeal(t.coerce(a), t.coerce(b)).generator)


def test_non_principal_intersection(t):
    classes, res = intersect_first_order([(1, 0), (-1, t.x)], t)
    assert not res.principal
    cert = res.certificate
    assert cert.infeasible and cert.rank == cert.unknowns == 6
    assert principality_test(classes).certificate == cert


def test_shared_direction_rejected(t):
    g = same_symbol_generator(t.one, [t.zero], t)
    with pytest.raises(PreconditionError):
        principality_test([g, g])


@settings(max_examples=10, deadline=None)
@given(nonzero_coeffs, nonzero_coeffs)
def test_class_generator_divisible_by_members(b1, b2):
    t = base_tower()
    bs = [poly(t, b1), poly(t, b2)]
    g = same_symbol_generator(t.one, bs, t)
    assert g.verify()
    for b in bs:
        assert is_right_divisible(g.lpdo(), FirstOrderIdeal(t.one, b).generator)
    assert g.order == (1 if bs[0] == bs[1] else 2)
