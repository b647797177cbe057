from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fdseries.dfield import base_tower
from fdseries.errors import PreconditionError
from fdseries.fracderiv import BiExp, verify_series
from fdseries.lpdo import LPDO
from fdseries.newton import (Branch, construct_series, convex_hull, explore_branches,
                             leading_polynomial, walk_branch)
from strategies import nonzero_coeffs, poly


def ops(t):
    Dx, Dy = LPDO.dx(t), LPDO.dy(t)
    return Dx, Dy, Dx + Dy


def test_convex_hull():
    hull = convex_hull([(0, 0), (2, 0), (0, 2), (1, 1), (1, 0)])
    assert hull == [BiExp(0, 0), BiExp(2, 0), BiExp(0, 2)]
    assert convex_hull([(0, 0), (0, 1)]) == [BiExp(0, 0), BiExp(0, 1)]


def test_first_order_terminal_edge(t):
    Dx, Dy, E = ops(t)
    br = Branch.start(E + LPDO.scalar(t, t.x), (1, 1))
    assert set(br.P.points) == {BiExp(0, 1), BiExp(0, 0)}
    (edge,) = br.edges()
    assert edge.slope == 0 and edge.pivot == BiExp(0, 1) and edge.end == BiExp(0, 0)


def test_polygon_of_nonzero_discriminant(t):
    Dx, Dy, E = ops(t)
    T = E * E + Dx
    br = Branch.start(T, (1, 1))
    assert set(br.P.points) == {BiExp(0, 2), BiExp(0, 1), BiExp(1, 0), BiExp(0, 0)}
    assert all(p.j + p.t <= T.order for p in br.P.points)
    (edge,) = br.edges()
    assert edge.slope == Fraction(1, 2) and edge.multiplicity == 2
    L = leading_polynomial(br.P, edge)
    assert set(L.B) == {2, 0}


def test_symbol_must_vanish(t):
    Dx, Dy, E = ops(t)
    with pytest.raises(PreconditionError):
        Branch.start(Dx * Dx + Dy, (1, 1))


def test_half_integer_branch(t):
    Dx, Dy, E = ops(t)
    T = E * E + Dx
    br, edge, B = walk_branch(T, (1, 1))
    assert br.trace.q == 2 and br.trace.slopes == [Fraction(1, 2)]
    assert edge.is_terminal and B.order == 1
    assert br.trace.check() == []
    r = br.trace.levels[0]
    assert r.t0 <= r.bound
    S = construct_series(T, (1, 1), N=4)
    assert S.q == 2 and verify_series(T, S, 8).ok


def test_integer_branch_when_reducible(t):
    Dx, Dy, E = ops(t)
    T = (E + LPDO.scalar(t, t.x)) * E
    br, edge, B = walk_branch(T, (1, 1))
    assert br.trace.q == 1 and br.trace.levels == []
    assert B == T
    S = construct_series(T, (1, 1), N=3)
    assert S.q == 1 and verify_series(T, S, 5).ok


def test_explore_matches_walk(t):
    Dx, Dy, E = ops(t)
    T = E * E + Dx
    traces, unsupported = explore_branches(T, (1, 1))
    assert not unsupported and traces
    assert all(tr.check() == [] for tr in traces)
    assert all(tr.q <= 2 for tr in traces)


def test_taylor_routes_agree(t):
    Dx, Dy, E = ops(t)
    br, _, _ = walk_branch(E ** 3 + Dx, (1, 1))
    for shift in br.taylor:
        assert shift.Bbar == shift.formula
    assert br.trace.check() == []
    assert br.trace.q <= 3


def test_series_trace_serializes():
    t = base_tower()
    Dx, Dy, E = ops(t)
    S = construct_series(E * E + Dx, (1, 1), N=2)
    doc = S.trace.to_json()
    assert doc["q"] == 2 and doc["levels"][0]["slope"] == "1/2"


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 3), st.lists(nonzero_coeffs, min_size=3, max_size=3))
def test_polygon_geometry(m, tails):
    t = base_tower()
    Dx, Dy, E = ops(t)
    # E^m times a first-order cofactor, plus lower-order noise
    U = Dx - Dy + LPDO.scalar(t, poly(t, tails[0]))
    T = U * E ** m + poly(t, tails[1]) * E ** (m - 1) + LPDO.scalar(t, poly(t, tails[2]))
    n = T.order
    br = Branch.start(T, (1, 1))
    pts = br.P.points
    assert all(p.j + p.t <= n for p in pts)
    assert not br.P.coefficient((n - m, m)).is_zero()
    assert all(BiExp(n - s, s) not in pts for s in range(m))
