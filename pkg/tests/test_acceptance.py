"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with `pytest tests/test_acceptance.py -v -s`, or as a script.
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from conftest import record
from fdseries.cli.corpus import (_poly_coeff, designated_factor, first_order_product, ore_pair,
                                 random_operator)
from fdseries.dfield import base_tower, expand_series
from fdseries.factor import (disc2, factor_up_to_order3, irreducible2, reconstruct_sum,
                             separable_prepare, separable_reconstruct)
from fdseries.fracderiv import (FracSeries, GSymbol, expand_apply, expand_apply_closed,
                                verify_series)
from fdseries.intersect import (intersect_first_order, is_right_divisible, principality_test,
                                same_symbol_generator)
from fdseries.lpdo import LPDO, mult_of
from fdseries.newton import Branch, construct_series, explore_branches, walk_branch
from fdseries.newton.polygon import BiExp
from fdseries.ore import is_associate, left_gcd, ore_swap, symbol_gcd

SEED = 20240611


@contextmanager
def criterion(number, limit=None):
    start = time.time()
    info = {}
    try:
        yield info
    except BaseException as e:
        record(number, False, f"{type(e).__name__}: {e}")
        raise
    elapsed = time.time() - start
    if limit is not None and elapsed >= limit:
        record(number, False, f"took {elapsed:.1f} s, limit {limit} s")
        raise AssertionError(f"criterion {number} took {elapsed:.1f} s (limit {limit} s)")
    record(number, True, f"{info.get('detail', '')} [{elapsed:.1f} s]")


def first_order(t, a, b):
    return LPDO(t, {(1, 0): 1, (0, 1): t.coerce(a), (0, 0): t.coerce(b)})


# Every branch walked in criteria 2 to 5 lands here, for criterion 6.
RUNS = []


@pytest.fixture(scope="module")
def newton_corpus():
    rng = random.Random(SEED)
    out = []
    for k in range(50):
        m = 1 + k % 3
        n = rng.randint(m, 3)
        T, f = designated_factor(rng, base_tower(), m, n)
        out.append((T, f, m, n))
    return out


def test_criterion_01_closed_expansion_matches_recursive():
    with criterion(1, limit=60) as info:
        rng = random.Random(SEED)
        k0s = {1: 0, 2: 0}
        for _ in range(200):
            t = base_tower()
            T = random_operator(rng, t, rng.randint(1, 3), 2)
            h = _poly_coeff(rng, t, 2)
            if h.is_zero():
                h = t.one
            f1 = _poly_coeff(rng, t, 2) + t.x
            if rng.random() < 0.5:
                G = GSymbol([f1])
            else:
                s2 = rng.choice([Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(3, 4)])
                G = GSymbol([f1, _poly_coeff(rng, t, 2) + t.y], [s2])
            k0s[G.k0] += 1
            s0 = Fraction(rng.randint(-3 * G.q, 3 * G.q), G.q)
            assert expand_apply_closed(T, h, s0, G) == expand_apply(T, h, s0, G)
        assert k0s[1] and k0s[2]
        info["detail"] = f"200 triples equal (k0=1: {k0s[1]}, k0=2: {k0s[2]})"


def test_criterion_02_polygon_geometry(newton_corpus):
    with criterion(2, limit=60) as info:
        for T, f, m, n in newton_corpus:
            br = Branch.start(T, f)
            P = br.P
            assert br.trace.m == m
            assert all(p.j + p.t <= n for p in P.points)
            assert not P.coefficient((n - m, m)).is_zero()
            assert all(BiExp(n - s, s) not in P.points for s in range(m))
        info["detail"] = "50 operators, m in {1,2,3}"


def test_criterion_03_sharpness():
    with criterion(3) as info:
        seen = []
        for m in (2, 3):
            t = base_tower()
            E = LPDO.dx(t) + LPDO.dy(t)
            br = Branch.start(E ** m + LPDO.dx(t), (1, 1))
            first = [e for e in br.edges() if not e.is_terminal]
            assert first and first[-1].slope == Fraction(1, m)
            walked, _, _ = walk_branch(E ** m + LPDO.dx(t), (1, 1))
            assert walked.trace.slopes[0] == Fraction(1, m)
            RUNS.append(walked)
            seen.append(f"m={m}: 1/{m}")
        info["detail"] = ", ".join(seen)


def test_criterion_04_denominator_bounds(newton_corpus):
    with criterion(4) as info:
        explored = 0
        for T, f, m, n in newton_corpus:
            br, _, _ = walk_branch(T, f)
            RUNS.append(br)
            assert br.trace.q <= m
            assert len(br.trace.levels) <= br.trace.q
            traces, unsupported = explore_branches(T, f)
            assert not unsupported
            for tr in traces:
                explored += 1
                assert tr.q <= 2 ** (m - 1)
                assert len(tr.levels) <= tr.q
                assert all(r.t0 <= r.bound for r in tr.levels)
        info["detail"] = f"50 least-slope branches, {explored} explored branches"


def test_criterion_05_second_order_end_to_end():
    with criterion(5, limit=120) as info:
        t = base_tower()
        Dx, Dy = LPDO.dx(t), LPDO.dy(t)
        E = Dx + Dy
        T1 = Dx ** 2 + 2 * Dx * Dy + Dy ** 2 + Dx
        assert T1 == E * E + Dx
        rep = disc2(T1)
        assert rep.disc == t.one
        assert not irreducible2(T1).reducible
        S1 = construct_series(T1, (1, 1), N=4, depth=8)
        assert S1.q == 2
        assert verify_series(T1, S1, 8).ok
        RUNS.append(walk_branch(T1, (1, 1))[0])

        T2 = (E + LPDO.scalar(t, t.x)) * E
        assert disc2(T2).disc.is_zero()
        v = irreducible2(T2)
        assert v.reducible and v.factors[0] * v.factors[1] == T2
        F = factor_up_to_order3(T2)
        assert F.complete and F.product() == T2
        assert [str(f) for f in F.factors] == ["Dx + Dy + x", "Dx + Dy"]
        S2 = construct_series(T2, (1, 1), N=3)
        assert S2.q == 1
        RUNS.append(walk_branch(T2, (1, 1))[0])
        info["detail"] = "Disc 1 irreducible, q=2 to depth 8; Disc 0 factored, q=1"


def test_criterion_06_taylor_identity_and_t0_bound(newton_corpus):
    with criterion(6) as info:
        runs = list(RUNS)
        if not runs:
            for T, f, _, _ in newton_corpus:
                runs.append(walk_branch(T, f)[0])
        levels = 0
        for br in runs:
            # the shift itself raises when the two routes disagree
            for shift in br.taylor:
                assert shift.Bbar == shift.formula
            for r in br.trace.levels:
                levels += 1
                assert r.t0 <= r.bound
            assert not br.trace.check()
        info["detail"] = f"{len(runs)} runs, {levels} levels"


def test_criterion_07_ore_layer():
    with criterion(7, limit=120) as info:
        rng = random.Random(SEED)
        swaps = 0
        while swaps < 100:
            t = base_tower()
            p = random_operator(rng, t, rng.randint(1, 2))
            b = LPDO(t, {(0, j): t.const(rng.randint(-2, 2)) + rng.randint(-1, 1) * t.x
                         for j in range(rng.randint(1, 2) + 1)})
            if b.is_zero():
                continue
            bbar, pbar = ore_swap(p, b)
            B = LPDO(t, {(0, j): c for j, c in enumerate(bbar.coeffs)})
            assert not B.is_zero() and B * p == pbar * b
            swaps += 1
        for _ in range(10):
            t = base_tower()
            S1, S2, L = ore_pair(rng, t)
            gens = [S1 * L, S2 * L]
            res = left_gcd(gens, bezout=False)
            assert res.verify(gens)
            assert is_associate(res.p, L)
            g, e = symbol_gcd(gens)
            a = (1, L.coefficient(0, 1))
            assert mult_of(res.p, a) == mult_of(g, a) == 1
            assert e == 1
        t = base_tower()
        Dx, Dy = LPDO.dx(t), LPDO.dy(t)
        L = Dx - Dy
        gens = [(Dx + Dy) * L, (Dx + LPDO.scalar(t, t.x)) * L]
        res = left_gcd(gens, bezout=True)
        assert res.verify(gens) and is_associate(res.p, L)
        info["detail"] = "100 swaps, 10 gcd pairs, 1 Bezout combination"


def test_criterion_08_localization():
    with criterion(8) as info:
        rng = random.Random(SEED + 8)
        for _ in range(10):
            t = base_tower()
            S1, S2, L = ore_pair(rng, t)
            gens = [S1 * L, S2 * L]
            g = left_gcd(gens, bezout=False).p
            factor = (1, L.coefficient(0, 1))
            S = construct_series(g, factor, N=3, depth=6)
            assert verify_series(g, S, 6).ok
            assert all(verify_series(G, S, 6).ok for G in gens)
            bad = FracSeries(S.gsymbol, S.s0, [S.coeffs[0], S.coeffs[1] + 1] + S.coeffs[2:])
            fails = [not verify_series(G, bad, 6).ok for G in gens]
            assert any(fails)
            assert not verify_series(g, bad, 6).ok
        info["detail"] = "10 ideals of differential type 1 at depth 6"


def test_criterion_09_intersections():
    with criterion(9, limit=60) as info:
        t = base_tower()
        x = t.x
        E = LPDO.dx(t) + LPDO.dy(t)
        for b, expected in ((t.one, E * E + E), (x, E * E + LPDO.scalar(t, x - x.inverse()) * E)):
            g = same_symbol_generator(t.one, [t.zero, b], t)
            Z = g.lpdo()
            assert Z == expected
            assert is_right_divisible(Z, E)
            assert is_right_divisible(Z, E + LPDO.scalar(t, b))
            assert g.minimality is not None and g.minimality.infeasible
            assert g.minimality.unknowns == 2
        _, res = intersect_first_order([(1, 0), (-1, 0)], t)
        assert res.principal and res.Q.order == res.s == 2
        assert res.Q == LPDO.dx(t) ** 2 - LPDO.dy(t) ** 2
        classes, res = intersect_first_order([(1, 0), (1, 1), (-1, 0)], t)
        assert res.principal and res.Q.order == res.s == 3
        for c in classes:
            for b in c.bs:
                assert is_right_divisible(res.Q, first_order(t, c.a, b))
        _, res = intersect_first_order([(1, 0), (-1, x)], t)
        assert not res.principal and res.certificate.infeasible
        again = principality_test([same_symbol_generator(t.one, [t.zero], t),
                                   same_symbol_generator(-t.one, [x], t)])
        assert again.certificate == res.certificate
        info["detail"] = f"certificate rank {res.certificate.rank} of {res.certificate.unknowns}"


def test_criterion_10_separable_reconstruction():
    with criterion(10, limit=120) as info:
        t = base_tower()
        x, y = t.x, t.y
        T = LPDO.dx(t) ** 2 - LPDO.dy(t) ** 2
        data = separable_prepare(T, (0, 0), 8)
        rng = random.Random(SEED)
        sols = [(x + y) ** 2, x ** 2 + y ** 2]
        u, v = x + y, x - y
        while len(sols) < 7:
            P = sum((rng.randint(-3, 3) * u ** k for k in range(7)), t.zero)
            Q = sum((rng.randint(-3, 3) * v ** k for k in range(7)), t.zero)
            if not (P + Q).is_zero():
                sols.append(P + Q)
        for sol in sols:
            assert T.apply(sol).is_zero()
            s = expand_series(sol, (0, 0), 8)
            rec = separable_reconstruct(T, s, data, 8)
            assert rec.exact
            assert reconstruct_sum(data, rec.constants, 8) == s.truncate(8)
        info["detail"] = "7 solutions, zero residual through order 8"


def test_criterion_11_factoring_corpus():
    with criterion(11) as info:
        rng = random.Random(SEED)
        counts = {}
        for _ in range(30):
            t = base_tower()
            T = first_order_product(rng, t)
            F = factor_up_to_order3(T)
            assert F.product() == T
            assert F.complete, F.notes
            counts[T.order] = counts.get(T.order, 0) + 1
        info["detail"] = "30 products, orders " + ", ".join(f"{k}: {v}" for k, v in sorted(counts.items()))


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-s"]))
