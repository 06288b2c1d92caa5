from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from deltaip.lp import LPProblem, NotHalfIntegral, assert_half_integral, solve
from deltaip.stableset import Graph


def test_simple_bound():
    res = solve(LPProblem.build([[1]], [3], [1], [0], [10]))
    assert res.optimal and res.x_star == (3,) and res.objective == 3


def test_infeasible():
    assert solve(LPProblem.build([[1], [-1]], [0, -1], [1])).status == "infeasible"


def test_unbounded_reports_ray():
    p = LPProblem.build([[1, -1]], [0], [1, 0])
    res = solve(p)
    assert res.status == "unbounded"
    ray = res.ray
    assert sum(w * r for w, r in zip(p.w, ray)) > 0
    assert sum(a * r for a, r in zip(p.A.row(0), ray)) <= 0


def test_triangle_stable_set_lp():
    g = Graph.cycle(3)
    p = LPProblem.build(g.incidence_matrix(), [1, 1, 1], [1, 1, 1], [0] * 3, [1] * 3)
    res = solve(p)
    assert res.objective == Fraction(3, 2)
    assert res.x_star == (Fraction(1, 2),) * 3


def _random_lp(rng):
    n, m = rng.randint(1, 4), rng.randint(1, 5)
    A = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
    b = [rng.randint(-2, 6) for _ in range(m)]
    w = [rng.randint(-3, 3) for _ in range(n)]
    lo = [rng.choice([None, -2, 0]) for _ in range(n)]
    hi = [rng.choice([None, 3]) for _ in range(n)]
    eqs = [i for i in range(m) if rng.random() < 0.15]
    return LPProblem.build(A, b, w, lo, hi, eqs)


def test_duality_and_complementary_slackness():
    rng = random.Random(0)
    seen = 0
    for _ in range(300):
        p = _random_lp(rng)
        res = solve(p)
        if not res.optimal:
            continue
        seen += 1
        d = res.dual
        assert p.is_feasible_point(res.x_star)
        assert d.objective(p) == res.objective
        for j in range(p.n):
            col = sum(p.A[i, j] * d.y[i] for i in range(p.m))
            assert col + d.z_upper[j] - d.z_lower[j] == p.w[j]
        for i in range(p.m):
            if i not in p.equalities:
                assert d.y[i] >= 0
                slack = p.b[i] - sum(a * x for a, x in zip(p.A.row(i), res.x_star))
                assert d.y[i] * slack == 0
        assert res.is_vertex == (_rank(_all_rows(p), p.n) == p.n)
    assert seen > 50


def _all_rows(p):
    rows = [list(p.A.row(i)) for i in range(p.m)]
    for j in range(p.n):
        if p.lower[j] is not None or p.upper[j] is not None:
            rows.append([1 if k == j else 0 for k in range(p.n)])
    return rows


def test_vertex_is_basic():
    rng = random.Random(4)
    for _ in range(200):
        p = _random_lp(rng)
        res = solve(p)
        if not res.optimal or not res.is_vertex:
            continue
        tight = []
        for i in range(p.m):
            if sum(a * x for a, x in zip(p.A.row(i), res.x_star)) == p.b[i]:
                tight.append(list(p.A.row(i)))
        for j in range(p.n):
            e = [Fraction(0)] * p.n
            e[j] = Fraction(1)
            if res.x_star[j] in (p.lower[j], p.upper[j]):
                tight.append(e)
        # full column rank of the tight system pins the point down
        rank = _rank(tight, p.n)
        assert rank == p.n


def _rank(rows, n):
    rows = [[Fraction(v) for v in r] for r in rows]
    rank = 0
    for c in range(n):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def test_brute_force_agreement_on_boxed_lps():
    # over a box the LP optimum is at least every integer point's value
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(1, 3)
        A = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(2)]
        b = [rng.randint(0, 4) for _ in range(2)]
        w = [rng.randint(-2, 2) for _ in range(n)]
        p = LPProblem.build(A, b, w, [-2] * n, [2] * n)
        res = solve(p)
        pts = [z for z in itertools.product(range(-2, 3), repeat=n)
               if p.is_feasible_point([Fraction(v) for v in z])]
        if res.status == "infeasible":
            assert not pts
        else:
            assert all(p.objective([Fraction(v) for v in z]) <= res.objective for z in pts)


def test_totally_unimodular_gives_integral_vertex():
    rng = random.Random(6)
    for _ in range(50):
        g = Graph.complete_bipartite(rng.randint(1, 3), rng.randint(1, 3))
        w = [rng.randint(0, 5) for _ in range(g.n)]
        res = solve(LPProblem.build(g.incidence_matrix(), [1] * g.m, w, [0] * g.n, [1] * g.n))
        assert all(v.denominator == 1 for v in res.x_star)


def test_deterministic():
    p = LPProblem.build([[1, 1], [1, -1]], [2, 0], [1, 1], [0, 0], [5, 5])
    assert solve(p) == solve(p)


def test_half_integral_split():
    s = assert_half_integral([Fraction(1, 2), Fraction(1, 2)])
    assert s.translation == (0, 0) and s.zeros == () and s.halves == (0, 1)
    s = assert_half_integral([Fraction(2), Fraction(1, 2)])
    assert s.translation == (2, 0) and s.zeros == (0,) and s.halves == (1,)
    s = assert_half_integral([Fraction(-3, 2)])
    assert s.translation == (-2,) and s.halves == (0,)
    with pytest.raises(NotHalfIntegral):
        assert_half_integral([Fraction(1, 3)])
