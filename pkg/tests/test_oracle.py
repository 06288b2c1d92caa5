from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from deltaip.model import IPInstance
from deltaip.oracle import (SearchBox, branch_and_bound_ip, brute_force_ip, enumerate_stable_sets,
                            slack_vector_by_search)
from deltaip.stableset import CapExceeded, Graph


def test_brute_force_examples():
    p = IPInstance.build([[1]], [3], [1])
    res = brute_force_ip(p, SearchBox((0,), (5,)))
    assert res.optimal and res.objective == 3 and res.solution == (3,)
    p = IPInstance.build([[1], [-1]], [0, -1], [1], [0], [5])
    assert brute_force_ip(p).status == "infeasible"


def test_brute_force_cap():
    p = IPInstance.build([[1] * 4], [3], [1] * 4, [0] * 4, [100] * 4)
    with pytest.raises(CapExceeded):
        brute_force_ip(p, cap=1000)


def test_lexicographic_tie_break():
    p = IPInstance.build([[1, 1]], [1], [1, 1], [0, 0], [1, 1])
    assert brute_force_ip(p).solution == (0, 1)


def test_two_oracles_agree():
    rng = random.Random(0)
    for _ in range(200):
        n, m = rng.randint(1, 4), rng.randint(1, 4)
        A = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)]
        b = [rng.randint(-2, 5) for _ in range(m)]
        w = [rng.randint(-3, 3) for _ in range(n)]
        eqs = [i for i in range(m) if rng.random() < 0.2]
        p = IPInstance.build(A, b, w, [-3] * n, [3] * n, eqs)
        a, c = brute_force_ip(p), branch_and_bound_ip(p)
        assert (a.status, a.objective) == (c.status, c.objective)


def test_branch_and_bound_unbounded():
    p = IPInstance.build([[1, -1]], [0], [1, 0])
    assert branch_and_bound_ip(p).status == "unbounded"
    q = IPInstance.build([[1, -1], [-1, 1]], [-1, 0], [1, 0])
    assert branch_and_bound_ip(q).status == "infeasible"


def test_permutation_invariance():
    rng = random.Random(1)
    for _ in range(50):
        n = rng.randint(2, 4)
        A = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(3)]
        b = [rng.randint(0, 4) for _ in range(3)]
        w = [rng.randint(-3, 3) for _ in range(n)]
        perm = list(range(n))
        rng.shuffle(perm)
        p = IPInstance.build(A, b, w, [-2] * n, [2] * n)
        q = IPInstance.build([[r[j] for j in perm] for r in A], b, [w[j] for j in perm],
                             [-2] * n, [2] * n)
        assert brute_force_ip(p).objective == brute_force_ip(q).objective


def test_search_box_around():
    box = SearchBox.around([Fraction(1, 2)], 4)
    assert (box.lower, box.upper) == ((-3,), (4,))
    assert box.size() == 8
    assert SearchBox((1,), (0,)).empty


def test_enumerate_stable_sets_counts():
    assert len(list(enumerate_stable_sets(Graph.complete(4)))) == 5
    assert len(list(enumerate_stable_sets(Graph(3, ())))) == 8


def independence_polynomial_at_one(g: Graph) -> int:
    # recursion I(G) = I(G - v) + I(G - N[v])
    def count(vertices: frozenset) -> int:
        if not vertices:
            return 1
        v = min(vertices)
        return count(vertices - {v}) + count(vertices - {v} - g.neighbors(v))
    return count(frozenset(range(g.n)))


def test_enumerate_stable_sets_matches_independence_polynomial():
    rng = random.Random(2)
    for _ in range(50):
        n = rng.randint(0, 9)
        g = Graph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.35])
        sets = list(enumerate_stable_sets(g))
        assert len(sets) == len(set(sets)) == independence_polynomial_at_one(g)
        assert all(g.is_stable(S) for S in sets)


def test_slack_vector_search():
    tri = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert slack_vector_by_search(tri, [1, 0, 0]) == (0, 0, 1)
    assert slack_vector_by_search(tri, [1, 1, 0]) is None
