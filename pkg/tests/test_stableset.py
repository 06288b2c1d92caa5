from __future__ import annotations

import itertools
import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from deltaip.oracle import enumerate_stable_sets
from deltaip.stableset import (CapExceeded, Graph, StableSetInstance, brute_force_stable_set,
                               chordless_odd_cycles, induced_weights, max_weight_stable_set,
                               min_cost_bipartite, oct_brute, ocp_brute, odd_cycle_transversal,
                               resilience_check, slack_edges, solve_bipartite)


def random_graph(rng, n, p=0.4):
    return Graph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


# graph ---------------------------------------------------------------------

def test_graph_normalizes_edges():
    g = Graph.from_edges(3, [(2, 0), (1, 2)])
    assert g.edges == ((0, 2), (1, 2))
    assert g.edge_id(2, 1) == 1 and g.other(0, 2) == 0
    assert g.delta(2) == [0, 1]
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 1), (1, 0)])


def test_graph_constructors():
    assert Graph.cycle(5).m == 5 and Graph.path(4).m == 3
    assert Graph.complete(4).m == 6 and Graph.complete_bipartite(2, 3).m == 6
    assert not Graph.cycle(5).is_bipartite() and Graph.cycle(6).is_bipartite()


@settings(max_examples=50, deadline=None)
@given(graphs())
def test_graph_queries_match_networkx(g):
    h = g.to_networkx()
    assert g.is_bipartite() == nx.is_bipartite(h)
    assert sorted(map(sorted, g.components())) == sorted(map(sorted, nx.connected_components(h)))
    col = g.two_coloring()
    if col is not None:
        assert all(col[u] != col[v] for u, v in g.edges)


def test_incidence_matrix():
    M = Graph.path(3).incidence_matrix()
    assert M.to_int_lists() == [[1, 1, 0], [0, 1, 1]]


def test_induced_and_removal():
    g = Graph.cycle(4)
    h, labels = g.induced([0, 1, 2])
    assert h.m == 2 and labels == [0, 1, 2]
    h, labels = g.without_vertices([0])
    assert h.n == 3 and labels == [1, 2, 3]


def test_instance_checks_induced_weights():
    g = Graph.path(3)
    inst = StableSetInstance.from_costs(g, [1, 2])
    assert inst.weights == (1, 3, 2)
    with pytest.raises(ValueError):
        StableSetInstance(g, (1, 1, 1), (1, 2))
    with pytest.raises(ValueError):
        StableSetInstance(g, costs=(-1, 0))


def test_slack_edges():
    assert slack_edges(Graph.path(4), [1]) == [2]


# solvers -------------------------------------------------------------------

def test_brute_force_examples():
    assert brute_force_stable_set(StableSetInstance(Graph.cycle(5), (1,) * 5)).value == 2
    tri = StableSetInstance.from_costs(Graph.cycle(3), (1, 1, 1))
    assert brute_force_stable_set(tri, "cost").value == 1


def test_brute_force_cap():
    with pytest.raises(CapExceeded):
        brute_force_stable_set(StableSetInstance(Graph(30, ()), (1,) * 30), cap=20)


def test_fast_solver_matches_enumeration():
    rng = random.Random(0)
    for _ in range(200):
        g = random_graph(rng, rng.randint(0, 10), rng.random())
        w = [Fraction(rng.randint(0, 6)) for _ in range(g.n)]
        sol = max_weight_stable_set(g, w)
        best = max(sum((w[v] for v in S), Fraction(0)) for S in enumerate_stable_sets(g))
        assert g.is_stable(sol.vertices)
        assert sol.value == best == sum((w[v] for v in sol.vertices), Fraction(0))


def test_cost_and_weight_modes_agree():
    # w(S) + c(slack(S)) = c(E) turns max weight into min slack cost
    rng = random.Random(1)
    for _ in range(100):
        g = random_graph(rng, rng.randint(1, 8))
        c = [Fraction(rng.randint(0, 4)) for _ in g.edges]
        inst = StableSetInstance.from_costs(g, c)
        a = brute_force_stable_set(inst, "weight")
        b = brute_force_stable_set(inst, "cost")
        assert a.value + b.value == inst.total_cost()


def test_bipartite_solvers():
    rng = random.Random(2)
    for _ in range(60):
        g = Graph.complete_bipartite(rng.randint(1, 3), rng.randint(1, 3))
        g = Graph.from_edges(g.n, [e for e in g.edges if rng.random() < 0.7])
        w = [Fraction(rng.randint(0, 5)) for _ in range(g.n)]
        assert solve_bipartite(StableSetInstance(g, w)).value == max_weight_stable_set(g, w).value
        c = [Fraction(rng.randint(0, 3)) for _ in g.edges]
        S, cost = min_cost_bipartite(g, c)
        inst = StableSetInstance.from_costs(g, c)
        assert cost == brute_force_stable_set(inst, "cost").value
    with pytest.raises(ValueError):
        solve_bipartite(StableSetInstance(Graph.cycle(3), (1, 1, 1)))


def test_min_cost_bipartite_prescriptions():
    g = Graph.path(3)
    S, cost = min_cost_bipartite(g, [1, 1], fixed_in=[0])
    assert 0 in S and cost == 0
    assert min_cost_bipartite(g, [1, 1], fixed_in=[0, 1]) is None


# analysis ------------------------------------------------------------------

def test_chordless_odd_cycles():
    assert chordless_odd_cycles(Graph.cycle(5)) == [frozenset(range(5))]
    assert len(chordless_odd_cycles(Graph.complete(4))) == 4
    assert chordless_odd_cycles(Graph.cycle(6)) == []


def test_ocp_and_oct_examples():
    assert ocp_brute(Graph.cycle(3)) == 1 and oct_brute(Graph.cycle(3)) == 1
    assert ocp_brute(Graph.complete(4)) == 1 and oct_brute(Graph.complete(4)) == 2
    assert ocp_brute(Graph.complete(6)) == 2
    two = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert ocp_brute(two) == oct_brute(two) == 2


def test_oct_removal_leaves_bipartite():
    rng = random.Random(3)
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 8), 0.5)
        X = odd_cycle_transversal(g)
        assert len(X) == oct_brute(g) >= ocp_brute(g)
        assert g.without_vertices(X)[0].is_bipartite()


def test_resilience():
    c5 = Graph.cycle(5)
    assert resilience_check(c5, 0).resilient
    res = resilience_check(c5, 1)
    assert not res.resilient and len(res.witness) == 1
    two = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert resilience_check(two, 0).witness == ()
    with pytest.raises(CapExceeded):
        resilience_check(c5, 4)


def test_induced_weights():
    assert induced_weights(Graph.cycle(3), [1, 2, 3]) == (4, 3, 5)
