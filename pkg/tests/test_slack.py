from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from deltaip.instances import random_gadget_pair
from deltaip.oracle import enumerate_stable_sets, slack_vector_by_search
from deltaip.stableset import Graph, StableSetInstance, brute_force_stable_set, slack_edges
from deltaip.stableset.edge_induced import edge_induced_reduce
from deltaip.stableset.gadgets import exchange_split, gadget_replace, glue
from deltaip.stableset.slack import (NotSlackVector, alternating_sum, compose_slack, membership_Y,
                                     recover_x_from_slack, round_slack_vector, slack_cost,
                                     verify_slack_identity)
from deltaip.verify import check_gadget, check_slack, random_slack_instance


def random_graph(rng, n, p=0.4):
    return Graph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


TRI = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


# slack vectors ---------------------------------------------------------------

def test_slack_identity():
    rng = random.Random(0)
    for _ in range(100):
        g = random_graph(rng, rng.randint(1, 9))
        inst = StableSetInstance.from_costs(g, [rng.randint(0, 4) for _ in g.edges])
        for S in itertools.islice(enumerate_stable_sets(g), 30):
            assert verify_slack_identity(inst, S)
            assert slack_cost(inst, S) == sum((inst.costs[e] for e in slack_edges(g, S)), Fraction(0))


def test_slack_cost_rejects_non_stable_sets():
    with pytest.raises(ValueError):
        slack_cost(StableSetInstance.from_costs(TRI, (1, 1, 1)), [0, 1])


def test_alternating_sum():
    assert alternating_sum(TRI, [0, 1, 2, 0], [1, 0, 0]) == 1
    assert alternating_sum(Graph.cycle(4), [0, 1, 2, 3, 0], [1, 1, 1, 1]) == 0


def test_membership_examples():
    res = membership_Y(TRI, [1, 0, 0])
    assert res.member and res.x == (0, 0, 1)
    res = membership_Y(TRI, [1, 1, 0])
    assert not res.member and res.walk is not None
    assert alternating_sum(TRI, res.walk, [1, 1, 0]) % 2 == 0
    assert not membership_Y(TRI, [-1, 0, 0]).member


def test_membership_matches_search():
    rng = random.Random(1)
    for _ in range(300):
        g = random_graph(rng, rng.randint(1, 6), 0.5)
        y = [rng.randint(0, 3) for _ in g.edges]
        res = membership_Y(g, y)
        found = slack_vector_by_search(g, y)
        assert res.member == (found is not None)
        if res.member:
            assert all(y[e] == 1 - res.x[u] - res.x[v] for e, (u, v) in enumerate(g.edges))
        else:
            w = res.walk
            odd = (len(w) - 1) % 2 == 1
            s = alternating_sum(g, w, y)
            assert (odd and s % 2 == 0) or (not odd and s != 0) or res.reason


def test_recover_x_is_unique_on_non_bipartite_graphs():
    rng = random.Random(2)
    for _ in range(100):
        n = rng.randint(3, 8)
        g = random_graph(rng, n, 0.6)
        if not g.is_connected() or g.is_bipartite():
            continue
        x = [rng.randint(-2, 1) for _ in range(n)]
        y = [1 - x[u] - x[v] for u, v in g.edges]
        assert recover_x_from_slack(g, y) == tuple(x)


def test_round_slack_vector_path():
    inst = StableSetInstance.from_costs(Graph.path(3), (1, 1))
    res = round_slack_vector(inst, (2, 0))
    assert res.stable_set == (0, 2) and res.cost == 0 and res.slack_set == ()


def test_round_slack_vector_rejects_non_members():
    with pytest.raises(NotSlackVector):
        round_slack_vector(StableSetInstance.from_costs(TRI, (1, 1, 1)), (1, 1, 0))


def test_rounding_never_costs_more():
    for seed in range(300):
        assert check_slack(seed).ok
        inst, y = random_slack_instance(seed)
        res = round_slack_vector(inst, y)
        assert list(res.cost_trace) == sorted(res.cost_trace, reverse=True)


def test_compose_slack_on_shared_vertex():
    # triangle 0-1-2 plus a bipartite pendant path 2-3-4
    g = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)])
    parts = [[0, 1, 2], [3, 4]]
    x = [0, 0, 1, -1, 1]
    y = [1 - x[u] - x[v] for u, v in g.edges]
    res = compose_slack(g, parts, [{e: y[e] for e in p} for p in parts])
    assert res.member and res.slack.y == tuple(y)
    y[4] = 3
    res = compose_slack(g, parts, [{e: y[e] for e in p} for p in parts])
    assert res.member and res.slack.y == tuple(y)


def test_compose_slack_rejects_disagreement():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        compose_slack(g, [[0, 1], [1]], [{0: 0, 1: 1}, {1: 2}])


# edge-induced reduction ------------------------------------------------------

def test_edge_induced_triangle():
    red = edge_induced_reduce(TRI, (1, 1, 1))
    assert red.costs == (Fraction(1, 2),) * 3
    assert red.zeros == () and red.ones == ()


def test_edge_induced_reduction_preserves_optima():
    rng = random.Random(3)
    for _ in range(100):
        g = random_graph(rng, rng.randint(1, 9), 0.4)
        w = [Fraction(rng.randint(0, 5)) for _ in range(g.n)]
        red = edge_induced_reduce(g, w)
        inst = red.instance(g)
        assert inst.weights == tuple(
            sum((red.costs[e] for e in g.delta(v)), Fraction(0)) for v in range(g.n))
        S_new = brute_force_stable_set(inst).vertices
        S = red.recover(S_new)
        assert g.is_stable(S)
        assert sum((w[v] for v in S), Fraction(0)) == brute_force_stable_set(StableSetInstance(g, w)).value


def test_edge_induced_rejects_negative_weights():
    with pytest.raises(ValueError):
        edge_induced_reduce(TRI, (1, -1, 1))


# gadgets ---------------------------------------------------------------------

def test_glue_identifies_boundary():
    G = Graph.path(2)
    W = Graph.path(3)
    union, costs, wmap = glue(G, [1], W, [2, 3], {0: 1})
    assert union.n == 4 and wmap[0] == 1
    assert union.has_edge(1, wmap[1]) and union.has_edge(wmap[1], wmap[2])


def test_exchange_split_even_path():
    W = Graph.path(3)
    S3, S4 = exchange_split(W, 0, 2, [0], [2])
    assert {0, 2} <= set(S3) and not {0, 2} & set(S4)
    assert sorted(S3 + S4) == [0, 2]
    assert W.is_stable(S3) and W.is_stable(S4)


def test_exchange_split_odd_path():
    W = Graph.path(4)
    S3, S4 = exchange_split(W, 0, 3, [0, 3], [1])
    assert (0 in S3) != (3 in S3) and (0 in S4) != (3 in S4)
    assert sorted(S3 + S4) == [0, 1, 3]
    assert W.is_stable(S3) and W.is_stable(S4)


def test_gadget_replace_rejects_bad_input():
    G = Graph.path(2)
    with pytest.raises(ValueError):
        gadget_replace(G, [1], TRI, [1, 1, 1], {0: 0})
    W = Graph(4, ())
    with pytest.raises(ValueError):
        gadget_replace(G, [1], W, [], {0: 0, 1: 1, 2: 0, 3: 1})


@pytest.mark.parametrize("omega", [0, 1, 2, 3])
def test_gadget_equivalence(omega):
    for seed in range(omega, 160, 4):
        res = check_gadget(seed)
        assert res.ok, (seed, res.detail)


def test_gadget_pair_boundary_size():
    for k in range(4):
        pair = random_gadget_pair(k, k)
        assert len(pair.attach) == k and pair.W.is_bipartite()
