from __future__ import annotations

import random

import networkx as nx
import pytest

from deltaip.exactmat import max_abs_subdeterminant
from deltaip.instances import (elementary_wall, escher_wall, random_gadget_pair,
                               random_two_per_column_ip, random_two_per_row_ip)
from deltaip.stableset import oct_brute, ocp_brute


def test_small_walls():
    w2 = elementary_wall(2)
    assert w2.graph.n == 6 and w2.graph.is_bipartite()
    w3 = elementary_wall(3)
    assert w3.graph.is_bipartite() and ocp_brute(w3.graph, cap=40) == 0
    assert nx.is_connected(w3.graph.to_networkx())
    assert max(w3.graph.degree(v) for v in range(w3.graph.n)) <= 3


@pytest.mark.parametrize("h", [2, 3, 4, 5])
def test_wall_structure(h):
    w = elementary_wall(h)
    g = w.graph
    assert len(w.vertical_paths) == h and len(w.horizontal_paths) == h
    assert len(w.top_bricks) == len(w.bottom_bricks) == h - 1
    for path in w.vertical_paths + w.horizontal_paths:
        assert all(g.has_edge(a, b) for a, b in zip(path, path[1:]))
    for brick in w.top_bricks + w.bottom_bricks:
        assert len(brick) == 6
        assert all(g.has_edge(brick[i], brick[(i + 1) % 6]) for i in range(6))


def test_escher_walls():
    for h, n, oct_min in ((3, 18, 1), (4, 33, 2)):
        w = escher_wall(h)
        g = w.graph
        assert g.n == n and len(w.linking_paths) == h - 1
        assert ocp_brute(g, cap=40) == 1
        assert oct_brute(g, cap=40) >= oct_min
    with pytest.raises(ValueError):
        escher_wall(2)


def test_row_generator_certifies_delta():
    for seed in range(20):
        gen = random_two_per_row_ip(seed, 4, 6, 2)
        assert gen.ip.nonzeros_per_row() <= 2
        cert = max_abs_subdeterminant(gen.ip.A)
        assert cert.exhaustive and max(cert.delta, 1) == gen.delta <= 2


def test_column_generator_certifies_delta():
    for seed in range(20):
        gen = random_two_per_column_ip(seed, 4, 4, 4)
        assert gen.ip.nonzeros_per_column() <= 2
        assert max(max_abs_subdeterminant(gen.ip.A).delta, 1) == gen.delta <= 4


def test_generators_are_seeded():
    assert random_two_per_row_ip(5, 4, 6, 2) == random_two_per_row_ip(5, 4, 6, 2)
    a = random_gadget_pair(7, 2)
    b = random_gadget_pair(7, 2)
    assert (a.G, a.W, a.attach) == (b.G, b.W, b.attach)


def test_gadget_pairs_are_valid():
    rng = random.Random(0)
    for _ in range(40):
        pair = random_gadget_pair(rng.randrange(10 ** 6), rng.randint(0, 3))
        assert pair.W.is_bipartite()
        assert len(pair.cG) == pair.G.m and len(pair.cW) == pair.W.m
        assert all(0 <= v < pair.G.n for v in pair.attach.values())
