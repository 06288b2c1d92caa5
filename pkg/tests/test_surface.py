from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest

from deltaip.instances import k4_projective_fixture, random_embedded_fixture
from deltaip.stableset import Graph
from deltaip.stableset.slack import membership_Y
from deltaip.surface import (IN, OUT, DualOrientation, EmbeddedGraph, EmbeddingError,
                             alternating_orientation, check_hypotheses, crosses,
                             crossfree_decompose, homology_basis, is_cross_free, odd_cycles_one_sided,
                             omega, trace_faces, verify_dual_representation)


def planar_embedding(g: Graph) -> EmbeddedGraph:
    ok, emb = nx.check_planarity(g.to_networkx())
    assert ok
    rotation = [tuple(g.edge_id(v, w) for w in emb.neighbors_cw_order(v)) for v in range(g.n)]
    return EmbeddedGraph(g, tuple(rotation), (1,) * g.m)


def test_cycle_on_sphere():
    eg = EmbeddedGraph(Graph.cycle(4), ((0, 3), (0, 1), (1, 2), (2, 3)), (1,) * 4)
    fs = trace_faces(eg)
    assert len(fs.faces) == 2 and fs.euler_genus == 0 and fs.orientable
    D = alternating_orientation(eg, fs)
    assert D.is_alternating()
    assert [sum(d == OUT for _, d in ring) for ring in D.ends] == [2, 2]
    assert D.is_circulation([1] * 4)


def test_triangle_with_twisted_edges():
    eg = EmbeddedGraph(Graph.cycle(3), ((0, 2), (0, 1), (1, 2)), (-1,) * 3)
    fs = trace_faces(eg)
    assert len(fs.faces) == 1 and fs.euler_genus == 1 and not fs.orientable


def test_planar_embeddings_have_genus_zero():
    rng = random.Random(0)
    done = 0
    while done < 30:
        n = rng.randint(3, 8)
        g = Graph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.5])
        if not g.is_connected() or not nx.check_planarity(g.to_networkx())[0]:
            continue
        fs = trace_faces(planar_embedding(g))
        assert fs.euler_genus == 0 and len(fs.faces) == 2 - g.n + g.m
        done += 1


def test_every_edge_has_two_sides():
    for seed in range(20):
        eg = random_embedded_fixture(seed)
        fs = trace_faces(eg)
        occ = fs.occurrences()
        assert all(len(occ[e]) == 2 for e in range(eg.m))
        assert sum(len(f) for f in fs.faces) == 2 * eg.m
        assert fs.euler_genus == 2 - eg.n + eg.m - len(fs.faces)


def test_rotation_is_validated():
    with pytest.raises(EmbeddingError):
        EmbeddedGraph(Graph.cycle(3), ((0,), (0, 1), (1, 2)), (1,) * 3)
    with pytest.raises(EmbeddingError):
        EmbeddedGraph(Graph.cycle(3), ((0, 2), (0, 1), (1, 2)), (1, 0, 1))


def test_one_sided_odd_cycles():
    assert odd_cycles_one_sided(k4_projective_fixture())
    planar = planar_embedding(Graph.complete(4))
    assert not odd_cycles_one_sided(planar)
    with pytest.raises(EmbeddingError):
        check_hypotheses(planar)
    with pytest.raises(EmbeddingError):
        check_hypotheses(EmbeddedGraph(Graph.cycle(4), ((0, 3), (0, 1), (1, 2), (2, 3)), (1,) * 4))


def test_cycle_sign_matches_parity_on_fixtures():
    eg = random_embedded_fixture(3)
    for cyc in nx.cycle_basis(eg.graph.to_networkx()):
        walk = list(cyc) + [cyc[0]]
        assert eg.cycle_sign(walk) == (-1 if len(cyc) % 2 else 1)


def test_k4_fixture_representation():
    eg = k4_projective_fixture()
    fs = trace_faces(eg)
    assert sorted(len(f) for f in fs.faces) == [4, 4, 4] and fs.euler_genus == 1
    rep = verify_dual_representation(eg)
    assert len(rep.slack_vectors) == 5 and len(rep.circulations) == 5 and rep.equal
    assert rep.basis.odd_cycle == (0, 1, 2, 0) and rep.basis.walks == ()


def test_slack_vectors_are_members():
    eg = k4_projective_fixture()
    for y in verify_dual_representation(eg).slack_vectors:
        assert membership_Y(eg.graph, y).member


def test_random_fixtures_representation():
    for seed in range(15):
        eg = random_embedded_fixture(seed)
        rep = verify_dual_representation(eg)
        assert rep.equal, seed
        basis = rep.basis
        assert len(basis.walks) == basis.euler_genus - 1
        assert basis.max_edge_multiplicity(eg.graph) <= 2
        assert len(basis.odd_cycle) % 2 == 0  # closed sequence of an odd cycle


def test_representation_cap():
    eg = random_embedded_fixture(1)
    with pytest.raises(EmbeddingError):
        verify_dual_representation(eg, cap=eg.m - 1)


def test_omega_is_additive():
    rng = random.Random(1)
    for seed in range(10):
        eg = random_embedded_fixture(seed)
        g = eg.graph
        basis = homology_basis(eg)
        for _ in range(10):
            y1 = [rng.randint(0, 3) for _ in range(g.m)]
            y2 = [rng.randint(0, 3) for _ in range(g.m)]
            a, b = omega(g, y1, basis), omega(g, y2, basis)
            c = omega(g, [u + v for u, v in zip(y1, y2)], basis)
            assert c.parity == (a.parity + b.parity) % 2
            assert c.coords == tuple(u + v for u, v in zip(a.coords, b.coords))


def test_crossing_predicate():
    assert crosses((0, 2), (1, 3), 4)
    assert not crosses((1, 2), (0, 3), 4)
    assert is_cross_free([(1, 2), (0, 3)], 4)
    assert not is_cross_free([(0, 2), (1, 3)], 4)


def test_consecutive_matching_example():
    # node 0 sees in, in, out, out
    ends = (((0, IN), (1, IN), (2, OUT), (3, OUT)),
            ((0, OUT), (1, OUT), (2, IN), (3, IN)))
    D = DualOrientation(None, (1, 1, 0, 0), (0, 0, 1, 1), ends)
    dec = crossfree_decompose(D, [1, 1, 1, 1])
    assert dec.matchings[0] == ((1, 2), (0, 3))
    assert sorted(map(sorted, dec.cycles)) == [[0, 3], [1, 2]]


def test_decompose_rejects_non_circulations():
    D = alternating_orientation(k4_projective_fixture())
    with pytest.raises(ValueError):
        crossfree_decompose(D, [1, 0, 0, 0, 0, 0])
    with pytest.raises(ValueError):
        crossfree_decompose(D, [2, 0, 0, 0, 0, 0])


def test_decomposition_on_fixture_circulations():
    for seed in range(10):
        eg = random_embedded_fixture(seed)
        D = alternating_orientation(eg)
        for y in itertools.product((0, 1), repeat=eg.m):
            if not D.is_circulation(y):
                continue
            dec = crossfree_decompose(D, y)
            arcs = sorted(e for c in dec.cycles for e in c)
            assert arcs == [e for e in range(eg.m) if y[e]]
            for c in dec.cycles:
                for a, b in zip(c, c[1:] + c[:1]):
                    assert D.head[a] == D.tail[b]
            for f, pairs in enumerate(dec.matchings):
                assert is_cross_free(pairs, len(D.ends[f]))
