"""Homology classes of edge vectors and the dual-circulation picture of slack vectors.

For a 2-connected non-bipartite graph embedded so that exactly the odd
cycles are 1-sided, a nonnegative integer edge vector is a slack vector if
and only if it is a circulation in the alternating dual orientation whose
alternating sum is odd along a fixed odd cycle and zero along a few even
closed walks.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import networkx as nx

from ..stableset.graph import Graph
from ..stableset.slack import alternating_sum, membership_Y
from .dual import DualOrientation, alternating_orientation
from .embedding import EmbeddedGraph, EmbeddingError, odd_cycles_one_sided, trace_faces

REPRESENTATION_EDGE_CAP = 14


@dataclass(frozen=True)
class HomologyClass:
    parity: int
    coords: tuple[int, ...]


@dataclass(frozen=True)
class HomologyBasis:
    """A shortest odd cycle and even closed walks, all as closed vertex sequences."""

    odd_cycle: tuple[int, ...]
    walks: tuple[tuple[int, ...], ...]
    euler_genus: int

    def max_edge_multiplicity(self, g: Graph) -> int:
        worst = 0
        for w in self.walks:
            counts: dict[int, int] = {}
            for i in range(len(w) - 1):
                e = g.edge_id(w[i], w[i + 1])
                counts[e] = counts.get(e, 0) + 1
            worst = max(worst, max(counts.values(), default=0))
        return worst


def check_hypotheses(eg: EmbeddedGraph) -> None:
    """Raise :class:`EmbeddingError` unless the embedding is 2-connected,
    non-bipartite and has exactly its odd cycles 1-sided."""
    g = eg.graph
    if g.n < 3 or not nx.is_biconnected(g.to_networkx()):
        raise EmbeddingError("graph must be 2-connected")
    if g.is_bipartite():
        raise EmbeddingError("graph must be non-bipartite")
    if not odd_cycles_one_sided(eg):
        raise EmbeddingError("some odd cycle is 2-sided")


def _alternating_vector(g: Graph, walk: Sequence[int]) -> list[int]:
    vec = [0] * g.m
    for i in range(len(walk) - 1):
        vec[g.edge_id(walk[i], walk[i + 1])] += 1 if i % 2 == 0 else -1
    return vec


class _Span:
    """Incrementally grown row space over the rationals."""

    def __init__(self):
        self.rows: list[tuple[int, list[Fraction]]] = []

    def reduce(self, v: Sequence[int]) -> list[Fraction]:
        v = [Fraction(x) for x in v]
        for piv, row in self.rows:
            if v[piv]:
                c = v[piv] / row[piv]
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def add(self, v: Sequence[int]) -> bool:
        r = self.reduce(v)
        piv = next((i for i, x in enumerate(r) if x), None)
        if piv is None:
            return False
        self.rows.append((piv, r))
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def shortest_odd_cycle(g: Graph) -> tuple[int, ...]:
    """A shortest odd cycle, as a closed vertex sequence (first vertex repeated)."""
    best = None
    for s in range(g.n):
        # BFS on the bipartite double cover from (s, 0) to (s, 1)
        prev = {(s, 0): None}
        queue = deque([(s, 0)])
        while queue:
            v, side = queue.popleft()
            if (s, 1) in prev:
                break
            for w in sorted(g.neighbors(v)):
                if (w, 1 - side) not in prev:
                    prev[(w, 1 - side)] = (v, side)
                    queue.append((w, 1 - side))
        if (s, 1) not in prev:
            continue
        walk = []
        cur = (s, 1)
        while cur is not None:
            walk.append(cur[0])
            cur = prev[cur]
        if best is None or len(walk) < len(best):
            best = walk
    if best is None:
        raise EmbeddingError("graph is bipartite")
    return tuple(reversed(best))


def _rotate(cycle: Sequence[int], start: int) -> list[int]:
    body = list(cycle[:-1])
    k = body.index(start)
    body = body[k:] + body[:k]
    return body + [start]


def _join_odd(g: Graph, a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Even closed walk running once around each odd cycle, linked by a shortest path.

    The linking path has no edge on either cycle, so no edge is used more
    than twice.
    """
    shared = sorted(set(a) & set(b))
    if shared:
        z = shared[0]
        return _rotate(a, z) + _rotate(b, z)[1:]
    sources = set(a[:-1])
    targets = set(b[:-1])
    prev: dict[int, int | None] = {s: None for s in sorted(sources)}
    queue = deque(sorted(sources))
    end = None
    while queue and end is None:
        u = queue.popleft()
        for w in sorted(g.neighbors(u)):
            if w not in prev:
                prev[w] = u
                if w in targets:
                    end = w
                    break
                queue.append(w)
    path = [end]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    path.reverse()
    return _rotate(a, path[0]) + path[1:] + _rotate(b, end)[1:] + list(reversed(path))[1:]


def _fundamental_cycle(parent: dict[int, int | None], depth: dict[int, int],
                       u: int, v: int) -> list[int]:
    left, right = [u], [v]
    while left[-1] != right[-1]:
        if depth[left[-1]] >= depth[right[-1]]:
            left.append(parent[left[-1]])
        else:
            right.append(parent[right[-1]])
    # u .. lca .. v, then back to u along the edge vu
    return left + list(reversed(right))[1:] + [u]


def homology_basis(eg: EmbeddedGraph) -> HomologyBasis:
    """Shortest odd cycle ``C`` plus ``eg - 1`` even closed walks.

    A spanning tree and a dual spanning tree on the remaining edges leave
    ``eg`` edges; each closes a fundamental cycle. Even ones are kept as
    they are, odd ones are joined with ``C`` to become even. Walks are
    accepted in order while they are independent of the face boundaries and
    of the walks already chosen.
    """
    check_hypotheses(eg)
    g = eg.graph
    fs = trace_faces(eg)
    C = shortest_odd_cycle(g)
    parent: dict[int, int | None] = {0: None}
    depth = {0: 0}
    tree: set[int] = set()
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in sorted(g.neighbors(u)):
            if w not in parent:
                parent[w], depth[w] = u, depth[u] + 1
                tree.add(g.edge_id(u, w))
                queue.append(w)
    occ = fs.occurrences()
    cotree: set[int] = set()
    seen = {0}
    fq = deque([0])
    while fq:
        f = fq.popleft()
        for e in fs.faces[f].edges:
            if e in tree or e in cotree:
                continue
            (f1, _), (f2, _) = occ[e]
            h = f2 if f1 == f else f1
            if h not in seen:
                seen.add(h)
                cotree.add(e)
                fq.append(h)
    leftover = [e for e in range(g.m) if e not in tree and e not in cotree]
    if len(leftover) != fs.euler_genus:
        raise AssertionError("tree-cotree leftover does not match the Euler genus")
    span = _Span()
    for face in fs.faces:
        span.add(_alternating_vector(g, face.walk))
    walks = []
    for e in leftover:
        u, v = g.edges[e]
        gamma = _fundamental_cycle(parent, depth, u, v)
        w = gamma if (len(gamma) - 1) % 2 == 0 else _join_odd(g, C, gamma)
        if span.add(_alternating_vector(g, w)):
            walks.append(tuple(w))
    if len(walks) != fs.euler_genus - 1 or span.rank != g.m - g.n:
        raise AssertionError("even walks and faces do not span the even cycle space")
    basis = HomologyBasis(C, tuple(walks), fs.euler_genus)
    if basis.max_edge_multiplicity(g) > 2:
        raise AssertionError("a basis walk uses an edge more than twice")
    return basis


def omega(g: Graph, y: Sequence[int], basis: HomologyBasis) -> HomologyClass:
    """Parity of the alternating sum along the odd cycle, then the sums along the walks."""
    if len(y) != g.m:
        raise ValueError("y must have one entry per edge")
    return HomologyClass(alternating_sum(g, basis.odd_cycle, y) % 2,
                         tuple(alternating_sum(g, w, y) for w in basis.walks))


@dataclass(frozen=True)
class RepresentationReport:
    slack_vectors: frozenset[tuple[int, ...]]
    circulations: frozenset[tuple[int, ...]]
    orientation: DualOrientation
    basis: HomologyBasis

    @property
    def equal(self) -> bool:
        return self.slack_vectors == self.circulations


def verify_dual_representation(eg: EmbeddedGraph,
                               cap: int = REPRESENTATION_EDGE_CAP) -> RepresentationReport:
    """Compare all 0/1 slack vectors with all 0/1 circulations homologous to all-ones."""
    g = eg.graph
    if g.m > cap:
        raise EmbeddingError(f"{g.m} edges exceeds the enumeration cap of {cap}")
    basis = homology_basis(eg)
    D = alternating_orientation(eg)
    target = HomologyClass(1, (0,) * len(basis.walks))
    ones = tuple([1] * g.m)
    if omega(g, ones, basis) != target or not D.is_circulation(ones):
        raise AssertionError("the all-ones vector must be a homologous circulation")
    slack, circ = set(), set()
    for y in itertools.product((0, 1), repeat=g.m):
        if membership_Y(g, y).member:
            slack.add(y)
        if D.is_circulation(y) and omega(g, y, basis) == target:
            circ.add(y)
    return RepresentationReport(frozenset(slack), frozenset(circ), D, basis)
