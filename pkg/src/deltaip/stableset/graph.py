"""Simple undirected graphs and weighted stable set instances."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import networkx as nx

from ..exactmat import RationalMatrix, as_rational


@dataclass(frozen=True)
class Graph:
    """Simple graph on vertices ``0..n-1``.

    Edges are stored as ``(u, v)`` with ``u < v`` in the order given; an edge
    is referred to by its position in ``edges``.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    _adj: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        norm = []
        index: dict[tuple[int, int], int] = {}
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for e, (u, v) in enumerate(self.edges):
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {(u, v)} has an endpoint outside 0..{self.n - 1}")
            key = (min(u, v), max(u, v))
            if key in index:
                raise ValueError(f"parallel edge {key}")
            index[key] = e
            norm.append(key)
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(n, tuple((int(u), int(v)) for u, v in edges))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, tuple((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, tuple((i, i + 1) for i in range(n - 1)))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "Graph":
        return cls(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._index

    def edge_id(self, u: int, v: int) -> int:
        return self._index[(min(u, v), max(u, v))]

    def delta(self, v: int) -> list[int]:
        """Indices of the edges incident to ``v``."""
        return [self._index[(min(v, u), max(v, u))] for u in sorted(self._adj[v])]

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def is_stable(self, S: Iterable[int]) -> bool:
        S = set(S)
        return all(not (u in S and v in S) for u, v in self.edges)

    def incidence_matrix(self) -> RationalMatrix:
        """Edge-vertex incidence matrix (one row per edge)."""
        rows = []
        for u, v in self.edges:
            r = [0] * self.n
            r[u] = r[v] = 1
            rows.append(r)
        return RationalMatrix.from_rows(rows, self.n)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = [s]
            seen[s] = True
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for v in sorted(self._adj[u]):
                    if not seen[v]:
                        seen[v] = True
                        comp.append(v)
                        queue.append(v)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def two_coloring(self) -> list[int] | None:
        """BFS 2-coloring (each component's smallest vertex gets color 0), or None."""
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] != -1:
                continue
            color[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for v in self._adj[u]:
                    if color[v] == -1:
                        color[v] = 1 - color[u]
                        queue.append(v)
                    elif color[v] == color[u]:
                        return None
        return color

    def is_bipartite(self) -> bool:
        return self.two_coloring() is not None

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, relabelled ``0..k-1``; returns it with the old labels."""
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        edges = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        return Graph(len(keep), tuple(edges)), keep

    def edge_subgraph(self, edge_ids: Iterable[int]) -> "Graph":
        """Same vertex set, only the chosen edges (in the given order)."""
        return Graph(self.n, tuple(self.edges[e] for e in edge_ids))

    def without_vertices(self, removed: Iterable[int]) -> tuple["Graph", list[int]]:
        removed = set(removed)
        return self.induced(v for v in range(self.n) if v not in removed)


def _maybe_rationals(values, length: int, what: str) -> tuple[Fraction, ...] | None:
    if values is None:
        return None
    out = tuple(as_rational(v) for v in values)
    if len(out) != length:
        raise ValueError(f"{what} has length {len(out)}, expected {length}")
    return out


@dataclass(frozen=True)
class StableSetInstance:
    """A graph with vertex weights and/or edge costs.

    When both are given, the weights must be induced by the costs:
    ``w(v) = sum of c(e) over edges e at v``.
    """

    graph: Graph
    weights: tuple[Fraction, ...] | None = None
    costs: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        w = _maybe_rationals(self.weights, self.graph.n, "weights")
        c = _maybe_rationals(self.costs, self.graph.m, "costs")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "costs", c)
        if c is not None and any(v < 0 for v in c):
            raise ValueError("edge costs must be nonnegative")
        if w is not None and c is not None:
            induced = induced_weights(self.graph, c)
            if induced != w:
                raise ValueError("vertex weights are not induced by the edge costs")

    @classmethod
    def from_costs(cls, graph: Graph, costs: Sequence) -> "StableSetInstance":
        c = tuple(as_rational(v) for v in costs)
        return cls(graph, induced_weights(graph, c), c)

    def weight(self, S: Iterable[int]) -> Fraction:
        if self.weights is None:
            raise ValueError("instance has no vertex weights")
        return sum((self.weights[v] for v in S), Fraction(0))

    def total_cost(self) -> Fraction:
        if self.costs is None:
            raise ValueError("instance has no edge costs")
        return sum(self.costs, Fraction(0))


def induced_weights(graph: Graph, costs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    w = [Fraction(0)] * graph.n
    for (u, v), c in zip(graph.edges, costs):
        w[u] += c
        w[v] += c
    return tuple(w)


def slack_edges(graph: Graph, S: Iterable[int]) -> list[int]:
    """The slack set: edges with no endpoint in ``S``."""
    S = set(S)
    return [e for e, (u, v) in enumerate(graph.edges) if u not in S and v not in S]
