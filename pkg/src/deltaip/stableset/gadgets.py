"""Replacing a bipartite piece W glued on at most three vertices by a small gadget.

Given ``G`` and a bipartite ``W`` sharing a boundary ``Omega`` of at most three
vertices, the gadget graph ``G+`` keeps ``G``, copies the edges of ``W``
inside ``Omega``, and adds a few virtual vertices whose edge costs come from
the table ``c_W(S_I)`` of minimum slack costs of stable sets of ``W`` with
prescribed intersection ``I`` with the boundary. Minimum slack cost in
``G u W`` and ``G+`` coincide, and solutions map in both directions.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from ..exactmat import as_rational
from .graph import Graph
from .solvers import min_cost_bipartite

# virtual edges per case, as (endpoint, endpoint, pattern) where endpoints are
# boundary positions (ints) or virtual vertex names and the cost of the edge
# is c_W(S_pattern)
_LAYOUTS: dict[str, tuple[tuple[str, ...], tuple[tuple[object, object, frozenset[int]], ...]]] = {
    "W1": ((), ()),
    "W2-even": (("x",), (
        (0, "x", frozenset({1})),
        (1, "x", frozenset({0})),
    )),
    "W2-odd": (("x", "y"), (
        (0, "x", frozenset()),
        ("x", "y", frozenset({0, 1})),
        ("y", 1, frozenset()),
    )),
    "W3a": (("a1", "a2", "a3", "x"), (
        (0, "a1", frozenset({1, 2})),
        (1, "a2", frozenset({0, 2})),
        (2, "a3", frozenset({0, 1})),
        ("a1", "x", frozenset({0})),
        ("a2", "x", frozenset({1})),
        ("a3", "x", frozenset({2})),
    )),
    "W3b": (("a1", "a2", "a3", "a3'", "x"), (
        (0, "a1", frozenset({1})),
        (1, "a2", frozenset({0})),
        (2, "a3", frozenset()),
        ("a3", "a3'", frozenset({0, 1, 2})),
        ("a1", "x", frozenset({0, 2})),
        ("a2", "x", frozenset({1, 2})),
        ("a3'", "x", frozenset()),
    )),
}


@dataclass(frozen=True)
class GadgetRecord:
    """Bookkeeping for one replaced component of W.

    ``omega`` lists the boundary in gadget order (labels of ``G``), with
    ``omega_w`` the same vertices in W's labels. ``table`` maps each boundary
    pattern (set of positions in ``omega``) to ``(c_W(S_I), S_I)`` with
    ``S_I`` in union labels.
    """

    omega: tuple[int, ...]
    omega_w: tuple[int, ...]
    case: str
    parity: Mapping[tuple[int, int], int]
    virtual_vertices: Mapping[str, int]
    virtual_edges: tuple[int, ...]
    table: Mapping[frozenset[int], tuple[Fraction, tuple[int, ...]]]
    private: tuple[int, ...]


@dataclass(frozen=True)
class GadgetResult:
    """``G+`` with costs, the glued graph ``G u W`` with costs, and the records."""

    plus: Graph
    plus_costs: tuple[Fraction, ...]
    union: Graph
    union_costs: tuple[Fraction, ...]
    n_base: int
    records: tuple[GadgetRecord, ...]

    def lift(self, S_plus: Sequence[int]) -> tuple[int, ...]:
        """Stable set of ``G+`` -> stable set of ``G u W`` that is no more expensive."""
        S_plus = set(S_plus)
        out = {v for v in S_plus if v < self.n_base}
        for rec in self.records:
            I = frozenset(i for i, v in enumerate(rec.omega) if v in S_plus)
            out |= set(rec.table[I][1])
        return tuple(sorted(out))

    def project(self, S: Sequence[int]) -> tuple[int, ...]:
        """Stable set of ``G u W`` -> stable set of ``G+`` that is no more expensive."""
        S = set(S)
        out = {v for v in S if v < self.n_base}
        for rec in self.records:
            out |= set(_best_completion(self.plus, self.plus_costs, rec, out))
        return tuple(sorted(out))


def glue(G: Graph, cG: Sequence, W: Graph, cW: Sequence,
         attach: Mapping[int, int]) -> tuple[Graph, tuple[Fraction, ...], list[int]]:
    """The union ``G u W`` where W-vertex ``k`` is identified with ``attach[k]``.

    Other W vertices get fresh labels after those of ``G``. An edge present in
    both graphs appears once with the sum of its costs.
    """
    if len(set(attach.values())) != len(attach):
        raise ValueError("attachment must be injective")
    wmap: list[int] = []
    nxt = G.n
    for k in range(W.n):
        if k in attach:
            if not 0 <= attach[k] < G.n:
                raise ValueError("attachment target outside G")
            wmap.append(attach[k])
        else:
            wmap.append(nxt)
            nxt += 1
    edges = list(G.edges)
    costs = [as_rational(c) for c in cG]
    index = {e: i for i, e in enumerate(edges)}
    for (a, b), c in zip(W.edges, cW):
        key = (min(wmap[a], wmap[b]), max(wmap[a], wmap[b]))
        if key in index:
            costs[index[key]] += as_rational(c)
        else:
            index[key] = len(edges)
            edges.append(key)
            costs.append(as_rational(c))
    return Graph(nxt, tuple(edges)), tuple(costs), wmap


def _path_parities(W: Graph, s: int, t: int) -> set[int]:
    """Parities of the s-t walks in ``W`` (empty when t is unreachable)."""
    seen = {(s, 0)}
    queue = deque([(s, 0)])
    while queue:
        v, p = queue.popleft()
        for u in W.neighbors(v):
            if (u, 1 - p) not in seen:
                seen.add((u, 1 - p))
                queue.append((u, 1 - p))
    return {p for p in (0, 1) if (t, p) in seen}


def exchange_split(W: Graph, v1: int, v2: int, S1: Sequence[int],
                   S2: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Swap the boundary behaviour of two stable sets without changing union or intersection.

    With all ``v1``-``v2`` paths of one parity ``p``: if ``p`` is odd, ``S1``
    contains both and ``S2`` neither, the result has ``S3`` containing only
    ``v1`` and ``S4`` only ``v2``; if ``p`` is even, ``S1`` contains only
    ``v1`` and ``S2`` only ``v2``, then ``S3`` contains both and ``S4``
    neither. ``S3`` takes ``S1`` on the component K of ``W[S1 u S2]``
    containing ``v1`` and ``S2`` elsewhere.
    """
    S1, S2 = set(S1), set(S2)
    if not (W.is_stable(S1) and W.is_stable(S2)):
        raise ValueError("S1 and S2 must be stable")
    par = _path_parities(W, v1, v2)
    if len(par) > 1:
        raise ValueError("v1-v2 paths of both parities exist")
    b1, b2 = S1 & {v1, v2}, S2 & {v1, v2}
    if b1 == {v1, v2} and not b2:
        if par == {0}:
            raise ValueError("this exchange needs odd v1-v2 paths")
    elif b1 == {v1} and b2 == {v2}:
        if par == {1}:
            raise ValueError("this exchange needs even v1-v2 paths")
    else:
        raise ValueError("S1, S2 do not meet {v1, v2} as the exchange requires")
    U = S1 | S2
    K = {v1}
    queue = deque([v1])
    while queue:
        v = queue.popleft()
        for u in W.neighbors(v):
            if u in U and u not in K:
                K.add(u)
                queue.append(u)
    if v2 in K:
        raise AssertionError("v2 reached from v1 inside S1 u S2; parity argument violated")
    S3 = (S1 & K) | (S2 - K)
    S4 = (S1 - K) | (S2 & K)
    return tuple(sorted(S3)), tuple(sorted(S4))


def _add_edge(edges: list, costs: list, index: dict, u: int, v: int, c: Fraction) -> int:
    key = (min(u, v), max(u, v))
    if key in index:
        costs[index[key]] += c
        return index[key]
    index[key] = len(edges)
    edges.append(key)
    costs.append(c)
    return index[key]


def gadget_replace(G: Graph, cG: Sequence, W: Graph, cW: Sequence,
                   attach: Mapping[int, int]) -> GadgetResult:
    """Replace the bipartite graph ``W`` glued onto ``G`` by gadgets with computed costs.

    ``attach`` maps the boundary vertices of ``W`` to vertices of ``G``; at
    most three may be attached. A disconnected ``W`` is handled one
    component at a time.
    """
    if len(cG) != G.m or len(cW) != W.m:
        raise ValueError("one cost per edge required")
    if len(attach) > 3:
        raise ValueError("at most three boundary vertices are supported")
    coloring = W.two_coloring()
    if coloring is None:
        raise ValueError("W must be bipartite")
    cG = [as_rational(c) for c in cG]
    cW = [as_rational(c) for c in cW]
    if any(c < 0 for c in cG + cW):
        raise ValueError("costs must be nonnegative")
    union, union_costs, wmap = glue(G, cG, W, cW, attach)

    edges = list(G.edges)
    costs = list(cG)
    index = {e: i for i, e in enumerate(edges)}
    n_plus = G.n
    records = []
    for comp in W.components():
        omega_w = sorted((k for k in comp if k in attach), key=lambda k: attach[k])
        cset = set(comp)
        # boundary-boundary edges move to G+; the rest forms W'
        inner = [e for e, (a, b) in enumerate(W.edges) if a in cset and b in cset]
        moved = [e for e in inner if W.edges[e][0] in attach and W.edges[e][1] in attach]
        for e in moved:
            a, b = W.edges[e]
            _add_edge(edges, costs, index, attach[a], attach[b], cW[e])
        keep = [e for e in inner if e not in moved]
        local = sorted(cset)
        pos = {v: i for i, v in enumerate(local)}
        Wp = Graph(len(local), tuple((pos[W.edges[e][0]], pos[W.edges[e][1]]) for e in keep))
        cWp = [cW[e] for e in keep]

        k = len(omega_w)
        parity = {(i, j): int(coloring[omega_w[i]] != coloring[omega_w[j]])
                  for i in range(k) for j in range(i + 1, k)}
        if k <= 1:
            case = "W1"
        elif k == 2:
            case = "W2-even" if parity[(0, 1)] == 0 else "W2-odd"
        elif all(p == 0 for p in parity.values()):
            case = "W3a"
        else:
            # put the even pair first
            even = next(pair for pair, p in parity.items() if p == 0)
            third = ({0, 1, 2} - set(even)).pop()
            omega_w = [omega_w[even[0]], omega_w[even[1]], omega_w[third]]
            parity = {(i, j): int(coloring[omega_w[i]] != coloring[omega_w[j]])
                      for i in range(3) for j in range(i + 1, 3)}
            case = "W3b"

        table: dict[frozenset[int], tuple[Fraction, tuple[int, ...]]] = {}
        for r in range(k + 1):
            for I in combinations(range(k), r):
                fin = [pos[omega_w[i]] for i in I]
                fout = [pos[omega_w[i]] for i in range(k) if i not in I]
                sol = min_cost_bipartite(Wp, cWp, fin, fout)
                if sol is None:
                    raise AssertionError("boundary pattern infeasible without boundary edges")
                S_local, cost = sol
                table[frozenset(I)] = (cost, tuple(sorted(wmap[local[v]] for v in S_local)))

        names, layout = _LAYOUTS[case]
        virtual = {}
        for name in names:
            virtual[name] = n_plus
            n_plus += 1
        omega = tuple(attach[v] for v in omega_w)

        def endpoint(tag):
            return omega[tag] if isinstance(tag, int) else virtual[tag]

        vedges = []
        for a, b, pattern in layout:
            vedges.append(_add_edge(edges, costs, index, endpoint(a), endpoint(b), table[pattern][0]))
        private = tuple(sorted(wmap[v] for v in comp if v not in attach))
        records.append(GadgetRecord(omega, tuple(omega_w), case, parity, virtual,
                                    tuple(vedges), table, private))

    plus = Graph(n_plus, tuple(edges))
    return GadgetResult(plus, tuple(costs), union, union_costs, G.n, tuple(records))


def _best_completion(plus: Graph, costs: Sequence[Fraction], rec: GadgetRecord,
                     chosen: set[int]) -> tuple[int, ...]:
    """Virtual vertices of ``rec`` to add so its virtual slack cost is minimal."""
    names = list(rec.virtual_vertices.values())
    if not names:
        return ()
    best_cost, best_set = None, ()
    for r in range(len(names) + 1):
        for extra in combinations(names, r):
            S = chosen | set(extra)
            if any(plus.has_edge(u, v) for u in extra for v in S if u != v):
                continue
            cost = sum((costs[e] for e in rec.virtual_edges
                        if plus.edges[e][0] not in S and plus.edges[e][1] not in S), Fraction(0))
            if best_cost is None or cost < best_cost:
                best_cost, best_set = cost, extra
    return tuple(best_set)
