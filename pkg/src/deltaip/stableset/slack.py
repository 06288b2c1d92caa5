"""Slack sets, slack vectors and their calculus.

A slack vector of G is a nonnegative integer edge vector ``y`` for which some
integer vertex vector ``x`` gives ``y[vw] = 1 - x[v] - x[w]`` on every edge.
Characteristic vectors of slack sets of stable sets are the 0/1 examples.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

from .graph import Graph, StableSetInstance, slack_edges


class NotSlackVector(ValueError):
    """The given edge vector is not in Y(G)."""


@dataclass(frozen=True)
class SlackVector:
    y: tuple[int, ...]
    x: tuple[int, ...] | None = None

    def __post_init__(self):
        if any(v < 0 for v in self.y):
            raise ValueError("slack vectors are nonnegative")


def slack_cost(inst: StableSetInstance, S: Iterable[int]) -> Fraction:
    """Total cost of the edges left slack by the stable set ``S``."""
    S = set(S)
    g = inst.graph
    if not g.is_stable(S):
        raise ValueError("S is not a stable set")
    if inst.costs is None:
        raise ValueError("instance has no edge costs")
    return sum((inst.costs[e] for e in slack_edges(g, S)), Fraction(0))


def verify_slack_identity(inst: StableSetInstance, S: Iterable[int]) -> bool:
    """Check ``w(S) + c(S) == c(E)`` for edge-induced weights."""
    S = set(S)
    if inst.weights is None or inst.costs is None:
        raise ValueError("identity needs both weights and costs")
    return inst.weight(S) + slack_cost(inst, S) == inst.total_cost()


def alternating_sum(g: Graph, walk: Sequence[int], y: Sequence[int]) -> int:
    """``sum_i (-1)^(i-1) y[e_i]`` along the vertex sequence ``walk``."""
    total = 0
    for i in range(len(walk) - 1):
        e = g.edge_id(walk[i], walk[i + 1])
        total += y[e] if i % 2 == 0 else -y[e]
    return total


class Membership(NamedTuple):
    """Result of a Y(G) membership test.

    Either ``x`` is a witness, or ``walk`` is a closed walk (vertex sequence)
    whose alternating sum has the wrong value: nonzero for an even walk, even
    for an odd walk.
    """

    member: bool
    x: tuple[int, ...] | None
    walk: tuple[int, ...] | None
    reason: str = ""


def _tree_path(parent: dict[int, int | None], v: int) -> list[int]:
    out = [v]
    while parent[out[-1]] is not None:
        out.append(parent[out[-1]])
    return out  # v ... root


def _closed_walk(parent, u: int, v: int) -> list[int]:
    """root -> u, edge uv, v -> root."""
    to_u = list(reversed(_tree_path(parent, u)))
    from_v = _tree_path(parent, v)
    return to_u + from_v


def membership_Y(g: Graph, y: Sequence[int]) -> Membership:
    """Decide ``y in Y(g)`` and produce a witness x or a violated closed walk.

    Per component, x is propagated along a BFS tree as ``a[v] + s[v] * t`` with
    ``t`` the root value; non-tree edges either pin ``t`` (odd closure) or must
    hold identically (even closure). Bipartite components take ``t = 0``.
    """
    if len(y) != g.m:
        raise ValueError("y must have one entry per edge")
    if any(int(v) != v or v < 0 for v in y):
        return Membership(False, None, None, "entries must be nonnegative integers")
    y = [int(v) for v in y]
    x = [0] * g.n
    for comp in g.components():
        root = comp[0]
        a = {root: 0}
        s = {root: 1}
        parent: dict[int, int | None] = {root: None}
        order = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in sorted(g.neighbors(u)):
                if v not in a:
                    e = g.edge_id(u, v)
                    a[v] = 1 - a[u] - y[e]
                    s[v] = -s[u]
                    parent[v] = u
                    order.append(v)
                    queue.append(v)
        t_value: int | None = None
        t_walk: list[int] | None = None
        for e, (u, v) in enumerate(g.edges):
            if u not in a or parent.get(v) == u or parent.get(u) == v:
                continue
            rhs = 1 - y[e] - a[u] - a[v]
            walk = _closed_walk(parent, u, v)
            if s[u] != s[v]:
                if rhs != 0:
                    return Membership(False, None, tuple(walk),
                                      "even closed walk with nonzero alternating sum")
            else:
                if rhs % 2:
                    return Membership(False, None, tuple(walk),
                                      "odd closed walk with even alternating sum")
                t = (rhs // 2) * s[u]
                if t_value is None:
                    t_value, t_walk = t, walk
                elif t != t_value:
                    # two odd walks through the root pin different values;
                    # together they form an even closed walk
                    combined = t_walk + list(reversed(walk))[1:]
                    return Membership(False, None, tuple(combined),
                                      "even closed walk with nonzero alternating sum")
        t = t_value or 0
        for v in order:
            x[v] = a[v] + s[v] * t
    return Membership(True, tuple(x), None)


def _shortest_odd_closed_walk(g: Graph, u: int) -> list[int] | None:
    """Shortest odd closed walk through ``u`` via BFS on the bipartite double cover."""
    start = (u, 0)
    prev: dict[tuple[int, int], tuple[int, int] | None] = {start: None}
    queue = deque([start])
    while queue:
        v, side = queue.popleft()
        for w in sorted(g.neighbors(v)):
            nxt = (w, 1 - side)
            if nxt in prev:
                continue
            prev[nxt] = (v, side)
            if nxt == (u, 1):
                walk = [u]
                cur = prev[nxt]
                while cur is not None:
                    walk.append(cur[0])
                    cur = prev[cur]
                return list(reversed(walk))
            queue.append(nxt)
    return None


def recover_x_from_slack(g: Graph, y: Sequence[int]) -> tuple[int, ...]:
    """The unique integer x with ``y[vw] = 1 - x[v] - x[w]`` on a connected non-bipartite graph.

    One vertex is pinned by the alternating sum of a shortest odd closed walk,
    the rest follow by propagation.
    """
    if not g.is_connected():
        raise ValueError("graph must be connected")
    if g.is_bipartite():
        raise ValueError("bipartite graph: x is not unique, choose a side instead")
    y = [int(v) for v in y]
    u = 0
    walk = _shortest_odd_closed_walk(g, u)
    omega = alternating_sum(g, walk, y)
    if omega % 2 == 0:
        raise NotSlackVector("alternating sum along an odd closed walk is even")
    x: list[int | None] = [None] * g.n
    x[u] = (1 - omega) // 2
    queue = deque([u])
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if x[w] is None:
                x[w] = 1 - x[v] - y[g.edge_id(v, w)]
                queue.append(w)
    for e, (a, b) in enumerate(g.edges):
        if y[e] != 1 - x[a] - x[b]:
            raise NotSlackVector(f"edge {e} violates y = 1 - x_v - x_w")
    return tuple(x)


class RoundingResult(NamedTuple):
    stable_set: tuple[int, ...]
    slack_set: tuple[int, ...]
    cost: Fraction
    iterations: int
    cost_trace: tuple[Fraction, ...]


def round_slack_vector(inst: StableSetInstance, y: Sequence[int]) -> RoundingResult:
    """Turn a slack vector into a slack set that is no more expensive.

    Bipartite components take the side of their 2-coloring containing the
    smallest vertex. On non-bipartite components the witness x is shifted by
    integers on the two sides of a tight component until every value is 0/1,
    always moving in the direction that does not increase the cost.
    """
    g = inst.graph
    c = inst.costs
    if c is None:
        raise ValueError("instance has no edge costs")
    mem = membership_Y(g, y)
    if not mem.member:
        raise NotSlackVector(mem.reason)
    y = [int(v) for v in y]
    start_cost = sum((c[e] * y[e] for e in range(g.m)), Fraction(0))
    stable: list[int] = []
    iterations = 0
    trace = [start_cost]
    for comp in g.components():
        sub, labels = g.induced(comp)
        sub_edges = [g.edge_id(labels[u], labels[v]) for u, v in sub.edges]
        coloring = sub.two_coloring()
        if coloring is not None:
            stable.extend(labels[v] for v in range(sub.n) if coloring[v] == coloring[0])
            continue
        sub_y = [y[e] for e in sub_edges]
        sub_c = [c[e] for e in sub_edges]
        x = list(recover_x_from_slack(sub, sub_y))
        its, ctrace = _round_component(sub, x, sub_c)
        iterations += its
        stable.extend(labels[v] for v in range(sub.n) if x[v] == 1)
        base = trace[-1]
        # report the global cost after each local step
        comp_start = sum((sub_c[e] * sub_y[e] for e in range(sub.m)), Fraction(0))
        trace.extend(base - comp_start + v for v in ctrace[1:])
    stable.sort()
    F = tuple(slack_edges(g, stable))
    cost = sum((c[e] for e in F), Fraction(0))
    return RoundingResult(tuple(stable), F, cost, iterations, tuple(trace))


def _round_component(g: Graph, x: list[int], c: Sequence[Fraction]) -> tuple[int, list[Fraction]]:
    def yv(e):
        u, v = g.edges[e]
        return 1 - x[u] - x[v]

    def cost():
        return sum((c[e] * yv(e) for e in range(g.m)), Fraction(0))

    trace = [cost()]
    iterations = 0
    while True:
        bad = next((v for v in range(g.n) if x[v] not in (0, 1)), None)
        if bad is None:
            return iterations, trace
        iterations += 1
        # component of the tight-edge graph containing `bad`
        H = {bad}
        queue = deque([bad])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if w not in H and yv(g.edge_id(u, w)) == 0:
                    H.add(w)
                    queue.append(w)
        alpha = x[bad] if x[bad] >= 2 else 1 - x[bad]
        A = {v for v in H if x[v] == alpha}
        B = H - A
        E_A = [e for e, (u, v) in enumerate(g.edges) if u in A or v in A]
        E_B = [e for e, (u, v) in enumerate(g.edges) if u in B or v in B]
        inner = {e for e in E_A if g.edges[e][0] in H and g.edges[e][1] in H}
        cA = sum((c[e] for e in E_A), Fraction(0))
        cB = sum((c[e] for e in E_B), Fraction(0))
        if cA > cB:
            # raise A, lower B: slack on edges leaving A shrinks
            t = min(yv(e) for e in E_A if e not in inner)
            up, down = A, B
        else:
            # move H toward 0/1: lower A, raise B
            t = alpha - 1
            shrinking = [yv(e) for e in E_B if e not in inner]
            if shrinking:
                t = min(t, min(shrinking))
            up, down = B, A
        if t <= 0:
            raise AssertionError("rounding step made no progress")
        for v in up:
            x[v] += t
        for v in down:
            x[v] -= t
        trace.append(cost())


class CompositionResult(NamedTuple):
    member: bool
    part_verdicts: tuple[bool, ...]
    slack: SlackVector | None
    walk: tuple[int, ...] | None


def compose_slack(g: Graph, parts: Sequence[Sequence[int]],
                  part_vectors: Sequence[Mapping[int, int]]) -> CompositionResult:
    """Glue slack vectors of ``G_0, ..., G_t`` into one of their union.

    ``parts[i]`` lists the edge ids of ``G_i`` in ``g``; ``part_vectors[i]``
    maps those edge ids to values. Parts ``i >= 1`` must be bipartite and meet
    ``G_0`` in a connected graph; the glued vector is in Y(g) exactly when
    each restriction is in Y(G_i), and that verdict is cross-checked against
    a direct membership test of the glued vector.
    """
    if len(parts) != len(part_vectors) or not parts:
        raise ValueError("need one vector per part and at least one part")
    glued: dict[int, int] = {}
    for edges, vec in zip(parts, part_vectors):
        if set(vec) != set(edges):
            raise ValueError("part vector must cover exactly the part's edges")
        for e in edges:
            if e in glued and glued[e] != vec[e]:
                raise ValueError(f"parts disagree on shared edge {e}")
            glued[e] = vec[e]
    if set(glued) != set(range(g.m)):
        raise ValueError("parts must cover every edge")
    part_graphs = [_part_graph(g, edges) for edges in parts]
    base_vertices = set(part_graphs[0][1])
    for i, (sub, labels, _) in enumerate(part_graphs[1:], start=1):
        if not sub.is_bipartite():
            raise ValueError(f"part {i} is not bipartite")
        shared = base_vertices & set(labels)
        if shared:
            common = [e for e in parts[0] if e in set(parts[i])]
            probe = Graph(g.n, tuple(g.edges[e] for e in common))
            comps = [cpt for cpt in probe.components() if cpt[0] in shared or len(cpt) > 1]
            comps = [cpt for cpt in comps if set(cpt) & shared]
            if len(comps) > 1:
                raise ValueError(f"part {i} meets part 0 in a disconnected graph")
    verdicts = []
    for (sub, labels, edges), vec in zip(part_graphs, part_vectors):
        verdicts.append(membership_Y(sub, [vec[e] for e in edges]).member)
    y = [glued[e] for e in range(g.m)]
    direct = membership_Y(g, y)
    member = all(verdicts)
    if member != direct.member:
        raise AssertionError("composition verdict disagrees with direct membership test")
    if member:
        return CompositionResult(True, tuple(verdicts), SlackVector(tuple(y), direct.x), None)
    return CompositionResult(False, tuple(verdicts), None, direct.walk)


def _part_graph(g: Graph, edges: Sequence[int]):
    verts = sorted({v for e in edges for v in g.edges[e]})
    pos = {v: i for i, v in enumerate(verts)}
    sub = Graph(len(verts), tuple((pos[g.edges[e][0]], pos[g.edges[e][1]]) for e in edges))
    return sub, verts, list(edges)
