"""Deterministic and seeded instance generators.

Walls and Escher walls for the odd-cycle analyzers, certified random
integer programs for the two reduction pipelines, random gadget pairs and
embedded graphs satisfying the dual-representation hypotheses.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import networkx as nx

from .exactmat import RationalMatrix, max_abs_subdeterminant
from .model import IPInstance
from .stableset.graph import Graph
from .surface.embedding import EmbeddedGraph, trace_faces

# attempts before a certified generator gives up
MAX_ATTEMPTS = 1000


class GenerationFailed(RuntimeError):
    """No instance meeting the requested certificate was found."""


@dataclass(frozen=True)
class Wall:
    """A wall with its coordinates and named substructures.

    ``coords[v]`` is the grid position ``(x, y)`` of a wall vertex; vertices
    added by Escher paths have no entry. Paths are vertex sequences, bricks
    are 6-cycles listed left to right.
    """

    graph: Graph
    height: int
    kind: str
    coords: dict[int, tuple[int, int]]
    vertical_paths: tuple[tuple[int, ...], ...]
    horizontal_paths: tuple[tuple[int, ...], ...]
    top_bricks: tuple[tuple[int, ...], ...]
    bottom_bricks: tuple[tuple[int, ...], ...]
    linking_paths: tuple[tuple[int, ...], ...] = ()


def _wall_grid(h: int):
    """Vertex positions and edges of the elementary wall of height ``h``."""
    pts = [(x, y) for y in range(1, h + 1) for x in range(1, 2 * h + 1)]
    edges = set()
    for x, y in pts:
        if x < 2 * h:
            edges.add(((x, y), (x + 1, y)))
        if y < h:
            # rows 2j-1 -> 2j lose odd columns, rows 2j -> 2j+1 lose even ones
            if not (y % 2 == 1 and x % 2 == 1) and not (y % 2 == 0 and x % 2 == 0):
                edges.add(((x, y), (x, y + 1)))
    deg = {p: 0 for p in pts}
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    dead = {p for p, d in deg.items() if d <= 1}
    if len(dead) != 2:
        raise AssertionError("an elementary wall loses exactly two vertices")
    pts = [p for p in pts if p not in dead]
    edges = {e for e in edges if e[0] not in dead and e[1] not in dead}
    return pts, edges


def _vertical_columns(y: int, h: int) -> list[int]:
    """Columns carrying a vertical edge between rows ``y`` and ``y + 1``."""
    return [x for x in range(1, 2 * h + 1) if (x % 2 == 0) == (y % 2 == 1)]


def elementary_wall(h: int) -> Wall:
    """The elementary wall of height ``h >= 2``.

    Vertices are numbered row by row from the bottom, left to right.
    """
    if h < 2:
        raise ValueError("wall height must be at least 2")
    pts, edges = _wall_grid(h)
    pts.sort(key=lambda p: (p[1], p[0]))
    idx = {p: i for i, p in enumerate(pts)}
    g = Graph.from_edges(len(pts), sorted((idx[a], idx[b]) for a, b in edges))
    vertical = []
    for k in range(1, h + 1):
        # Q_k climbs at column 2k from odd rows and at column 2k-1 from even rows
        path = []
        for y in range(1, h + 1):
            below = 2 * k if (y - 1) % 2 == 1 else 2 * k - 1
            above = 2 * k if y % 2 == 1 else 2 * k - 1
            if y == 1:
                below = above
            if y == h:
                above = below
            for x in ([below, above] if below != above else [below]):
                if (x, y) in idx:
                    path.append(idx[(x, y)])
        vertical.append(tuple(path))
    left, right = set(vertical[0]), set(vertical[-1])
    horizontal = []
    for y in range(h, 0, -1):
        row = [idx[(x, y)] for x in range(1, 2 * h + 1) if (x, y) in idx]
        # from the last vertex of Q_1 to the first vertex of Q_h in this row
        lo = max(i for i, v in enumerate(row) if v in left)
        hi = min(i for i, v in enumerate(row) if v in right)
        horizontal.append(tuple(row[lo:hi + 1]))

    def bricks(y: int):
        cols = _vertical_columns(y, h)
        out = []
        for c in cols[:-1]:
            cyc = [(c, y), (c + 1, y), (c + 2, y), (c + 2, y + 1), (c + 1, y + 1), (c, y + 1)]
            out.append(tuple(idx[p] for p in cyc))
        return tuple(out)

    coords = {i: p for p, i in idx.items()}
    wall = Wall(g, h, "elementary", coords, tuple(vertical), tuple(horizontal),
                bricks(h - 1), bricks(1))
    _check_wall(wall)
    return wall


def _check_wall(wall: Wall) -> None:
    g = wall.graph
    for path in wall.vertical_paths + wall.horizontal_paths:
        if any(not g.has_edge(a, b) for a, b in zip(path, path[1:])):
            raise AssertionError("wall path uses a missing edge")
    used = [v for p in wall.vertical_paths for v in p]
    if len(used) != len(set(used)):
        raise AssertionError("vertical paths must be disjoint")
    for b in wall.top_bricks + wall.bottom_bricks:
        if any(not g.has_edge(b[i], b[(i + 1) % 6]) for i in range(6)):
            raise AssertionError("brick is not a 6-cycle")


def escher_wall(h: int) -> Wall:
    """An Escher wall of height ``h >= 3`` built on the elementary wall.

    Path ``R_i`` joins the middle top vertex of the ``i``th top brick to the
    middle bottom vertex of the ``(h-i)``th bottom brick. Those vertices lie
    in no other brick. ``R_i`` is a single edge when its ends share a colour
    class and a path of length two otherwise, so it always closes an odd cycle.
    """
    if h < 3:
        raise ValueError("Escher wall height must be at least 3")
    base = elementary_wall(h)
    g = base.graph
    colour = g.two_coloring()
    all_bricks = _all_bricks(base)
    edges = list(g.edges)
    n = g.n
    linking = []
    for i in range(1, h):
        top = base.top_bricks[i - 1][4]
        bottom = base.bottom_bricks[h - i - 1][1]
        for v, own in ((top, base.top_bricks[i - 1]), (bottom, base.bottom_bricks[h - i - 1])):
            if [b for b in all_bricks if v in b] != [own]:
                raise AssertionError("linking endpoint must lie in exactly one brick")
        if colour[top] == colour[bottom]:
            path = (top, bottom)
        else:
            path = (top, n, bottom)
            n += 1
        edges.extend(zip(path, path[1:]))
        linking.append(path)
    graph = Graph.from_edges(n, edges)
    for path in linking:
        # the path plus any wall path between its ends is an odd cycle
        if (len(path) - 1) % 2 == (colour[path[0]] != colour[path[-1]]):
            raise AssertionError("linking path does not close an odd cycle")
    return Wall(graph, h, "escher", base.coords, base.vertical_paths, base.horizontal_paths,
                base.top_bricks, base.bottom_bricks, tuple(linking))


def _all_bricks(wall: Wall) -> list[tuple[int, ...]]:
    h = wall.height
    idx = {p: v for v, p in wall.coords.items()}
    out = []
    for y in range(1, h):
        for c in _vertical_columns(y, h)[:-1]:
            cyc = [(c, y), (c + 1, y), (c + 2, y), (c + 2, y + 1), (c + 1, y + 1), (c, y + 1)]
            out.append(tuple(idx[p] for p in cyc))
    return out


# ----------------------------------------------------------------------------
# certified integer programs


def _certify(rows: list[list[int]], n: int, target: int) -> int | None:
    if not rows:
        return 1
    cert = max_abs_subdeterminant(RationalMatrix.from_rows(rows, n), order_cap=min(n, len(rows)))
    if not cert.exhaustive or cert.delta > target:
        return None
    return max(int(cert.delta), 1)


@dataclass(frozen=True)
class GeneratedIP:
    ip: IPInstance
    delta: int
    seed: int


def _random_graph_bounded_ocp(rng: random.Random, n: int, m: int, k: int) -> Graph:
    """Random graph on ``n`` vertices with at most ``m`` edges and at most ``k`` odd cycles packed.

    A bipartite skeleton receives edges inside one side only among the first
    ``2k + 1`` vertices, so every odd cycle meets that small set.
    """
    side = [rng.randint(0, 1) for _ in range(n)]
    pairs = [(u, v) for u, v in itertools.combinations(range(n), 2) if side[u] != side[v]]
    hub = list(range(min(n, 2 * k + 1))) if k else []
    pairs += [(u, v) for u, v in itertools.combinations(hub, 2) if side[u] == side[v]]
    rng.shuffle(pairs)
    return Graph.from_edges(n, sorted(pairs[:m]))


def random_two_per_row_ip(seed: int, n: int, m: int, delta_target: int,
                          bound: int = 2, big_entry: float = 0.15,
                          max_attempts: int = MAX_ATTEMPTS) -> GeneratedIP:
    """A random program with at most two nonzeros per row and certified ``Delta <= delta_target``.

    Rows are edges of a random graph with odd cycle packing number at most
    ``log2(delta_target)``, each row taking signs ``(+-1, +-1)``; single
    variable bound rows are mixed in. When the target allows it, an entry
    becomes ``+-2`` with probability ``big_entry``. Variables live in
    ``[-bound, bound]``.
    """
    if n < 1 or m < 1 or delta_target < 1:
        raise ValueError("n, m and delta_target must be positive")
    rng = random.Random(seed)
    k = int(math.log2(delta_target))
    for _ in range(max_attempts):
        g = _random_graph_bounded_ocp(rng, n, rng.randint(m // 2, m), k)

        def entry():
            if delta_target >= 2 and rng.random() < big_entry:
                return rng.choice((2, -2))
            return rng.choice((1, -1))

        rows = []
        for u, v in g.edges:
            r = [0] * n
            r[u], r[v] = entry(), entry()
            rows.append(r)
        while len(rows) < m and rng.random() < 0.6:
            r = [0] * n
            r[rng.randrange(n)] = entry()
            rows.append(r)
        if not rows:
            continue
        rng.shuffle(rows)
        delta = _certify(rows, n, delta_target)
        if delta is None:
            continue
        b = [rng.randint(-2, 3) for _ in rows]
        w = [rng.randint(-3, 3) for _ in range(n)]
        ip = IPInstance.build(rows, b, w, [-bound] * n, [bound] * n)
        return GeneratedIP(ip, delta, seed)
    raise GenerationFailed(f"no certified instance after {max_attempts} attempts")


def random_two_per_column_ip(seed: int, n: int, m: int, delta_target: int,
                             bound: int = 2, big_entry: float = 0.1,
                             max_attempts: int = MAX_ATTEMPTS) -> GeneratedIP:
    """A random program with at most two nonzeros per column and certified ``Delta``.

    Entries are ``+-1``, with probability ``big_entry`` of a ``+-2``.
    """
    if n < 1 or m < 1 or delta_target < 1:
        raise ValueError("n, m and delta_target must be positive")
    rng = random.Random(seed)
    for _ in range(max_attempts):
        cols = []
        for _ in range(n):
            c = [0] * m
            for r in rng.sample(range(m), min(rng.choice((1, 2, 2)), m)):
                c[r] = rng.choice((2, -2)) if rng.random() < big_entry else rng.choice((1, -1))
            cols.append(c)
        rows = [[cols[j][i] for j in range(n)] for i in range(m)]
        delta = _certify(rows, n, delta_target)
        if delta is None:
            continue
        b = [rng.randint(-2, 4) for _ in range(m)]
        w = [rng.randint(-3, 3) for _ in range(n)]
        ip = IPInstance.build(rows, b, w, [-bound] * n, [bound] * n)
        return GeneratedIP(ip, delta, seed)
    raise GenerationFailed(f"no certified instance after {max_attempts} attempts")


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def random_costs(rng: random.Random, g: Graph, high: int = 4) -> list[Fraction]:
    return [Fraction(rng.randint(0, high)) for _ in g.edges]


@dataclass(frozen=True)
class GadgetPair:
    G: Graph
    cG: tuple[Fraction, ...]
    W: Graph
    cW: tuple[Fraction, ...]
    attach: dict[int, int]


def random_gadget_pair(seed: int, omega_size: int, max_g: int = 6, max_w: int = 6) -> GadgetPair:
    """A graph ``G`` and a bipartite ``W`` sharing ``omega_size`` vertices.

    Half of the draws make ``W`` connected with all attachment vertices in
    one colour class, which exercises the even-parity gadgets.
    """
    if not 0 <= omega_size <= 3:
        raise ValueError("omega_size must be between 0 and 3")
    rng = random.Random(seed)
    nG = rng.randint(max(1, omega_size), max_g)
    G = random_graph(rng, nG, 0.4)
    nW = rng.randint(max(1, omega_size), max_w)
    same_side = rng.random() < 0.5
    if same_side:
        # the attachment vertices come first and share colour 0
        col = [0] * omega_size + [rng.randint(0, 1) for _ in range(nW - omega_size)]
        if nW > omega_size:
            col[-1] = 1
    else:
        col = [rng.randint(0, 1) for _ in range(nW)]
    pairs = [(a, b) for a, b in itertools.combinations(range(nW), 2) if col[a] != col[b]]
    edges = {e for e in pairs if rng.random() < 0.6}
    if same_side:
        # a spanning tree of the complete bipartite graph keeps W connected
        ones = [v for v in range(nW) if col[v] == 1]
        zeros = [v for v in range(nW) if col[v] == 0]
        for v in zeros:
            if ones:
                u = rng.choice(ones)
                edges.add((min(u, v), max(u, v)))
        for v in ones:
            if zeros:
                u = rng.choice(zeros)
                edges.add((min(u, v), max(u, v)))
    W = Graph.from_edges(nW, sorted(edges))
    omega = list(range(omega_size)) if same_side else rng.sample(range(nW), omega_size)
    attach = dict(zip(omega, rng.sample(range(nG), omega_size)))
    return GadgetPair(G, tuple(random_costs(rng, G)), W, tuple(random_costs(rng, W)), attach)


# ----------------------------------------------------------------------------
# embedded fixtures


def k4_projective_fixture() -> EmbeddedGraph:
    """K4 in the projective plane: three quadrilateral faces, every triangle 1-sided."""
    g = Graph.complete(4)
    eg = EmbeddedGraph(g, ((0, 1, 2), (0, 4, 3), (1, 3, 5), (2, 5, 4)), (-1,) * 6)
    fs = trace_faces(eg)
    if sorted(len(f) for f in fs.faces) != [4, 4, 4] or fs.euler_genus != 1:
        raise AssertionError("K4 fixture must have three quadrilateral faces")
    return eg


def random_embedded_fixture(seed: int, max_vertices: int = 7, max_edges: int = 14,
                            max_attempts: int = MAX_ATTEMPTS) -> EmbeddedGraph:
    """A random 2-connected non-bipartite embedding in which exactly the odd cycles are 1-sided.

    The rotation is random; the signature of ``uv`` is ``-t_u t_v`` for a
    random vertex sign ``t``, which makes a cycle 1-sided exactly when it
    is odd. All faces are then even.
    """
    rng = random.Random(seed)
    for _ in range(max_attempts):
        n = rng.randint(3, max_vertices)
        m = rng.randint(n, min(max_edges, n * (n - 1) // 2))
        g = Graph.from_edges(n, sorted(rng.sample(list(itertools.combinations(range(n), 2)), m)))
        if g.is_bipartite() or not nx.is_biconnected(g.to_networkx()):
            continue
        rotation = []
        for v in range(n):
            d = list(g.delta(v))
            rng.shuffle(d)
            rotation.append(tuple(d))
        t = [rng.choice((1, -1)) for _ in range(n)]
        eg = EmbeddedGraph(g, tuple(rotation), tuple(-t[u] * t[v] for u, v in g.edges))
        if any(len(f) % 2 for f in trace_faces(eg).faces):
            raise AssertionError("odd face under an odd-is-1-sided signature")
        return eg
    raise GenerationFailed(f"no fixture after {max_attempts} attempts")


def random_stable_set_weights(rng: random.Random, g: Graph, low: int = -2,
                              high: int = 6) -> list[Fraction]:
    return [Fraction(rng.randint(low, high)) for _ in range(g.n)]


def as_int_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    return [[int(v) for v in r] for r in rows]
