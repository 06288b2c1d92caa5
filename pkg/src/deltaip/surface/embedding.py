"""Rotation systems with edge signatures and face tracing.

An embedding of a simple graph is given by a cyclic order of the incident
edges at every vertex together with a sign per edge. A ``-1`` edge flips the
local sense of rotation when it is crossed, which is how non-orientable
surfaces arise.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from ..stableset.graph import Graph


class EmbeddingError(ValueError):
    """Malformed embedding or an embedding outside an operation's hypotheses."""


@dataclass(frozen=True)
class EmbeddedGraph:
    """``graph`` with ``rotation[v]`` a cyclic order of the edge ids at ``v``."""

    graph: Graph
    rotation: tuple[tuple[int, ...], ...]
    signature: tuple[int, ...]

    def __post_init__(self):
        g = self.graph
        rot = tuple(tuple(int(e) for e in r) for r in self.rotation)
        sig = tuple(int(s) for s in self.signature)
        if len(rot) != g.n:
            raise EmbeddingError("one rotation per vertex")
        if len(sig) != g.m or any(s not in (1, -1) for s in sig):
            raise EmbeddingError("one signature in {+1, -1} per edge")
        for v in range(g.n):
            if sorted(rot[v]) != sorted(g.delta(v)):
                raise EmbeddingError(f"rotation at {v} is not a permutation of its edges")
        object.__setattr__(self, "rotation", rot)
        object.__setattr__(self, "signature", sig)

    @classmethod
    def from_rotation(cls, n: int, rotation: Sequence[Sequence[int]],
                      edges: Sequence[Sequence[int]], signature: Sequence[int]) -> "EmbeddedGraph":
        return cls(Graph.from_edges(n, edges), tuple(map(tuple, rotation)), tuple(signature))

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    def next_edge(self, v: int, e: int, sense: int) -> int:
        """Neighbour of ``e`` in the rotation at ``v``, clockwise for ``sense = +1``."""
        r = self.rotation[v]
        return r[(r.index(e) + sense) % len(r)]

    def is_orientable(self) -> bool:
        """Whether flipping some vertices makes every signature ``+1``."""
        return _switching_class(self.graph, self.signature) is not None

    def cycle_sign(self, walk: Sequence[int]) -> int:
        """Product of signatures along a closed vertex walk; ``-1`` means 1-sided."""
        s = 1
        for i in range(len(walk) - 1):
            s *= self.signature[self.graph.edge_id(walk[i], walk[i + 1])]
        return s


@dataclass(frozen=True)
class Face:
    """A face boundary walk: leave ``darts[i][0]`` along edge ``darts[i][1]``."""

    darts: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.darts)

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(e for _, e in self.darts)

    @property
    def walk(self) -> tuple[int, ...]:
        """Closed vertex sequence, first vertex repeated at the end."""
        return tuple(v for v, _ in self.darts) + (self.darts[0][0],)


@dataclass(frozen=True)
class FaceStructure:
    faces: tuple[Face, ...]
    euler_genus: int
    orientable: bool

    def occurrences(self) -> dict[int, list[tuple[int, int]]]:
        """Edge id -> its two ``(face, position)`` sides, in face order."""
        occ: dict[int, list[tuple[int, int]]] = {}
        for f, face in enumerate(self.faces):
            for pos, e in enumerate(face.edges):
                occ.setdefault(e, []).append((f, pos))
        return occ


def trace_faces(eg: EmbeddedGraph) -> FaceStructure:
    """Face boundary walks, Euler genus and orientability of a connected embedding.

    A tracing state is ``(v, e, sense)``: standing at ``v`` about to leave
    along ``e``. Crossing ``e`` multiplies the sense by its signature, and
    the walk continues with the rotation neighbour of ``e`` in that sense.
    Every face is met twice, once per direction; the second copy is dropped.
    """
    g = eg.graph
    if g.n == 0:
        raise EmbeddingError("empty graph")
    if not g.is_connected():
        raise EmbeddingError("face tracing needs a connected graph")

    def step(state):
        v, e, s = state
        w = g.other(e, v)
        s2 = s * eg.signature[e]
        return (w, eg.next_edge(w, e, s2), s2)

    orbit_of: dict[tuple[int, int, int], int] = {}
    orbits: list[list[tuple[int, int, int]]] = []
    for v in range(g.n):
        for e in eg.rotation[v]:
            for s in (1, -1):
                if (v, e, s) in orbit_of:
                    continue
                orbit = []
                cur = (v, e, s)
                while cur not in orbit_of:
                    orbit_of[cur] = len(orbits)
                    orbit.append(cur)
                    cur = step(cur)
                orbits.append(orbit)
    faces: list[Face] = []
    dropped: set[int] = set()
    for k, orbit in enumerate(orbits):
        if k in dropped:
            continue
        v, e, s = orbit[0]
        w, _, s2 = step(orbit[0])
        mirror = orbit_of[(w, e, -s2)]
        if mirror == k:
            raise EmbeddingError("face walk coincides with its own reversal")
        dropped.add(mirror)
        faces.append(Face(tuple((u, f) for u, f, _ in orbit)))
    if sum(len(f) for f in faces) != 2 * g.m:
        raise AssertionError("face walks must cover every edge side once")
    eg_value = 2 - g.n + g.m - len(faces)
    return FaceStructure(tuple(faces), eg_value, eg.is_orientable())


def _switching_class(g: Graph, sign: Sequence[int]) -> list[int] | None:
    """Vertex signs ``t`` with ``sign[uv] = t[u] t[v]`` on every edge, or ``None``."""
    t: list[int | None] = [None] * g.n
    for comp in g.components():
        t[comp[0]] = 1
        queue = deque([comp[0]])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                want = t[u] * sign[g.edge_id(u, w)]
                if t[w] is None:
                    t[w] = want
                    queue.append(w)
                elif t[w] != want:
                    return None
    return t


def odd_cycles_one_sided(eg: EmbeddedGraph) -> bool:
    """Whether a cycle is 1-sided exactly when it is odd.

    On a 2-connected non-bipartite graph the odd cycles span the cycle space,
    so this is the same as asking every odd cycle to be 1-sided.
    """
    flipped = [-s for s in eg.signature]
    return _switching_class(eg.graph, flipped) is not None
