"""Alternating orientations of the dual and cross-free cycle decompositions."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .embedding import EmbeddedGraph, EmbeddingError, FaceStructure, trace_faces

OUT = 1
IN = -1


@dataclass(frozen=True)
class DualOrientation:
    """One dual node per face and one arc per primal edge.

    ``ends[f]`` lists the arc ends at face ``f`` in the cyclic order of the
    face walk, each as ``(edge, OUT | IN)``. Arc ``e`` runs from
    ``tail[e]`` to ``head[e]``.
    """

    faces: FaceStructure
    tail: tuple[int, ...]
    head: tuple[int, ...]
    ends: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def nodes(self) -> int:
        return len(self.ends)

    @property
    def arcs(self) -> int:
        return len(self.tail)

    def is_alternating(self) -> bool:
        for ring in self.ends:
            for i, (_, d) in enumerate(ring):
                if ring[(i + 1) % len(ring)][1] == d:
                    return False
        return True

    def imbalance(self, y: Sequence[int]) -> list[int]:
        """Outflow minus inflow at every dual node."""
        return [sum(d * y[e] for e, d in ring) for ring in self.ends]

    def is_circulation(self, y: Sequence[int]) -> bool:
        return len(y) == self.arcs and not any(self.imbalance(y))


def alternating_orientation(eg: EmbeddedGraph, faces: FaceStructure | None = None) -> DualOrientation:
    """Orient every dual arc so that arcs alternately leave and enter each face.

    Around face ``f`` the end at walk position ``i`` leaves ``f`` exactly when
    ``i + t_f`` is even. The two ends of an arc must disagree, which gives a
    parity equation between the ``t`` of its two faces; these are solved by
    a search over the dual starting with ``t = 0`` on face 0.
    """
    if faces is None:
        faces = trace_faces(eg)
    for f, face in enumerate(faces.faces):
        if len(face) % 2:
            raise EmbeddingError(f"face {f} has odd length {len(face)}")
    occ = faces.occurrences()
    nbrs: list[list[tuple[int, int]]] = [[] for _ in faces.faces]
    for e, ((f, i), (h, j)) in sorted(occ.items()):
        rel = (1 + i + j) % 2
        if f == h:
            if rel:
                raise EmbeddingError(f"edge {e} cannot alternate on face {f}")
            continue
        nbrs[f].append((h, rel))
        nbrs[h].append((f, rel))
    t: list[int | None] = [None] * len(faces.faces)
    for s in range(len(t)):
        if t[s] is not None:
            continue
        t[s] = 0
        queue = deque([s])
        while queue:
            f = queue.popleft()
            for h, rel in nbrs[f]:
                want = (t[f] + rel) % 2
                if t[h] is None:
                    t[h] = want
                    queue.append(h)
                elif t[h] != want:
                    raise EmbeddingError("no alternating orientation exists")
    ends = tuple(tuple((e, OUT if (i + t[f]) % 2 == 0 else IN) for i, e in enumerate(face.edges))
                 for f, face in enumerate(faces.faces))
    tail = [0] * eg.m
    head = [0] * eg.m
    for f, ring in enumerate(ends):
        for e, d in ring:
            if d == OUT:
                tail[e] = f
            else:
                head[e] = f
    out = DualOrientation(faces, tuple(tail), tuple(head), ends)
    if not out.is_alternating():
        raise AssertionError("orientation failed the local alternation check")
    return out


@dataclass(frozen=True)
class CrossFreeDecomposition:
    """Per-node matchings of in-ends to out-ends and the directed cycles they induce.

    ``matchings[f]`` holds ``(in_position, out_position)`` pairs, positions
    indexing ``orientation.ends[f]``. Each cycle is a sequence of arcs.
    """

    matchings: tuple[tuple[tuple[int, int], ...], ...]
    cycles: tuple[tuple[int, ...], ...]


def _between(x: int, a: int, b: int, size: int) -> bool:
    """``x`` strictly inside the cyclic interval running from ``a`` to ``b``."""
    return 0 < (x - a) % size < (b - a) % size


def crosses(p: tuple[int, int], q: tuple[int, int], size: int) -> bool:
    """Whether pair ``q`` crosses pair ``p`` at a node with ``size`` ends.

    ``q`` crosses ``p`` when its in-end lies between the in-end and out-end of
    ``p`` while its out-end lies between the out-end and the in-end of ``p``.
    """
    (i1, o1), (i2, o2) = p, q
    return _between(i2, i1, o1, size) and _between(o2, o1, i1, size)


def is_cross_free(pairs: Sequence[tuple[int, int]], size: int) -> bool:
    return not any(crosses(p, q, size) for p in pairs for q in pairs if p != q)


def crossfree_decompose(orientation: DualOrientation, y: Sequence[int]) -> CrossFreeDecomposition:
    """Split a 0/1 circulation into directed cycles with cross-free node matchings.

    At each node, among the supported ends in cyclic order, the first
    in/out pair that is consecutive is matched and removed, until none
    remain. Following the matchings from arc to arc yields the cycles.
    """
    if len(y) != orientation.arcs or any(v not in (0, 1) for v in y):
        raise ValueError("y must be a 0/1 vector over the arcs")
    if not orientation.is_circulation(y):
        raise ValueError("y is not a circulation")
    matchings = []
    succ: dict[int, int] = {}
    for ring in orientation.ends:
        live = [i for i, (e, _) in enumerate(ring) if y[e]]
        pairs = []
        while live:
            for k in range(len(live)):
                a, b = live[k], live[(k + 1) % len(live)]
                if ring[a][1] != ring[b][1]:
                    break
            else:
                raise AssertionError("unbalanced node in a circulation")
            i_pos, o_pos = (a, b) if ring[a][1] == IN else (b, a)
            pairs.append((i_pos, o_pos))
            succ[ring[i_pos][0]] = ring[o_pos][0]
            live = [p for p in live if p not in (a, b)]
        if not is_cross_free(pairs, len(ring)):
            raise AssertionError("consecutive matching produced a crossing")
        matchings.append(tuple(pairs))
    cycles = []
    seen: set[int] = set()
    for e in range(orientation.arcs):
        if not y[e] or e in seen:
            continue
        cyc = []
        cur = e
        while cur not in seen:
            seen.add(cur)
            cyc.append(cur)
            cur = succ[cur]
        cycles.append(tuple(cyc))
    return CrossFreeDecomposition(tuple(matchings), tuple(cycles))
