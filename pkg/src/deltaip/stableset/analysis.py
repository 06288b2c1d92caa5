"""Exhaustive odd cycle packing / transversal numbers and resilience checks."""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import NamedTuple

from .graph import Graph
from .solvers import CapExceeded

OCP_CAP = 14
OCT_CAP = 14


def chordless_odd_cycles(g: Graph) -> list[frozenset[int]]:
    """Vertex sets of all induced odd cycles (triangles included).

    Every odd cycle contains the vertex set of an induced odd cycle, so these
    are enough to compute the odd cycle packing number.
    """
    found: set[frozenset[int]] = set()
    adj = [set(g.neighbors(v)) for v in range(g.n)]
    for s in range(g.n):
        # cycles whose smallest vertex is s
        path = [s]
        on_path = {s}

        def extend(v: int) -> None:
            for u in adj[v]:
                if u <= s or u in on_path:
                    if u == s and len(path) >= 3 and len(path) % 2 == 1:
                        # closing edge; path already chordless
                        found.add(frozenset(path))
                    continue
                # u must not be adjacent to any inner path vertex except v (and s only when closing)
                ok = True
                for p in path[1:-1]:
                    if u in adj[p]:
                        ok = False
                        break
                if not ok:
                    continue
                if s in adj[u] and len(path) >= 2:
                    # adding u closes the cycle; check parity on closure
                    if (len(path) + 1) % 2 == 1:
                        found.add(frozenset(path + [u]))
                    continue
                path.append(u)
                on_path.add(u)
                extend(u)
                path.pop()
                on_path.discard(u)

        extend(s)
    return sorted(found, key=lambda c: (len(c), sorted(c)))


def ocp_brute(g: Graph, cap: int = OCP_CAP) -> int:
    """Maximum number of vertex-disjoint odd cycles."""
    if g.n > cap:
        raise CapExceeded(f"ocp brute force capped at {cap} vertices")
    cycles = [sum(1 << v for v in c) for c in chordless_odd_cycles(g)]
    by_low: dict[int, list[int]] = {}
    for c in cycles:
        by_low.setdefault((c & -c).bit_length() - 1, []).append(c)

    @lru_cache(maxsize=None)
    def pack(mask: int) -> int:
        if not mask:
            return 0
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        best = pack(rest)
        # cycles through v whose other vertices are still available; the
        # lowest vertex of a usable cycle is >= v because smaller ones are gone
        for c in by_low.get(v, ()):
            if c & mask == c:
                best = max(best, 1 + pack(mask & ~c))
        return best

    return pack((1 << g.n) - 1)


def oct_brute(g: Graph, cap: int = OCT_CAP) -> int:
    """Minimum number of vertices whose removal leaves a bipartite graph."""
    if g.n > cap:
        raise CapExceeded(f"oct brute force capped at {cap} vertices")
    for k in range(g.n + 1):
        for X in itertools.combinations(range(g.n), k):
            if g.without_vertices(X)[0].is_bipartite():
                return k
    return g.n


def odd_cycle_transversal(g: Graph, cap: int = OCT_CAP) -> tuple[int, ...]:
    k = oct_brute(g, cap)
    for X in itertools.combinations(range(g.n), k):
        if g.without_vertices(X)[0].is_bipartite():
            return X
    raise AssertionError("unreachable")


class ResilienceResult(NamedTuple):
    resilient: bool
    witness: tuple[int, ...] | None
    ocp: int


def resilience_check(g: Graph, rho: int, cap: int = OCP_CAP) -> ResilienceResult:
    """Is ``g`` rho-resilient?

    Looks for a set X with ``|X| <= rho`` such that every component of
    ``g - X`` has a smaller odd cycle packing number than ``g``; such an X is
    returned as the witness of non-resilience.
    """
    if rho < 0:
        raise ValueError("rho must be nonnegative")
    if rho > 3:
        raise CapExceeded("resilience checks are capped at rho <= 3")
    target = ocp_brute(g, cap)
    if target == 0:
        return ResilienceResult(True, None, 0)
    for k in range(rho + 1):
        for X in itertools.combinations(range(g.n), k):
            rest, labels = g.without_vertices(X)
            rich = False
            for comp in rest.components():
                sub, _ = rest.induced(comp)
                if ocp_brute(sub, cap) == target:
                    rich = True
                    break
            if not rich:
                return ResilienceResult(False, X, target)
    return ResilienceResult(True, None, target)
