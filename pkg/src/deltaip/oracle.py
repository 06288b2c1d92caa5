"""Ground-truth solvers: exhaustive search and exact LP branch-and-bound.

Everything here favours obviousness over speed; the reduction pipelines are
checked against these routines.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .exactmat import as_rational
from .lp import LPProblem, solve
from .model import INFEASIBLE, OPTIMAL, UNBOUNDED, IPResult
from .stableset.graph import Graph
from .stableset.solvers import CapExceeded

DEFAULT_BOX_CAP = int(os.environ.get("DELTAIP_BOX_CAP", 10**7))
DEFAULT_NODE_CAP = int(os.environ.get("DELTAIP_NODE_CAP", 200_000))
STABLE_SET_CAP = 24


@dataclass(frozen=True)
class SearchBox:
    """Integer box ``lower[j] <= z_j <= upper[j]``."""

    lower: tuple[int, ...]
    upper: tuple[int, ...]

    def __post_init__(self):
        if len(self.lower) != len(self.upper):
            raise ValueError("lower and upper must have the same length")

    @property
    def empty(self) -> bool:
        return any(lo > hi for lo, hi in zip(self.lower, self.upper))

    def size(self) -> int:
        if self.empty:
            return 0
        return math.prod(hi - lo + 1 for lo, hi in zip(self.lower, self.upper))

    @classmethod
    def from_bounds(cls, p: LPProblem) -> "SearchBox":
        if any(v is None for v in p.lower + p.upper):
            raise ValueError("every variable needs finite bounds")
        return cls(tuple(math.ceil(v) for v in p.lower), tuple(math.floor(v) for v in p.upper))

    @classmethod
    def around(cls, center: Sequence, radius, p: LPProblem | None = None) -> "SearchBox":
        """All integers within L-infinity distance ``radius`` of ``center``, clipped to ``p``'s bounds."""
        radius = as_rational(radius)
        lo = [math.ceil(as_rational(c) - radius) for c in center]
        hi = [math.floor(as_rational(c) + radius) for c in center]
        if p is not None:
            for j in range(len(lo)):
                if p.lower[j] is not None:
                    lo[j] = max(lo[j], math.ceil(p.lower[j]))
                if p.upper[j] is not None:
                    hi[j] = min(hi[j], math.floor(p.upper[j]))
        return cls(tuple(lo), tuple(hi))

    def intersect(self, other: "SearchBox") -> "SearchBox":
        return SearchBox(tuple(max(a, b) for a, b in zip(self.lower, other.lower)),
                         tuple(min(a, b) for a, b in zip(self.upper, other.upper)))

    def contains(self, z: Sequence[int]) -> bool:
        return all(lo <= v <= hi for v, lo, hi in zip(z, self.lower, self.upper))


def _integer_rows(p: LPProblem):
    """Rows scaled to integers: list of (coeffs, rhs, is_equality)."""
    rows = []
    for i in range(p.m):
        r = p.A.row(i)
        lam = math.lcm(*(v.denominator for v in r), p.b[i].denominator)
        rows.append(([int(v * lam) for v in r], int(p.b[i] * lam), i in p.equalities))
    return rows


def brute_force_ip(p: LPProblem, box: SearchBox | None = None,
                   cap: int = DEFAULT_BOX_CAP) -> IPResult:
    """Exact optimum over the integer points of ``box`` satisfying ``p``.

    Depth-first over the variables in index order and values in increasing
    order; a point only replaces the incumbent when strictly better, so the
    lexicographically smallest optimal point is returned. Partial assignments
    are cut when some row can no longer be satisfied.
    """
    if box is None:
        box = SearchBox.from_bounds(p)
    else:
        box = box.intersect(SearchBox.around([0] * p.n, 10**18, p))
    if box.size() > cap:
        raise CapExceeded(f"search box has {box.size()} points, cap is {cap}")
    if box.empty:
        return IPResult(INFEASIBLE)
    n = p.n
    lo, hi = box.lower, box.upper
    rows = _integer_rows(p)
    # min/max remaining contribution of variables j.. for each row
    rmin = [[0] * (n + 1) for _ in rows]
    rmax = [[0] * (n + 1) for _ in rows]
    for k, (r, _, _) in enumerate(rows):
        for j in range(n - 1, -1, -1):
            a, b = r[j] * lo[j], r[j] * hi[j]
            rmin[k][j] = rmin[k][j + 1] + min(a, b)
            rmax[k][j] = rmax[k][j + 1] + max(a, b)
    wl = math.lcm(*(v.denominator for v in p.w)) if n else 1
    w = [int(v * wl) for v in p.w]
    wmax = [0] * (n + 1)
    for j in range(n - 1, -1, -1):
        wmax[j] = wmax[j + 1] + max(w[j] * lo[j], w[j] * hi[j])
    lhs = [0] * len(rows)
    z = [0] * n
    best: list = [None, None]

    def rec(j: int, val: int) -> None:
        if best[1] is not None and val + wmax[j] <= best[1]:
            return
        if j == n:
            best[0], best[1] = tuple(z), val
            return
        for v in range(lo[j], hi[j] + 1):
            ok = True
            for k, (r, rhs, eq) in enumerate(rows):
                cur = lhs[k] + r[j] * v
                if cur + rmin[k][j + 1] > rhs or (eq and cur + rmax[k][j + 1] < rhs):
                    ok = False
                    break
            if not ok:
                continue
            for k, (r, _, _) in enumerate(rows):
                lhs[k] += r[j] * v
            z[j] = v
            rec(j + 1, val + w[j] * v)
            for k, (r, _, _) in enumerate(rows):
                lhs[k] -= r[j] * v

    rec(0, 0)
    if best[0] is None:
        return IPResult(INFEASIBLE)
    return IPResult(OPTIMAL, Fraction(best[1], wl), best[0])


def branch_and_bound_ip(p: LPProblem, node_cap: int = DEFAULT_NODE_CAP) -> IPResult:
    """Exact LP-based branch-and-bound.

    Branches on the first fractional coordinate, floor side first, and prunes
    nodes whose LP bound does not beat the incumbent. An unbounded root
    relaxation with an integral feasible point is reported as unbounded
    (rational data); finite bounds on every variable avoid that case.
    """
    best: list = [None, None]
    nodes = 0
    stack = [(tuple(p.lower), tuple(p.upper))]
    root = True
    while stack:
        lower, upper = stack.pop()
        nodes += 1
        if nodes > node_cap:
            raise CapExceeded(f"branch-and-bound exceeded {node_cap} nodes")
        sub = LPProblem(p.A, p.b, p.w, lower, upper, p.equalities)
        res = solve(sub)
        if res.status == "infeasible":
            root = False
            continue
        if res.status == "unbounded":
            if root:
                feas = branch_and_bound_ip(LPProblem(p.A, p.b, tuple(Fraction(0) for _ in p.w),
                                                     p.lower, p.upper, p.equalities), node_cap)
                if feas.status == INFEASIBLE:
                    return feas
                return IPResult(UNBOUNDED)
            raise ValueError("unbounded relaxation below the root; give finite bounds")
        root = False
        if best[1] is not None and res.objective <= best[1]:
            continue
        frac = next((j for j, v in enumerate(res.x_star) if v.denominator != 1), None)
        if frac is None:
            best[0] = tuple(int(v) for v in res.x_star)
            best[1] = res.objective
            continue
        v = res.x_star[frac]
        up_lower = list(lower)
        up_lower[frac] = Fraction(math.ceil(v))
        down_upper = list(upper)
        down_upper[frac] = Fraction(math.floor(v))
        # pushed last is explored first
        stack.append((tuple(up_lower), upper))
        stack.append((lower, tuple(down_upper)))
    if best[0] is None:
        return IPResult(INFEASIBLE)
    return IPResult(OPTIMAL, best[1], best[0])


def enumerate_stable_sets(g: Graph, cap: int = STABLE_SET_CAP) -> Iterator[tuple[int, ...]]:
    """Every stable set of ``g`` exactly once, as sorted tuples."""
    if g.n > cap:
        raise CapExceeded(f"{g.n} vertices exceeds the enumeration cap of {cap}")
    chosen: list[int] = []
    blocked = [0] * g.n

    def rec(v: int):
        if v == g.n:
            yield tuple(chosen)
            return
        yield from rec(v + 1)
        if not blocked[v]:
            chosen.append(v)
            for u in g.neighbors(v):
                blocked[u] += 1
            yield from rec(v + 1)
            for u in g.neighbors(v):
                blocked[u] -= 1
            chosen.pop()

    yield from rec(0)


def slack_vector_by_search(g: Graph, y: Sequence[int]) -> tuple[int, ...] | None:
    """Definition-level test of ``y in Y(g)``: search an integer x in a bounded box.

    Any member has a witness with ``|x_v| <= n (max y + 1)``, so the box
    ``[-B, B]`` with ``B = n (max y + 1) + 1`` is exhaustive. Vertices of
    each component are assigned in BFS order and every value of the box is
    tried.
    """
    if len(y) != g.m:
        raise ValueError("y must have one entry per edge")
    if any(v < 0 for v in y):
        return None
    B = g.n * (max(y, default=0) + 1) + 1
    x: dict[int, int] = {}
    # components are independent, so each is searched on its own
    for comp in g.components():
        order = _bfs(g, comp[0])
        pos = {v: i for i, v in enumerate(order)}

        def rec(i: int) -> bool:
            if i == len(order):
                return True
            v = order[i]
            for val in range(-B, B + 1):
                if all(y[g.edge_id(u, v)] == 1 - val - x[u]
                       for u in g.neighbors(v) if pos[u] < i):
                    x[v] = val
                    if rec(i + 1):
                        return True
                    del x[v]
            return False

        if not rec(0):
            return None
    return tuple(x[v] for v in range(g.n))


def _bfs(g: Graph, s: int) -> list[int]:
    out = [s]
    seen = {s}
    i = 0
    while i < len(out):
        for u in sorted(g.neighbors(out[i])):
            if u not in seen:
                seen.add(u)
                out.append(u)
        i += 1
    return out
