"""Exact stable set solvers."""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Sequence

from ..lp import LPProblem, solve
from .graph import Graph, StableSetInstance, slack_edges

DEFAULT_BRUTE_CAP = 24


class CapExceeded(RuntimeError):
    """An exhaustive routine was asked to handle an instance above its size cap."""


class StableSetSolution(NamedTuple):
    vertices: tuple[int, ...]
    value: Fraction


def brute_force_stable_set(inst: StableSetInstance, mode: str = "weight",
                           cap: int = DEFAULT_BRUTE_CAP) -> StableSetSolution:
    """Optimal stable set by depth-first enumeration with bound pruning.

    ``mode="weight"`` maximizes total vertex weight; ``mode="cost"`` minimizes
    the cost of the slack edges. Among optimal sets the first one met in the
    enumeration order (vertex 0 included before excluded) is returned.
    """
    g = inst.graph
    if g.n > cap:
        raise CapExceeded(f"{g.n} vertices exceeds the brute-force cap of {cap}")
    if mode == "weight":
        if inst.weights is None:
            raise ValueError("weight mode needs vertex weights")
        return _brute_weight(g, inst.weights)
    if mode == "cost":
        if inst.costs is None:
            raise ValueError("cost mode needs edge costs")
        return _brute_cost(g, inst.costs)
    raise ValueError(f"unknown mode {mode!r}")


def _brute_weight(g: Graph, w: Sequence[Fraction]) -> StableSetSolution:
    n = g.n
    suffix = [Fraction(0)] * (n + 1)
    for v in range(n - 1, -1, -1):
        suffix[v] = suffix[v + 1] + max(w[v], Fraction(0))
    best: list = [None, None]
    chosen: list[int] = []
    blocked = [0] * n

    def rec(v: int, val: Fraction) -> None:
        if best[1] is not None and val + suffix[v] <= best[1]:
            return
        if v == n:
            best[0], best[1] = tuple(chosen), val
            return
        if not blocked[v]:
            chosen.append(v)
            for u in g.neighbors(v):
                blocked[u] += 1
            rec(v + 1, val + w[v])
            for u in g.neighbors(v):
                blocked[u] -= 1
            chosen.pop()
        rec(v + 1, val)

    rec(0, Fraction(0))
    return StableSetSolution(best[0], best[1])


def _brute_cost(g: Graph, c: Sequence[Fraction]) -> StableSetSolution:
    n = g.n
    # edges become certainly slack once both endpoints are excluded
    closing: list[list[int]] = [[] for _ in range(n)]
    for e, (u, v) in enumerate(g.edges):
        closing[max(u, v)].append(e)
    best: list = [None, None]
    state = [0] * n  # 1 = in S

    def rec(v: int, cost: Fraction) -> None:
        if best[1] is not None and cost >= best[1]:
            return
        if v == n:
            best[0] = tuple(i for i in range(n) if state[i])
            best[1] = cost
            return
        if not any(state[u] for u in g.neighbors(v) if u < v):
            state[v] = 1
            rec(v + 1, cost)
            state[v] = 0
        extra = Fraction(0)
        for e in closing[v]:
            if not state[g.other(e, v)]:
                extra += c[e]
        rec(v + 1, cost + extra)

    rec(0, Fraction(0))
    return StableSetSolution(best[0], best[1])


def max_weight_stable_set(g: Graph, w: Sequence[Fraction]) -> StableSetSolution:
    """Exact maximum weight stable set by memoized branching.

    Nonpositive vertices are discarded, components are solved separately and
    branching happens on a vertex of maximum degree. Intended for the sparse
    graphs the IP reductions produce (a few dozen vertices).
    """
    w = [Fraction(x) for x in w]
    nbr = [0] * g.n
    for u, v in g.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    memo: dict[int, tuple[Fraction, int]] = {}

    def bits(mask: int):
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def component(mask: int) -> int:
        start = mask & -mask
        comp = start
        frontier = start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= nbr[v]
            nxt &= mask & ~comp
            comp |= nxt
            frontier = nxt
        return comp

    def best(mask: int) -> tuple[Fraction, int]:
        if not mask:
            return Fraction(0), 0
        hit = memo.get(mask)
        if hit is not None:
            return hit
        comp = component(mask)
        if comp != mask:
            a_val, a_set = best(comp)
            b_val, b_set = best(mask & ~comp)
            out = (a_val + b_val, a_set | b_set)
        else:
            pick, pick_deg = -1, -1
            for v in bits(mask):
                d = (nbr[v] & mask).bit_count()
                if d == 0:
                    break
                if d > pick_deg:
                    pick, pick_deg = v, d
            if pick_deg <= 0:
                # single isolated vertex (mask is one component)
                v = (mask & -mask).bit_length() - 1
                out = (w[v], mask) if w[v] > 0 else (Fraction(0), 0)
            else:
                v = pick
                t_val, t_set = best(mask & ~nbr[v] & ~(1 << v))
                t_val += w[v]
                s_val, s_set = best(mask & ~(1 << v))
                out = (t_val, t_set | (1 << v)) if t_val > s_val else (s_val, s_set)
        memo[mask] = out
        return out

    start = 0
    for v in range(g.n):
        if w[v] > 0:
            start |= 1 << v
    val, chosen = best(start)
    return StableSetSolution(tuple(bits(chosen)), val)


def solve_bipartite(inst: StableSetInstance) -> StableSetSolution:
    """Maximum weight stable set of a bipartite graph through its LP relaxation.

    The edge-vertex incidence matrix of a bipartite graph is totally
    unimodular, so the simplex vertex is integral.
    """
    g = inst.graph
    if not g.is_bipartite():
        raise ValueError("graph is not bipartite")
    if inst.weights is None:
        raise ValueError("instance has no vertex weights")
    res = _stable_set_lp(g, inst.weights)
    S = tuple(v for v in range(g.n) if res.x_star[v] == 1)
    if any(x not in (0, 1) for x in res.x_star):
        raise AssertionError("bipartite stable set LP returned a fractional vertex")
    return StableSetSolution(S, res.objective)


def min_cost_bipartite(g: Graph, costs: Sequence[Fraction],
                       fixed_in: Sequence[int] = (), fixed_out: Sequence[int] = ()):
    """Minimum slack cost stable set in a bipartite graph with prescribed vertices.

    Returns ``(S, cost)`` or ``None`` when the prescription is not stable.
    """
    if not g.is_bipartite():
        raise ValueError("graph is not bipartite")
    fixed_in, fixed_out = set(fixed_in), set(fixed_out)
    if not g.is_stable(fixed_in):
        return None
    w = [Fraction(0)] * g.n
    for (u, v), c in zip(g.edges, costs):
        w[u] += c
        w[v] += c
    lower = [1 if v in fixed_in else 0 for v in range(g.n)]
    upper = [0 if v in fixed_out else 1 for v in range(g.n)]
    res = _stable_set_lp(g, w, lower, upper)
    if not res.optimal:
        return None
    if any(x not in (0, 1) for x in res.x_star):
        raise AssertionError("bipartite stable set LP returned a fractional vertex")
    S = tuple(v for v in range(g.n) if res.x_star[v] == 1)
    cost = sum((costs[e] for e in slack_edges(g, S)), Fraction(0))
    return S, cost


def _stable_set_lp(g: Graph, w, lower=None, upper=None):
    rows = []
    for u, v in g.edges:
        r = [0] * g.n
        r[u] = r[v] = 1
        rows.append(r)
    p = LPProblem.build(rows or [[0] * g.n], [1] * max(1, g.m), w,
                        lower or [0] * g.n, upper or [1] * g.n)
    return solve(p)
