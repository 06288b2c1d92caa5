"""Seeded randomized self-checks shared by the command line and the test-suite.

Each ``check_*`` function draws one instance from its seed, runs a pipeline
and compares against an independent oracle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .instances import (random_embedded_fixture, random_gadget_pair, random_graph,
                        random_two_per_column_ip, random_two_per_row_ip)
from .colpipe import solve_two_per_column
from .oracle import brute_force_ip
from .rowpipe import solve_two_per_row
from .stableset.gadgets import gadget_replace
from .stableset.graph import Graph, StableSetInstance, slack_edges
from .stableset.slack import round_slack_vector
from .stableset.solvers import brute_force_stable_set
from .surface.homology import verify_dual_representation


@dataclass(frozen=True)
class TrialResult:
    ok: bool
    detail: str = ""


def _cost(g: Graph, c, S) -> Fraction:
    return sum((c[e] for e in slack_edges(g, S)), Fraction(0))


def row_instance(seed: int):
    r = random.Random(seed)
    n, m, d = r.randint(1, 8), r.randint(1, 12), r.choice((1, 2, 4))
    return random_two_per_row_ip(seed, n, m, d)


def column_instance(seed: int):
    r = random.Random(seed)
    return random_two_per_column_ip(seed, r.randint(1, 8), r.randint(1, 6), 4)


def check_rowpipe(seed: int) -> TrialResult:
    gen = row_instance(seed)
    got = solve_two_per_row(gen.ip, gen.delta)
    want = brute_force_ip(gen.ip)
    ok = (got.status, got.objective) == (want.status, want.objective)
    return TrialResult(ok, f"pipeline {got.status} {got.objective}, oracle {want.status} {want.objective}")


def check_colpipe(seed: int) -> TrialResult:
    gen = column_instance(seed)
    got = solve_two_per_column(gen.ip, gen.delta)
    want = brute_force_ip(gen.ip)
    ok = (got.status, got.objective) == (want.status, want.objective)
    return TrialResult(ok, f"pipeline {got.status} {got.objective}, oracle {want.status} {want.objective}")


def check_prop_dual(seed: int) -> TrialResult:
    eg = random_embedded_fixture(seed)
    rep = verify_dual_representation(eg)
    return TrialResult(rep.equal, f"{len(rep.slack_vectors)} slack vectors, "
                                  f"{len(rep.circulations)} circulations")


def check_gadget(seed: int) -> TrialResult:
    pair = random_gadget_pair(seed, seed % 4)
    res = gadget_replace(pair.G, pair.cG, pair.W, pair.cW, pair.attach)
    union = brute_force_stable_set(StableSetInstance(res.union, costs=res.union_costs), "cost")
    plus = brute_force_stable_set(StableSetInstance(res.plus, costs=res.plus_costs), "cost")
    if union.value != plus.value:
        return TrialResult(False, f"union optimum {union.value}, gadget optimum {plus.value}")
    lifted = res.lift(plus.vertices)
    if not res.union.is_stable(lifted) or _cost(res.union, res.union_costs, lifted) != union.value:
        return TrialResult(False, "lifted solution is not optimal")
    projected = res.project(union.vertices)
    if not res.plus.is_stable(projected) or _cost(res.plus, res.plus_costs, projected) > union.value:
        return TrialResult(False, "projected solution costs more")
    return TrialResult(True, f"optimum {union.value}")


def random_slack_instance(seed: int, max_n: int = 10, max_y: int = 4):
    """A random graph, edge costs and a slack vector with entries at most ``max_y``.

    An integer x is drawn first; edges whose slack would leave ``[0, max_y]``
    are left out of the graph.
    """
    rng = random.Random(seed)
    n = rng.randint(1, max_n)
    x = [rng.randint(-2, 1) for _ in range(n)]
    base = random_graph(rng, n, 0.5)
    g = Graph.from_edges(n, [(u, v) for u, v in base.edges if 0 <= 1 - x[u] - x[v] <= max_y])
    y = [1 - x[u] - x[v] for u, v in g.edges]
    costs = [Fraction(rng.randint(0, 5)) for _ in g.edges]
    return StableSetInstance.from_costs(g, costs), y


def check_slack(seed: int) -> TrialResult:
    inst, y = random_slack_instance(seed)
    g, c = inst.graph, inst.costs
    res = round_slack_vector(inst, y)
    cy = sum((ce * ye for ce, ye in zip(c, y)), Fraction(0))
    if not g.is_stable(res.stable_set):
        return TrialResult(False, "rounded set is not stable")
    if tuple(slack_edges(g, res.stable_set)) != res.slack_set:
        return TrialResult(False, "slack set differs from the slack edges of the stable set")
    if res.cost > cy:
        return TrialResult(False, f"rounded cost {res.cost} exceeds {cy}")
    return TrialResult(True, f"cost {res.cost} <= {cy}")


SUITES: dict[str, Callable[[int], TrialResult]] = {
    "prop-dual": check_prop_dual,
    "gadget": check_gadget,
    "rowpipe": check_rowpipe,
    "colpipe": check_colpipe,
    "slack": check_slack,
}


def run_suite(name: str, trials: int, seed: int) -> list[TrialResult]:
    check = SUITES[name]
    return [check(seed + i) for i in range(trials)]
