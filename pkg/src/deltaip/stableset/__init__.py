"""Stable set instances, solvers and the slack-vector calculus."""

from .graph import Graph, StableSetInstance, induced_weights, slack_edges
from .solvers import (CapExceeded, StableSetSolution, brute_force_stable_set,
                      max_weight_stable_set, min_cost_bipartite, solve_bipartite)
from .analysis import (ResilienceResult, chordless_odd_cycles, oct_brute, ocp_brute,
                       odd_cycle_transversal, resilience_check)

__all__ = [
    "Graph", "StableSetInstance", "induced_weights", "slack_edges",
    "CapExceeded", "StableSetSolution", "brute_force_stable_set",
    "max_weight_stable_set", "min_cost_bipartite", "solve_bipartite",
    "ResilienceResult", "chordless_odd_cycles", "oct_brute", "ocp_brute",
    "odd_cycle_transversal", "resilience_check",
]
