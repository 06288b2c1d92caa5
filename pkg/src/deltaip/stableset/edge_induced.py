"""Turning vertex weights into edge-induced weights through the LP relaxation."""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Sequence

from ..exactmat import as_rational
from ..lp import LPOutcome, assert_half_integral
from .graph import Graph, StableSetInstance, induced_weights
from .solvers import _stable_set_lp


class EdgeInducedReduction(NamedTuple):
    """Output of :func:`edge_induced_reduce`.

    ``weights`` vanish on ``zeros`` and ``ones`` and equal the sum of incident
    ``costs`` elsewhere.
    """

    weights: tuple[Fraction, ...]
    zeros: tuple[int, ...]
    ones: tuple[int, ...]
    costs: tuple[Fraction, ...]
    lp: LPOutcome

    def instance(self, g: Graph) -> StableSetInstance:
        return StableSetInstance(g, self.weights, self.costs)

    def recover(self, S: Sequence[int]) -> tuple[int, ...]:
        """Map a stable set that is optimal for the new weights back to an optimal one for the old."""
        fixed = set(self.zeros) | set(self.ones)
        return tuple(sorted({v for v in S if v not in fixed} | set(self.ones)))


def edge_induced_reduce(g: Graph, w: Sequence) -> EdgeInducedReduction:
    """Solve the stable set LP and read edge costs off its basic dual.

    Vertices at 0 or 1 in the LP vertex are fixed (persistency), the others
    sit at 1/2 and, by complementary slackness, have weight equal to the dual
    values on their edges to other half vertices.
    """
    w = [as_rational(v) for v in w]
    if any(v < 0 for v in w):
        raise ValueError("weights must be nonnegative")
    res = _stable_set_lp(g, w)
    if not res.optimal:
        raise AssertionError("stable set LP with box bounds must be optimal")
    split = assert_half_integral(res.x_star)
    x = res.x_star
    zeros = tuple(v for v in range(g.n) if x[v] == 0)
    ones = tuple(v for v in range(g.n) if x[v] == 1)
    half = set(split.halves)
    costs = []
    for e, (u, v) in enumerate(g.edges):
        if u in half and v in half and g.m:
            costs.append(res.dual.y[e])
        else:
            costs.append(Fraction(0))
    new_w = tuple(w[v] if v in half else Fraction(0) for v in range(g.n))
    if induced_weights(g, costs) != new_w:
        raise AssertionError("dual costs do not induce the reduced weights")
    if any(c < 0 for c in costs):
        raise AssertionError("negative edge cost from the dual")
    return EdgeInducedReduction(new_w, zeros, ones, tuple(costs), res)
