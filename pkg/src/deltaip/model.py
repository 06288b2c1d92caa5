"""Integer program instances and solver results."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .lp import LPProblem

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class IPInstance(LPProblem):
    """``max w.x  s.t.  A x <= b, lower <= x <= upper, x integral``.

    Same fields as :class:`LPProblem`; the integrality is implied by the type.
    """

    def relaxation(self) -> LPProblem:
        return LPProblem(self.A, self.b, self.w, self.lower, self.upper, self.equalities)

    @classmethod
    def from_lp(cls, p: LPProblem) -> "IPInstance":
        return cls(p.A, p.b, p.w, p.lower, p.upper, p.equalities)

    def nonzeros_per_row(self) -> int:
        return max((len(self.A.nonzeros_in_row(i)) for i in range(self.m)), default=0)

    def nonzeros_per_column(self) -> int:
        return max((len(self.A.nonzeros_in_col(j)) for j in range(self.n)), default=0)

    def is_integral_point(self, x: Sequence) -> bool:
        return all(Fraction(v).denominator == 1 for v in x) and self.is_feasible_point(
            [Fraction(v) for v in x])

    def has_finite_box(self) -> bool:
        return all(v is not None for v in self.lower + self.upper)


@dataclass(frozen=True)
class IPResult:
    """Outcome of an exact IP solve.

    ``solution`` is an optimal integer point when ``status == "optimal"``;
    ``guesses_explored`` counts the subproblems a reduction pipeline visited.
    """

    status: str
    objective: Fraction | None = None
    solution: tuple[int, ...] | None = None
    guesses_explored: int = 0
    trace: tuple[Any, ...] = field(default=(), compare=False)

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL
