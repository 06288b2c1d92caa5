"""Integer programs with at most two nonzeros per column.

After fixing the few variables whose columns carry large entries, the rows
that touched them (the set I) only see the remaining variables through the
sums over groups of identical I-columns. Guessing those sums leaves a base
program whose every variable sits in at most two constraints, solved
exactly by branch-and-bound.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .exactmat import RationalMatrix, find_column_clearing_sets
from .lp import LPProblem, solve
from .model import INFEASIBLE, OPTIMAL, UNBOUNDED, IPInstance, IPResult
from .oracle import SearchBox, branch_and_bound_ip
from .rowpipe import fix_variables, proximity_values

BaseSolver = Callable[[LPProblem], IPResult]


class TwoPerColumnViolation(ValueError):
    """A variable ended up in more than two constraints of the base program."""


@dataclass(frozen=True)
class ColumnGrouping:
    """Groups of columns with identical nonzero restriction to the rows ``I``."""

    rows: tuple[int, ...]
    groups: tuple[tuple[int, ...], ...]
    patterns: tuple[tuple[Fraction, ...], ...]

    @property
    def k(self) -> int:
        return len(self.groups)


def group_columns(A: RationalMatrix, I: Sequence[int]) -> ColumnGrouping:
    """Partition the columns by their entries in rows ``I``; all-zero groups are dropped.

    Groups are listed in order of their smallest column.
    """
    I = tuple(sorted(I))
    by_pattern: dict[tuple[Fraction, ...], list[int]] = {}
    for j in range(A.cols):
        pat = tuple(A[i, j] for i in I)
        if any(pat):
            by_pattern.setdefault(pat, []).append(j)
    items = sorted(by_pattern.items(), key=lambda kv: kv[1][0])
    return ColumnGrouping(I, tuple(tuple(cols) for _, cols in items),
                          tuple(pat for pat, _ in items))


def build_base_ip(A: RationalMatrix, b: Sequence[Fraction], w: Sequence[Fraction],
                  I: Sequence[int], grouping: ColumnGrouping, sums: Sequence[int],
                  lower=None, upper=None, equalities: Sequence[int] = ()) -> IPInstance:
    """Group-sum equations followed by the rows outside ``I``.

    Raises :class:`TwoPerColumnViolation` if some variable appears in more
    than two constraints.
    """
    if len(sums) != grouping.k:
        raise ValueError("one sum per group")
    n = A.cols
    Iset = set(I)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    eqs: list[int] = []
    for cols, s in zip(grouping.groups, sums):
        r = [Fraction(0)] * n
        for j in cols:
            r[j] = Fraction(1)
        eqs.append(len(rows))
        rows.append(r)
        rhs.append(Fraction(s))
    for i in range(A.rows):
        if i in Iset:
            continue
        if i in equalities:
            eqs.append(len(rows))
        rows.append(list(A.row(i)))
        rhs.append(Fraction(b[i]))
    for j in range(n):
        count = sum(1 for r in rows if r[j])
        if count > 2:
            raise TwoPerColumnViolation(f"variable {j} appears in {count} constraints")
    M = RationalMatrix.from_rows(rows, n) if rows else RationalMatrix.zeros(0, n)
    lo = tuple(lower) if lower is not None else (None,) * n
    hi = tuple(upper) if upper is not None else (None,) * n
    return IPInstance(M, tuple(rhs), tuple(Fraction(v) for v in w), lo, hi, frozenset(eqs))


def check_two_per_column(A: RationalMatrix) -> None:
    if not A.is_integral():
        raise ValueError("constraint matrix must be integral")
    for j in range(A.cols):
        if len(A.nonzeros_in_col(j)) > 2:
            raise ValueError(f"column {j} has more than two nonzeros")


def sum_range(cols: Sequence[int], box: SearchBox) -> range:
    """Possible values of ``sum_{j in cols} x_j`` for x in ``box``."""
    return range(sum(box.lower[j] for j in cols), sum(box.upper[j] for j in cols) + 1)


def enumerate_sums(grouping: ColumnGrouping, box: SearchBox, b_I: Sequence[Fraction],
                   eq_I: Sequence[bool], values: Sequence[dict[int, Fraction]] | None = None,
                   threshold: Callable[[], Fraction | None] | None = None
                   ) -> Iterator[tuple[int, ...]]:
    """Sum vectors in lexicographic order that satisfy the rows ``I``.

    Rows in ``I`` depend on the remaining variables only through the group
    sums, so infeasible sum vectors are cut as soon as a row can no longer
    be met. With per-group value tables (see :func:`group_value_table`) a
    partial vector is also cut once its best completion cannot exceed
    ``threshold()``.
    """
    if box.empty:
        return
    k = grouping.k
    ranges = [sum_range(cols, box) for cols in grouping.groups]
    pats = [[int(v) for v in pat] for pat in grouping.patterns]
    nI = len(grouping.rows)
    # integral rows: a <= rhs floors, an equality with fractional rhs is hopeless
    rhs = []
    for r in range(nI):
        if eq_I[r] and Fraction(b_I[r]).denominator != 1:
            return
        rhs.append(math.floor(b_I[r]))
    # min/max contribution of groups t.. to each row
    rmin = [[0] * (k + 1) for _ in range(nI)]
    rmax = [[0] * (k + 1) for _ in range(nI)]
    for r in range(nI):
        for t in range(k - 1, -1, -1):
            a = pats[t][r] * ranges[t].start
            c = pats[t][r] * (ranges[t].stop - 1)
            rmin[r][t] = rmin[r][t + 1] + min(a, c)
            rmax[r][t] = rmax[r][t + 1] + max(a, c)
    vmax = None
    if values is not None:
        vmax = [Fraction(0)] * (k + 1)
        for t in range(k - 1, -1, -1):
            vmax[t] = vmax[t + 1] + max(values[t].values(), default=Fraction(0))
    lhs = [0] * nI
    chosen: list[int] = []

    def rec(t: int, val: Fraction):
        if vmax is not None and threshold is not None:
            floor = threshold()
            if floor is not None and val + vmax[t] <= floor:
                return
        if t == k:
            yield tuple(chosen)
            return
        for s in ranges[t]:
            if values is not None and s not in values[t]:
                continue
            ok = True
            for r in range(nI):
                cur = lhs[r] + pats[t][r] * s
                if cur + rmin[r][t + 1] > rhs[r] or (eq_I[r] and cur + rmax[r][t + 1] < rhs[r]):
                    ok = False
                    break
            if not ok:
                continue
            for r in range(nI):
                lhs[r] += pats[t][r] * s
            chosen.append(s)
            yield from rec(t + 1, val + values[t][s] if values is not None else val)
            chosen.pop()
            for r in range(nI):
                lhs[r] -= pats[t][r] * s

    yield from rec(0, Fraction(0))


def group_value_table(w: Sequence[Fraction], box: SearchBox,
                      cols: Sequence[int]) -> dict[int, Fraction]:
    """Best ``sum w_j x_j`` over the box for every attainable group sum.

    Each entry is a small knapsack with unit weights, solved greedily: start
    at the lower bounds and raise the best-paying variables first.
    """
    base = sum((w[j] * box.lower[j] for j in cols), Fraction(0))
    steps: list[Fraction] = []
    for j in sorted(cols, key=lambda j: -w[j]):
        steps.extend([w[j]] * (box.upper[j] - box.lower[j]))
    table = {}
    s0 = sum(box.lower[j] for j in cols)
    val = base
    table[s0] = val
    for i, step in enumerate(steps):
        val += step
        table[s0 + i + 1] = val
    return table


def group_sum_bound(w: Sequence[Fraction], box: SearchBox, grouping: ColumnGrouping,
                    sums: Sequence[int]) -> Fraction | None:
    """Upper bound on ``w.x`` over the box with prescribed group sums, ignoring other rows.

    ``None`` when a sum cannot be met.
    """
    total = Fraction(0)
    grouped = set()
    for cols, s in zip(grouping.groups, sums):
        grouped.update(cols)
        table = group_value_table(w, box, cols)
        if s not in table:
            return None
        total += table[s]
    for j in range(len(w)):
        if j not in grouped:
            total += max(w[j] * box.lower[j], w[j] * box.upper[j])
    return total


def solve_two_per_column(ip: LPProblem, delta: int,
                         base_solver: BaseSolver = branch_and_bound_ip,
                         prune: bool = True) -> IPResult:
    """Exact optimum of an integer program with at most two nonzeros per column.

    ``delta`` bounds the absolute subdeterminants of the constraint matrix.
    The returned point comes from the first (lexicographic) guess that
    attains the optimum.
    """
    ip = IPInstance.from_lp(ip)
    check_two_per_column(ip.A)
    if delta < 1:
        raise ValueError("delta must be positive")
    res = solve(ip.relaxation())
    if res.status == "infeasible":
        return IPResult(INFEASIBLE)
    if res.status == "unbounded":
        zero = IPInstance(ip.A, ip.b, tuple(Fraction(0) for _ in ip.w), ip.lower, ip.upper,
                          ip.equalities)
        feas = solve_two_per_column(zero, delta, base_solver, prune)
        status = UNBOUNDED if feas.status == OPTIMAL else INFEASIBLE
        return IPResult(status, guesses_explored=feas.guesses_explored)
    x_bar = res.x_star
    radius = ip.n * delta
    clearing = find_column_clearing_sets(ip.A, delta)
    J, I = clearing.columns, clearing.rows
    full_box = SearchBox.around(x_bar, radius, ip)
    best: tuple[Fraction, tuple[int, ...], tuple] | None = None
    explored = 0
    J_ranges = [range(full_box.lower[j], full_box.upper[j] + 1) for j in J]
    for combo in itertools.product(*J_ranges):
        values = dict(zip(J, combo))
        sub, keep = fix_variables(ip, values)
        const = sum((ip.w[j] * v for j, v in values.items()), Fraction(0))
        box = SearchBox(tuple(full_box.lower[j] for j in keep),
                        tuple(full_box.upper[j] for j in keep))
        grouping = group_columns(sub.A, I)
        # rows of I with no remaining variables just need 0 <= rhs
        if any(sub.b[i] < 0 or (i in sub.equalities and sub.b[i] != 0)
               for i in I if not any(sub.A.row(i))):
            continue
        b_I = [sub.b[i] for i in I]
        eq_I = [i in sub.equalities for i in I]
        tables = [group_value_table(sub.w, box, cols) for cols in grouping.groups]
        grouped = {j for cols in grouping.groups for j in cols}
        loose = const + sum((max(sub.w[j] * box.lower[j], sub.w[j] * box.upper[j])
                             for j in range(len(keep)) if j not in grouped), Fraction(0))

        def threshold(loose=loose):
            return None if not prune or best is None else best[0] - loose

        for sums in enumerate_sums(grouping, box, b_I, eq_I, tables, threshold):
            explored += 1
            base = build_base_ip(sub.A, sub.b, sub.w, I, grouping, sums,
                                 [Fraction(v) for v in box.lower],
                                 [Fraction(v) for v in box.upper], sub.equalities)
            if prune and best is not None:
                bound = solve(base.relaxation())
                if not bound.optimal or bound.objective + const <= best[0]:
                    continue
            out = base_solver(base)
            if out.status != OPTIMAL:
                continue
            x = [0] * ip.n
            for pos, j in enumerate(keep):
                x[j] = out.solution[pos]
            for j, v in values.items():
                x[j] = v
            if not ip.is_feasible_point([Fraction(v) for v in x]):
                raise AssertionError("base solution does not lift to a feasible point")
            val = ip.objective([Fraction(v) for v in x])
            if best is None or val > best[0]:
                best = (val, tuple(x), (tuple(values.items()), sums))
    if best is None:
        return IPResult(INFEASIBLE, guesses_explored=explored)
    return IPResult(OPTIMAL, best[0], best[1], explored, best[2])
