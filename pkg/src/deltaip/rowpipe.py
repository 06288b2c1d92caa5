"""Integer programs with at most two nonzeros per row, reduced to weighted stable set.

Pipeline per subproblem:

1. solve the LP relaxation and pick the clearing columns J;
2. guess the values of the J variables inside the proximity box;
3. normalize single-variable rows into bounds and add proximity bounds;
4. turn every constraint into an edge constraint ``x_u + x_v <= b`` or
   ``x_u + x_v = b`` using auxiliary variables;
5. fold the equations into the objective;
6. translate by the floor of the half-integral LP vertex, restrict to 0/1
   and read off a weighted stable set instance.

Each step leaves a record in a :class:`ReductionTrace`, which maps stable
sets back to points of the original program.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .exactmat import RationalMatrix, find_row_clearing_columns
from .lp import LPProblem, assert_half_integral, solve
from .model import INFEASIBLE, OPTIMAL, UNBOUNDED, IPInstance, IPResult
from .oracle import SearchBox
from .stableset.graph import Graph, StableSetInstance
from .stableset.solvers import StableSetSolution, max_weight_stable_set

StableSetSolver = Callable[[Graph, Sequence[Fraction]], StableSetSolution]

LE = "<="
EQ = "="


class SubproblemInfeasible(Exception):
    """A reduction step proved the current subproblem infeasible."""


# trace records ------------------------------------------------------------

@dataclass(frozen=True)
class GuessFix:
    var: int
    value: int


@dataclass(frozen=True)
class BoundNormalize:
    row: int
    var: int
    sense: str  # "<=" gives an upper bound, ">=" a lower bound
    bound: int


@dataclass(frozen=True)
class AuxVarPair:
    row: int
    kind: str  # "y" for x_i - x_j rows, "z" for -x_i - x_j rows
    new_vars: tuple[int, ...]


@dataclass(frozen=True)
class EquationLift:
    F: tuple[int, ...]
    mu: Fraction
    nu: int


@dataclass(frozen=True)
class Translate:
    t: tuple[int, ...]


@dataclass(frozen=True)
class VertexFix:
    vertex: int
    value: int


@dataclass(frozen=True)
class VertexDelete:
    vertex: int
    reason: str


@dataclass
class ReductionTrace:
    """Records of one guess, plus the index maps needed to replay them.

    ``sub_vars`` are the original indices of the variables kept after the
    guess, ``labels`` the edge-program variable of each stable set vertex.
    """

    n_original: int
    sub_vars: tuple[int, ...] = ()
    records: list = field(default_factory=list)
    labels: tuple[int, ...] = ()
    n_edge: int = 0

    def add(self, rec) -> None:
        self.records.append(rec)

    def edge_point(self, S: Sequence[int]) -> list[int]:
        """Point of the edge program encoded by the stable set ``S`` of the final graph."""
        x = [0] * self.n_edge
        S = set(S)
        t = None
        for rec in self.records:
            if isinstance(rec, VertexFix):
                x[rec.vertex] = rec.value
            elif isinstance(rec, Translate):
                t = rec.t
        for i, v in enumerate(self.labels):
            x[v] = 1 if i in S else 0
        if t is not None:
            x = [a + b for a, b in zip(x, t)]
        return x

    def replay(self, S: Sequence[int]) -> tuple[int, ...]:
        """Map a stable set of the final graph back to a point of the original program."""
        x_edge = self.edge_point(S)
        return self.lift_edge_point(x_edge)

    def lift_edge_point(self, x_edge: Sequence[int]) -> tuple[int, ...]:
        x = [0] * self.n_original
        for pos, j in enumerate(self.sub_vars):
            x[j] = x_edge[pos]  # auxiliary variables come after and are dropped
        for rec in self.records:
            if isinstance(rec, GuessFix):
                x[rec.var] = rec.value
        return tuple(x)


# edge-constraint programs -------------------------------------------------

@dataclass(frozen=True)
class EdgeConstraintIP:
    """``max objective.x`` over integers in ``[lower, upper]`` with one constraint per edge.

    Edge ``e = uv`` reads ``x_u + x_v <= rhs[e]`` or ``x_u + x_v = rhs[e]``
    according to ``relations[e]``.
    """

    graph: Graph
    relations: tuple[str, ...]
    rhs: tuple[int, ...]
    lower: tuple[int, ...]
    upper: tuple[int, ...]
    objective: tuple[Fraction, ...]

    def __post_init__(self):
        g = self.graph
        if not (len(self.relations) == len(self.rhs) == g.m):
            raise ValueError("one relation and rhs per edge")
        if not (len(self.lower) == len(self.upper) == len(self.objective) == g.n):
            raise ValueError("one bound pair and objective entry per vertex")
        if any(r not in (LE, EQ) for r in self.relations):
            raise ValueError("relations must be '<=' or '='")

    @property
    def equations(self) -> tuple[int, ...]:
        return tuple(e for e, r in enumerate(self.relations) if r == EQ)

    def as_lp(self) -> LPProblem:
        rows = []
        for u, v in self.graph.edges:
            r = [0] * self.graph.n
            r[u] = r[v] = 1
            rows.append(r)
        if not rows:
            rows = [[0] * self.graph.n]
            b = [0]
        else:
            b = list(self.rhs)
        return LPProblem.build(rows, b, self.objective, self.lower, self.upper,
                               self.equations)

    def is_feasible(self, x: Sequence[int]) -> bool:
        if any(not lo <= v <= hi for v, lo, hi in zip(x, self.lower, self.upper)):
            return False
        for (u, v), rel, b in zip(self.graph.edges, self.relations, self.rhs):
            s = x[u] + x[v]
            if s > b or (rel == EQ and s != b):
                return False
        return True

    def value(self, x: Sequence[int]) -> Fraction:
        return sum((c * v for c, v in zip(self.objective, x)), Fraction(0))


# guesses ------------------------------------------------------------------

@dataclass(frozen=True)
class Guess:
    """One subproblem: the variables in ``fixed`` take the given values."""

    fixed: tuple[tuple[int, int], ...]
    keep: tuple[int, ...]
    ip: IPInstance


def proximity_values(x_bar_j: Fraction, radius: int, lo=None, hi=None) -> range:
    """``{z : |x_bar_j - z| <= radius}`` clipped to ``[lo, hi]``."""
    a = math.ceil(x_bar_j - radius)
    b = math.floor(x_bar_j + radius)
    if lo is not None:
        a = max(a, math.ceil(lo))
    if hi is not None:
        b = min(b, math.floor(hi))
    return range(a, b + 1)


def fix_variables(p: LPProblem, values: dict[int, int]) -> tuple[IPInstance, tuple[int, ...]]:
    """Substitute ``x_j = values[j]`` and drop those columns."""
    keep = tuple(j for j in range(p.n) if j not in values)
    rows = []
    b = []
    for i in range(p.m):
        r = p.A.row(i)
        rows.append([r[j] for j in keep])
        b.append(p.b[i] - sum((r[j] * v for j, v in values.items()), Fraction(0)))
    A = RationalMatrix.from_rows(rows, len(keep))
    sub = IPInstance(A, tuple(b), tuple(p.w[j] for j in keep),
                     tuple(p.lower[j] for j in keep), tuple(p.upper[j] for j in keep),
                     p.equalities)
    return sub, keep


def enumerate_proximity_guesses(p: LPProblem, J: Sequence[int], x_bar: Sequence[Fraction],
                                delta: int) -> Iterator[Guess]:
    """One subproblem per integer assignment of the ``J`` variables near ``x_bar``.

    Values range over ``{z : |x_bar_j - z| <= n * delta}``, clipped to the
    explicit bounds of ``p``; assignments are produced in lexicographic order.
    """
    radius = p.n * delta
    J = sorted(J)
    ranges = [proximity_values(Fraction(x_bar[j]), radius, p.lower[j], p.upper[j]) for j in J]
    for combo in itertools.product(*ranges):
        values = dict(zip(J, combo))
        sub, keep = fix_variables(p, values)
        yield Guess(tuple(zip(J, combo)), keep, sub)


def count_proximity_guesses(p: LPProblem, J: Sequence[int], x_bar: Sequence[Fraction],
                            delta: int) -> int:
    radius = p.n * delta
    return math.prod(len(proximity_values(Fraction(x_bar[j]), radius, p.lower[j], p.upper[j]))
                     for j in J)


# per-guess steps ----------------------------------------------------------

def normalize_single_variable_rows(ip: LPProblem, trace: ReductionTrace | None = None) -> IPInstance:
    """Rewrite rows into integer form; single-variable rows get coefficient +-1.

    ``a x_j <= beta`` becomes ``x_j <= floor(beta / a)`` for ``a > 0`` and
    ``-x_j <= floor(beta / |a|)`` for ``a < 0``. Rows without variables are
    dropped, or raise :class:`SubproblemInfeasible` when ``0 <= beta`` fails.
    Right-hand sides of the other rows are floored (the left side is an
    integer).
    """
    rows = []
    rhs = []
    eqs = []
    for i in range(ip.m):
        r = ip.A.row(i)
        beta = ip.b[i]
        nz = [j for j, a in enumerate(r) if a]
        eq = i in ip.equalities
        if any(a.denominator != 1 for a in r):
            raise ValueError("constraint matrix must be integral")
        if not nz:
            if beta < 0 or (eq and beta != 0):
                raise SubproblemInfeasible(f"row {i} reads 0 <= {beta}")
            continue
        if len(nz) == 1 and not eq:
            j = nz[0]
            a = r[j]
            new = [0] * ip.n
            if a > 0:
                new[j] = 1
                bound = math.floor(beta / a)
                if trace is not None:
                    trace.add(BoundNormalize(i, j, "<=", bound))
            else:
                new[j] = -1
                bound = math.floor(beta / -a)
                if trace is not None:
                    trace.add(BoundNormalize(i, j, ">=", -bound))
            rows.append(new)
            rhs.append(bound)
            continue
        if eq:
            g = math.gcd(*(int(a) for a in r))
            if (beta / g).denominator != 1:
                raise SubproblemInfeasible(f"equation row {i} has no integer solution")
            eqs.append(len(rows))
            rows.append(list(r))
            rhs.append(beta)
        else:
            rows.append(list(r))
            rhs.append(math.floor(beta))
    A = RationalMatrix.from_rows(rows, ip.n) if rows else RationalMatrix.zeros(0, ip.n)
    lower = tuple(None if v is None else Fraction(math.ceil(v)) for v in ip.lower)
    upper = tuple(None if v is None else Fraction(math.floor(v)) for v in ip.upper)
    return IPInstance(A, tuple(Fraction(v) for v in rhs), ip.w, lower, upper, frozenset(eqs))


def introduce_aux_variables(ip: LPProblem,
                            trace: ReductionTrace | None = None) -> EdgeConstraintIP:
    """Turn a +-1 program with two nonzeros per row and finite bounds into edge constraints.

    ``x_i + x_j <= a`` stays an edge. ``x_i - x_j <= b`` becomes
    ``x_i + y <= b + 1`` and ``x_j + y = 1``. ``-x_i - x_j <= c`` becomes
    ``z + z' <= c + 2``, ``x_i + z = 1`` and ``x_j + z' = 1``. Rows with one
    variable become bounds. Several rows of the same kind on the same
    (ordered) pair are merged into the tightest. New variables are numbered
    after the original ones.
    """
    n = ip.n
    if any(v is None for v in ip.lower + ip.upper):
        raise ValueError("finite bounds are required")
    lower = [math.ceil(v) for v in ip.lower]
    upper = [math.floor(v) for v in ip.upper]
    plus: dict[tuple[int, int], tuple[int, int]] = {}   # (i, j) -> (rhs, row)
    diff: dict[tuple[int, int], tuple[int, int]] = {}   # x_i - x_j
    minus: dict[tuple[int, int], tuple[int, int]] = {}
    equations: list[tuple[int, int, int]] = []
    for i in range(ip.m):
        r = ip.A.row(i)
        nz = [j for j, a in enumerate(r) if a]
        b = ip.b[i]
        if any(r[j] not in (1, -1) for j in nz) or len(nz) > 2:
            raise ValueError(f"row {i} is not a +-1 row with at most two nonzeros")
        if b.denominator != 1:
            raise ValueError("right-hand sides must be integral")
        b = int(b)
        if i in ip.equalities:
            if len(nz) != 2 or r[nz[0]] != 1 or r[nz[1]] != 1:
                raise ValueError("only x_i + x_j = b equations are supported")
            equations.append((nz[0], nz[1], b))
            continue
        if not nz:
            if b < 0:
                raise SubproblemInfeasible(f"row {i} reads 0 <= {b}")
            continue
        if len(nz) == 1:
            j = nz[0]
            if r[j] == 1:
                upper[j] = min(upper[j], b)
            else:
                lower[j] = max(lower[j], -b)
            continue
        a, c = nz
        sa, sc = r[a], r[c]
        if sa == 1 and sc == 1:
            key, table = (a, c), plus
        elif sa == -1 and sc == -1:
            key, table = (a, c), minus
        else:
            key, table = ((a, c) if sa == 1 else (c, a)), diff
        if key not in table or b < table[key][0]:
            table[key] = (b, table.get(key, (None, i))[1])
    if any(lo > hi for lo, hi in zip(lower, upper)):
        raise SubproblemInfeasible("empty variable bounds")

    edges: list[tuple[int, int]] = []
    rel: list[str] = []
    rhs: list[int] = []
    index: dict[tuple[int, int], int] = {}

    def add(u: int, v: int, r: str, b: int) -> None:
        key = (min(u, v), max(u, v))
        if key in index:
            e = index[key]
            if rel[e] == LE and r == LE:
                rhs[e] = min(rhs[e], b)
                return
            if rel[e] == EQ and r == EQ:
                if rhs[e] != b:
                    raise SubproblemInfeasible("conflicting equations")
                return
            # an equation and an inequality on one pair: keep the equation
            if r == EQ:
                e_b = rhs[e]
                rel[e], rhs[e] = EQ, b
                if b > e_b:
                    raise SubproblemInfeasible("equation violates inequality")
            elif b < rhs[e]:
                raise SubproblemInfeasible("equation violates inequality")
            return
        index[key] = len(edges)
        edges.append(key)
        rel.append(r)
        rhs.append(b)

    for (a, c), (b, row) in sorted(plus.items(), key=lambda kv: kv[1][1]):
        add(a, c, LE, b)
    for a, c, b in equations:
        add(a, c, EQ, b)
    nvars = n
    obj = list(ip.w)
    for (a, c), (b, row) in sorted(diff.items(), key=lambda kv: kv[1][1]):
        y = nvars
        nvars += 1
        lower.append(1 - upper[c])
        upper.append(1 - lower[c])
        obj.append(Fraction(0))
        add(a, y, LE, b + 1)
        add(c, y, EQ, 1)
        if trace is not None:
            trace.add(AuxVarPair(row, "y", (y,)))
    for (a, c), (b, row) in sorted(minus.items(), key=lambda kv: kv[1][1]):
        z, z2 = nvars, nvars + 1
        nvars += 2
        lower += [1 - upper[a], 1 - upper[c]]
        upper += [1 - lower[a], 1 - lower[c]]
        obj += [Fraction(0), Fraction(0)]
        add(z, z2, LE, b + 2)
        add(a, z, EQ, 1)
        add(c, z2, EQ, 1)
        if trace is not None:
            trace.add(AuxVarPair(row, "z", (z, z2)))
    g = Graph(nvars, tuple(edges))
    return EdgeConstraintIP(g, tuple(rel), tuple(rhs), tuple(lower), tuple(upper), tuple(obj))


def objective_range(objective: Sequence[Fraction], lower: Sequence[int],
                    upper: Sequence[int]) -> tuple[Fraction, Fraction]:
    """``(min, max)`` of a linear function over a box, evaluated sign-wise."""
    lo = sum((min(c * a, c * b) for c, a, b in zip(objective, lower, upper)), Fraction(0))
    hi = sum((max(c * a, c * b) for c, a, b in zip(objective, lower, upper)), Fraction(0))
    return lo, hi


def eliminate_equations(e: EdgeConstraintIP,
                        trace: ReductionTrace | None = None) -> tuple[EdgeConstraintIP, EquationLift]:
    """Relax every equation to ``<=`` and add ``mu`` times its left side to the objective.

    ``mu = max f - min f + 1`` over the box. An optimum of the new program
    is optimal for the old one if it satisfies the equations; otherwise the
    old program is infeasible.
    """
    F = e.equations
    lo, hi = objective_range(e.objective, e.lower, e.upper)
    mu = hi - lo + 1
    nu = sum(e.rhs[k] for k in F)
    obj = list(e.objective)
    if F:
        for k in F:
            u, v = e.graph.edges[k]
            obj[u] += mu
            obj[v] += mu
    lift = EquationLift(F, mu, nu)
    if trace is not None:
        trace.add(lift)
    out = EdgeConstraintIP(e.graph, tuple(LE for _ in e.relations), e.rhs, e.lower, e.upper,
                           tuple(obj))
    return out, lift


@dataclass(frozen=True)
class StableSetReduction:
    """Stable set instance on the free 0/1 variables; vertex ``i`` is edge-program variable ``labels[i]``."""

    instance: StableSetInstance
    labels: tuple[int, ...]
    translation: tuple[int, ...]
    fixed: dict
    constant: Fraction
    lp_objective: Fraction


def reduce_to_stable_set(e: EdgeConstraintIP,
                         trace: ReductionTrace | None = None) -> StableSetReduction:
    """Translate by the floor of a half-integral LP vertex and keep 0/1 variables.

    Edge rules after translation: rhs < 0 is infeasible, rhs = 0 fixes both
    ends to 0, rhs > 1 drops the edge, rhs = 1 keeps it. Vertices fixed to 1
    are removed together with their neighbours.
    """
    if e.equations:
        raise ValueError("eliminate equations first")
    g = e.graph
    res = solve(e.as_lp())
    if res.status == "infeasible":
        raise SubproblemInfeasible("edge program relaxation is infeasible")
    if not res.optimal:
        raise AssertionError("edge program relaxation over a finite box must be bounded")
    split = assert_half_integral(res.x_star)
    t = split.translation
    if trace is not None:
        trace.add(Translate(tuple(t)))
    lo = [a - b for a, b in zip(e.lower, t)]
    hi = [a - b for a, b in zip(e.upper, t)]
    fixed: dict[int, int] = {}

    def fix(v: int, val: int) -> None:
        if fixed.get(v, val) != val:
            raise SubproblemInfeasible(f"variable {v} fixed to both 0 and 1")
        if v not in fixed:
            fixed[v] = val
            if trace is not None:
                trace.add(VertexFix(v, val))

    for v in range(g.n):
        allowed = [a for a in (0, 1) if lo[v] <= a <= hi[v]]
        if not allowed:
            raise SubproblemInfeasible(f"no 0/1 value left for variable {v}")
        if len(allowed) == 1:
            fix(v, allowed[0])
    kept = []
    for k, (u, v) in enumerate(g.edges):
        beta = e.rhs[k] - t[u] - t[v]
        if beta < 0:
            raise SubproblemInfeasible(f"edge {k} has negative right-hand side")
        if beta == 0:
            fix(u, 0)
            fix(v, 0)
        elif beta == 1:
            kept.append((u, v))
    adj: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for u, v in kept:
        adj[u].append(v)
        adj[v].append(u)
    deleted: set[int] = set()
    for v in sorted(fixed):
        if fixed[v] == 1:
            for u in sorted(adj[v]):
                if fixed.get(u) == 1:
                    raise SubproblemInfeasible("adjacent variables both fixed to 1")
                fix(u, 0)
    for v in sorted(fixed):
        deleted.add(v)
        if trace is not None:
            trace.add(VertexDelete(v, "fixed to 1" if fixed[v] else "fixed to 0"))
    labels = tuple(v for v in range(g.n) if v not in deleted)
    pos = {v: i for i, v in enumerate(labels)}
    H = Graph(len(labels), tuple((pos[u], pos[v]) for u, v in kept
                                 if u in pos and v in pos))
    weights = tuple(e.objective[v] for v in labels)
    constant = sum((e.objective[v] * (t[v] + fixed.get(v, 0)) for v in range(g.n)), Fraction(0))
    if trace is not None:
        trace.labels = labels
        trace.n_edge = g.n
    return StableSetReduction(StableSetInstance(H, weights), labels, tuple(t), dict(fixed),
                              constant, res.objective)


# orchestration ------------------------------------------------------------

def check_two_per_row(A: RationalMatrix) -> None:
    if not A.is_integral():
        raise ValueError("constraint matrix must be integral")
    for i in range(A.rows):
        if len(A.nonzeros_in_row(i)) > 2:
            raise ValueError(f"row {i} has more than two nonzeros")


@dataclass(frozen=True)
class GuessOutcome:
    """Result of running one guess through the pipeline."""

    status: str
    objective: Fraction | None = None
    solution: tuple[int, ...] | None = None
    trace: ReductionTrace | None = None
    reduction: StableSetReduction | None = None
    edge_ip: EdgeConstraintIP | None = None


def run_guess(p: IPInstance, guess: Guess, delta: int,
              solver: StableSetSolver = max_weight_stable_set,
              bound: Fraction | None = None) -> GuessOutcome:
    """Solve one guess exactly through the stable set reduction.

    When ``bound`` is given, a guess whose LP value does not exceed it is
    skipped (status ``"pruned"``).
    """
    trace = ReductionTrace(p.n, guess.keep)
    for j, v in guess.fixed:
        trace.add(GuessFix(j, v))
    const = sum((p.w[j] * v for j, v in guess.fixed), Fraction(0))
    try:
        norm = normalize_single_variable_rows(guess.ip, trace)
        if norm.n == 0:
            x = trace.lift_edge_point([])
            if not p.is_feasible_point(x):
                return GuessOutcome(INFEASIBLE, trace=trace)
            return GuessOutcome(OPTIMAL, p.objective(x), x, trace)
        lp = solve(norm.relaxation())
        if lp.status == "infeasible":
            return GuessOutcome(INFEASIBLE, trace=trace)
        if not lp.optimal:
            raise AssertionError("subproblem relaxation unbounded under a bounded master LP")
        if bound is not None and lp.objective + const <= bound:
            return GuessOutcome("pruned", trace=trace)
        box = SearchBox.around(lp.x_star, norm.n * delta, norm)
        if box.empty:
            return GuessOutcome(INFEASIBLE, trace=trace)
        boxed = IPInstance(norm.A, norm.b, norm.w, tuple(Fraction(v) for v in box.lower),
                           tuple(Fraction(v) for v in box.upper), norm.equalities)
        edge_ip = introduce_aux_variables(boxed, trace)
        relaxed, _ = eliminate_equations(edge_ip, trace)
        red = reduce_to_stable_set(relaxed, trace)
    except SubproblemInfeasible:
        return GuessOutcome(INFEASIBLE, trace=trace)
    sol = solver(red.instance.graph, red.instance.weights)
    x_edge = trace.edge_point(sol.vertices)
    if not edge_ip.is_feasible(x_edge):
        # the folded equations are violated, so the guess is infeasible
        return GuessOutcome(INFEASIBLE, trace=trace, reduction=red, edge_ip=edge_ip)
    x = trace.lift_edge_point(x_edge)
    if not p.is_feasible_point(x):
        raise AssertionError("replayed point violates the original program")
    return GuessOutcome(OPTIMAL, p.objective(x), x, trace, red, edge_ip)


def _without_equalities(ip: IPInstance) -> IPInstance:
    """Replace each equation by a pair of opposite inequalities."""
    if not ip.equalities:
        return ip
    rows, b = [], []
    for i in range(ip.m):
        rows.append(list(ip.A.row(i)))
        b.append(ip.b[i])
        if i in ip.equalities:
            rows.append([-a for a in ip.A.row(i)])
            b.append(-ip.b[i])
    return IPInstance(RationalMatrix.from_rows(rows, ip.n), tuple(b), ip.w, ip.lower, ip.upper)


def solve_two_per_row(ip: LPProblem, delta: int,
                      solver: StableSetSolver = max_weight_stable_set,
                      prune: bool = True) -> IPResult:
    """Exact optimum of an integer program with at most two nonzeros per row.

    ``delta`` bounds the absolute subdeterminants of the constraint matrix.
    The best point over all guesses wins; ties keep the first guess in
    lexicographic order.
    """
    ip = _without_equalities(IPInstance.from_lp(ip))
    check_two_per_row(ip.A)
    if delta < 1:
        raise ValueError("delta must be positive")
    res = solve(ip.relaxation())
    if res.status == "infeasible":
        return IPResult(INFEASIBLE)
    if res.status == "unbounded":
        zero = IPInstance(ip.A, ip.b, tuple(Fraction(0) for _ in ip.w), ip.lower, ip.upper,
                          ip.equalities)
        feas = solve_two_per_row(zero, delta, solver, prune)
        if feas.status == OPTIMAL:
            return IPResult(UNBOUNDED, guesses_explored=feas.guesses_explored)
        return IPResult(INFEASIBLE, guesses_explored=feas.guesses_explored)
    J = find_row_clearing_columns(ip.A, delta).columns
    best: GuessOutcome | None = None
    explored = 0
    for guess in enumerate_proximity_guesses(ip, J, res.x_star, delta):
        explored += 1
        out = run_guess(ip, guess, delta, solver,
                        best.objective if (prune and best is not None) else None)
        if out.status == OPTIMAL and (best is None or out.objective > best.objective):
            best = out
    if best is None:
        return IPResult(INFEASIBLE, guesses_explored=explored)
    return IPResult(OPTIMAL, best.objective, best.solution, explored,
                    tuple(best.trace.records))
