"""Exact rational linear programming.

A two-phase primal simplex over an integer, fraction-free tableau (every
entry is the true tableau value times the current basis determinant), with
Bland's rule for anti-cycling. Optimal outcomes carry a vertex of the
feasible region and the basic dual solution read off the final tableau.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .exactmat import RationalMatrix, as_rational

__all__ = [
    "LPProblem",
    "LPDual",
    "LPOutcome",
    "HalfIntegralSplit",
    "NotHalfIntegral",
    "solve",
    "assert_half_integral",
]

INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
OPTIMAL = "optimal"


@dataclass(frozen=True)
class LPProblem:
    """``max w.x  s.t.  A x <= b`` (rows in ``equalities`` hold with ``=``), ``lower <= x <= upper``.

    ``None`` entries in ``lower``/``upper`` mean the side is unbounded.
    """

    A: RationalMatrix
    b: tuple[Fraction, ...]
    w: tuple[Fraction, ...]
    lower: tuple[Fraction | None, ...]
    upper: tuple[Fraction | None, ...]
    equalities: frozenset[int] = frozenset()

    def __post_init__(self):
        m, n = self.A.shape
        if len(self.b) != m:
            raise ValueError(f"rhs has length {len(self.b)}, expected {m}")
        if len(self.w) != n or len(self.lower) != n or len(self.upper) != n:
            raise ValueError("objective/bounds length does not match the number of columns")
        if any(not 0 <= i < m for i in self.equalities):
            raise ValueError("equality row index out of range")

    @classmethod
    def build(cls, A, b, w, lower=None, upper=None, equalities: Iterable[int] = ()) -> "LPProblem":
        if not isinstance(A, RationalMatrix):
            A = RationalMatrix.from_rows(A, len(w))
        n = A.cols
        lo = tuple(None if v is None else as_rational(v) for v in (lower or [None] * n))
        hi = tuple(None if v is None else as_rational(v) for v in (upper or [None] * n))
        return cls(A, tuple(as_rational(v) for v in b), tuple(as_rational(v) for v in w),
                   lo, hi, frozenset(equalities))

    @property
    def n(self) -> int:
        return self.A.cols

    @property
    def m(self) -> int:
        return self.A.rows

    def is_feasible_point(self, x: Sequence[Fraction]) -> bool:
        for j, v in enumerate(x):
            if self.lower[j] is not None and v < self.lower[j]:
                return False
            if self.upper[j] is not None and v > self.upper[j]:
                return False
        for i in range(self.m):
            lhs = sum((a * v for a, v in zip(self.A.row(i), x) if a), Fraction(0))
            if lhs > self.b[i] or (i in self.equalities and lhs != self.b[i]):
                return False
        return True

    def objective(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * v for c, v in zip(self.w, x) if c), Fraction(0))


@dataclass(frozen=True)
class LPDual:
    """Dual multipliers: ``y`` per row, ``z_upper``/``z_lower`` per variable bound.

    Feasibility reads ``A^T y + z_upper - z_lower = w`` with ``z >= 0`` and
    ``y >= 0`` on inequality rows.
    """

    y: tuple[Fraction, ...]
    z_upper: tuple[Fraction, ...]
    z_lower: tuple[Fraction, ...]

    def objective(self, p: LPProblem) -> Fraction:
        val = sum((yi * bi for yi, bi in zip(self.y, p.b)), Fraction(0))
        for j in range(p.n):
            if self.z_upper[j]:
                val += self.z_upper[j] * p.upper[j]
            if self.z_lower[j]:
                val -= self.z_lower[j] * p.lower[j]
        return val


@dataclass(frozen=True)
class LPOutcome:
    status: str
    x_star: tuple[Fraction, ...] | None = None
    objective: Fraction | None = None
    dual: LPDual | None = None
    is_vertex: bool = False
    ray: tuple[Fraction, ...] | None = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def _lcm(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


class _Tableau:
    """Integer tableau ``T`` with common denominator ``D > 0``.

    Rows ``0..m-1`` are constraints, row ``m`` holds ``D`` times the reduced
    costs; the last column is the right-hand side.
    """

    def __init__(self, rows: list[list[int]], basis: list[int]):
        self.T = rows
        self.D = 1
        self.basis = basis

    def pivot(self, r: int, c: int) -> None:
        T = self.T
        pv = T[r][c]
        D = self.D
        row_r = T[r]
        for i, row in enumerate(T):
            if i == r:
                continue
            f = row[c]
            if f:
                T[i] = [(pv * a - f * b) // D for a, b in zip(row, row_r)]
            elif pv != D:
                T[i] = [(pv * a) // D for a in row]
        self.D = pv
        if pv < 0:
            self.T = [[-a for a in row] for row in self.T]
            self.D = -pv
        self.basis[r] = c

    def run(self, allowed: int) -> tuple[str, int | None]:
        """Bland-rule primal simplex on columns ``< allowed``.

        Returns ``("optimal", None)`` or ``("unbounded", entering column)``.
        """
        T = self.T
        m = len(T) - 1
        while True:
            T = self.T
            obj = T[m]
            enter = next((j for j in range(allowed) if obj[j] < 0), None)
            if enter is None:
                return OPTIMAL, None
            best = None
            for i in range(m):
                a = T[i][enter]
                if a > 0:
                    num = T[i][-1]
                    if best is None:
                        best = (i, num, a)
                        continue
                    _, bn, ba = best
                    lhs, rhs = num * ba, bn * a
                    if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best[0]]):
                        best = (i, num, a)
            if best is None:
                return UNBOUNDED, enter
            self.pivot(best[0], enter)


def _gauss_rank_null(rows: list[list[Fraction]], n: int) -> tuple[int, list[Fraction] | None]:
    """Rank of ``rows`` and one nonzero null-space vector (or None if full rank)."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    if r == n:
        return r, None
    free = next(c for c in range(n) if c not in pivots)
    d = [Fraction(0)] * n
    d[free] = Fraction(1)
    for i, c in enumerate(pivots):
        d[c] = -mat[i][free]
    return r, d


def _constraint_rows(p: LPProblem):
    """All constraints as ``(a, beta, is_equality)`` over x."""
    n = p.n
    out = []
    for i in range(p.m):
        out.append((list(p.A.row(i)), p.b[i], i in p.equalities))
    for j in range(n):
        if p.upper[j] is not None:
            a = [Fraction(0)] * n
            a[j] = Fraction(1)
            out.append((a, p.upper[j], False))
        if p.lower[j] is not None:
            a = [Fraction(0)] * n
            a[j] = Fraction(-1)
            out.append((a, -p.lower[j], False))
    return out


def _dot(a: Sequence[Fraction], x: Sequence[Fraction]) -> Fraction:
    return sum((u * v for u, v in zip(a, x) if u), Fraction(0))


def _purify(p: LPProblem, x: list[Fraction]) -> tuple[list[Fraction], bool]:
    """Walk along optimal faces until ``x`` is a vertex; report whether one exists."""
    n = p.n
    cons = _constraint_rows(p)
    while True:
        tight = [a for a, beta, eq in cons if eq or _dot(a, x) == beta]
        rank, d = _gauss_rank_null(tight, n)
        if d is None:
            return x, True
        if _dot(p.w, d) != 0:
            raise AssertionError("optimal point admits an improving direction")
        for direction in (d, [-v for v in d]):
            step = None
            for a, beta, eq in cons:
                ad = _dot(a, direction)
                if ad > 0:
                    t = (beta - _dot(a, x)) / ad
                    if step is None or t < step:
                        step = t
            if step is not None:
                x = [xi + step * di for xi, di in zip(x, direction)]
                break
        else:
            return x, False


def solve(p: LPProblem) -> LPOutcome:
    """Solve ``p`` exactly.

    Optimal outcomes return a vertex when the feasible region is pointed
    (``is_vertex``), the optimal value, and an extremal dual. Unbounded
    outcomes carry a recession ray along which the objective grows.
    """
    n = p.n
    # column map: x_j = offset_j + sum(sign * p_col)
    offset = [Fraction(0)] * n
    cols: list[tuple[int, int]] = []
    kind: list[str] = []
    ub_rows: list[tuple[int, Fraction]] = []
    for j in range(n):
        lo, hi = p.lower[j], p.upper[j]
        if lo is not None and hi is not None and lo > hi:
            return LPOutcome(INFEASIBLE)
        if lo is not None:
            offset[j] = lo
            cols.append((j, 1))
            kind.append("lower")
            if hi is not None:
                ub_rows.append((len(cols) - 1, hi - lo))
        elif hi is not None:
            offset[j] = hi
            cols.append((j, -1))
            kind.append("upper")
        else:
            cols.append((j, 1))
            kind.append("free+")
            cols.append((j, -1))
            kind.append("free-")
    N = len(cols)

    # constraint rows over p: (coeffs, rhs, origin)
    rows: list[tuple[list[Fraction], Fraction, tuple[str, int, int]]] = []
    for i in range(p.m):
        Ai = p.A.row(i)
        coeffs = [Ai[j] * s for j, s in cols]
        rhs = p.b[i] - _dot(Ai, offset)
        rows.append((coeffs, rhs, ("row", i, 1)))
        if i in p.equalities:
            rows.append(([-v for v in coeffs], -rhs, ("row", i, -1)))
    for c, width in ub_rows:
        coeffs = [Fraction(0)] * N
        coeffs[c] = Fraction(1)
        rows.append((coeffs, width, ("ub", cols[c][0], 1)))
    m = len(rows)

    # integer rows; slack of row i gets coefficient +-1 after the sign flip
    scale: list[int] = []
    int_rows: list[list[int]] = []
    flipped: list[bool] = []
    for coeffs, rhs, _ in rows:
        lam = _lcm([v.denominator for v in coeffs] + [rhs.denominator])
        r = [int(v * lam) for v in coeffs]
        b = int(rhs * lam)
        flip = b < 0
        if flip:
            r = [-v for v in r]
            b = -b
        scale.append(lam)
        flipped.append(flip)
        int_rows.append((r, b))

    n_art = sum(flipped)
    width = N + m + n_art
    T: list[list[int]] = []
    basis: list[int] = []
    art = N + m
    for i, (r, b) in enumerate(int_rows):
        row = r + [0] * (m + n_art) + [b]
        row[N + i] = -1 if flipped[i] else 1
        if flipped[i]:
            row[art] = 1
            basis.append(art)
            art += 1
        else:
            basis.append(N + i)
        T.append(row)

    # phase 1: maximize -(sum of artificials)
    obj = [0] * (width + 1)
    for i in range(m):
        if flipped[i]:
            for j in range(width + 1):
                obj[j] -= T[i][j]
    for j in range(N + m, width):
        obj[j] += 1  # -c_j with c_j = -1 cancels
    T.append(obj)
    tab = _Tableau(T, basis)
    if n_art:
        tab.run(width)
        if tab.T[m][-1] != 0:
            return LPOutcome(INFEASIBLE)
        for i in range(m):
            if tab.basis[i] >= N + m:
                c = next(j for j in range(N + m) if tab.T[i][j] != 0)
                tab.pivot(i, c)
    # drop artificial columns
    tab.T = [row[:N + m] + [row[-1]] for row in tab.T]

    # phase 2 objective, scaled to integers
    c_frac = [p.w[j] * s for j, s in cols]
    mu = _lcm([v.denominator for v in c_frac])
    cvec = [int(v * mu) for v in c_frac] + [0] * m
    D = tab.D
    new_obj = [-D * cj for cj in cvec] + [0]
    for i in range(m):
        cb = cvec[tab.basis[i]]
        if cb:
            row = tab.T[i]
            new_obj = [a + cb * b for a, b in zip(new_obj, row)]
    tab.T[m] = new_obj
    status, enter = tab.run(N + m)
    D = tab.D
    T = tab.T

    pvals = [Fraction(0)] * (N + m)
    for i in range(m):
        pvals[tab.basis[i]] = Fraction(T[i][-1], D)

    if status == UNBOUNDED:
        dp = [Fraction(0)] * (N + m)
        dp[enter] = Fraction(1)
        for i in range(m):
            dp[tab.basis[i]] = -Fraction(T[i][enter], D)
        ray = [Fraction(0)] * n
        for c, (j, s) in enumerate(cols):
            ray[j] += s * dp[c]
        return LPOutcome(UNBOUNDED, ray=tuple(ray))

    x = list(offset)
    for c, (j, s) in enumerate(cols):
        x[j] += s * pvals[c]

    # duals from reduced costs (slack columns -> rows, structural -> bounds)
    y = [Fraction(0)] * p.m
    z_up = [Fraction(0)] * n
    z_lo = [Fraction(0)] * n
    for i, (_, _, origin) in enumerate(rows):
        val = Fraction(T[m][N + i], D) * scale[i] / mu
        tag, idx, sgn = origin
        if tag == "row":
            y[idx] += sgn * val
        else:
            z_up[idx] += val
    for c, (j, s) in enumerate(cols):
        red = Fraction(T[m][c], D) / mu
        if kind[c] == "lower":
            z_lo[j] += red
        elif kind[c] == "upper":
            z_up[j] += red

    is_vertex = "free+" not in kind
    if not is_vertex:
        x, is_vertex = _purify(p, x)
    xs = tuple(x)
    return LPOutcome(OPTIMAL, xs, p.objective(xs), LPDual(tuple(y), tuple(z_up), tuple(z_lo)),
                     is_vertex)


class NotHalfIntegral(ValueError):
    """Raised when a vertex expected to be half-integral is not."""


class HalfIntegralSplit(NamedTuple):
    """``x - translation`` is 0 on ``zeros`` and 1/2 on ``halves``."""

    translation: tuple[int, ...]
    zeros: tuple[int, ...]
    halves: tuple[int, ...]


def assert_half_integral(x: Sequence[Fraction]) -> HalfIntegralSplit:
    t: list[int] = []
    zeros: list[int] = []
    halves: list[int] = []
    for j, v in enumerate(x):
        v = as_rational(v)
        if (2 * v).denominator != 1:
            raise NotHalfIntegral(f"coordinate {j} equals {v}, which is not half-integral")
        f = math.floor(v)
        t.append(f)
        (zeros if v == f else halves).append(j)
    return HalfIntegralSplit(tuple(t), tuple(zeros), tuple(halves))
