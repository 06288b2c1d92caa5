"""Exact rational matrices, determinants and subdeterminant certificates.

All arithmetic is exact: scalars are :class:`fractions.Fraction` and integer
matrices are handled with fraction-free (Bareiss) elimination.
"""

from __future__ import annotations

import hashlib
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

Rational = Fraction

__all__ = [
    "Rational",
    "as_rational",
    "RationalMatrix",
    "DeltaCertificate",
    "NotDeltaModular",
    "RowClearing",
    "ColumnClearing",
    "det",
    "max_abs_subdeterminant",
    "find_row_clearing_columns",
    "find_column_clearing_sets",
    "floor_log2",
]


class NotDeltaModular(ValueError):
    """A proof step that only holds for totally Delta-modular matrices failed."""


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected so that no rounding can slip in unnoticed.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r}; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


def floor_log2(delta: int) -> int:
    if delta < 1:
        raise ValueError("delta must be a positive integer")
    return int(delta).bit_length() - 1


@dataclass(frozen=True)
class RationalMatrix:
    """Dense row-major matrix of Fractions."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: int | None = None) -> "RationalMatrix":
        data = [[as_rational(v) for v in r] for r in rows]
        if cols is None:
            cols = len(data[0]) if data else 0
        for r in data:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(data), cols, tuple(v for r in data for v in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return self.entries[i * self.cols + j]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_lists(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix.from_rows([self.col(j) for j in range(self.cols)], self.rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix.from_rows([[self[i, j] for j in cols] for i in rows], len(cols))

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.entries)

    def to_int_lists(self) -> list[list[int]]:
        if not self.is_integral():
            raise ValueError("matrix has non-integral entries")
        return [[int(v) for v in self.row(i)] for i in range(self.rows)]

    def nonzeros_in_row(self, i: int) -> list[int]:
        return [j for j, v in enumerate(self.row(i)) if v != 0]

    def nonzeros_in_col(self, j: int) -> list[int]:
        return [i for i, v in enumerate(self.col(j)) if v != 0]

    def fingerprint(self) -> str:
        text = f"{self.rows}x{self.cols}:" + ",".join(str(v) for v in self.entries)
        return hashlib.sha1(text.encode()).hexdigest()[:16]

    def __str__(self) -> str:
        return "\n".join(" ".join(str(v) for v in self.row(i)) for i in range(self.rows))


def _bareiss_int(a: list[list[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for p in range(k + 1, n):
                if m[p][k] != 0:
                    m[k], m[p] = m[p], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            f = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - f * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def det(M: RationalMatrix) -> Fraction:
    """Exact determinant of a square matrix."""
    if M.rows != M.cols:
        raise ValueError(f"determinant of non-square {M.rows}x{M.cols} matrix")
    n = M.rows
    if n == 0:
        return Fraction(1)
    # clear denominators row by row, then run the integer routine
    scale = Fraction(1)
    rows = []
    for i in range(n):
        r = M.row(i)
        lcm = 1
        for v in r:
            lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
        rows.append([int(v * lcm) for v in r])
        scale *= lcm
    return Fraction(_bareiss_int(rows)) / scale


@dataclass(frozen=True)
class DeltaCertificate:
    """Largest absolute subdeterminant found by an exhaustive scan.

    ``exhaustive`` is true only when every order up to ``min(m, n)`` was
    scanned; ``witness`` holds the rows and columns of an attaining submatrix
    (empty when ``delta == 0``).
    """

    matrix_id: str
    delta: int
    verified_up_to_order: int
    exhaustive: bool
    witness: tuple[tuple[int, ...], tuple[int, ...]] = field(default=((), ()))


def _batch_abs_det(mats: np.ndarray) -> np.ndarray:
    """|det| of a stack of small integer matrices, exact in int64.

    Bareiss elimination with per-matrix partial pivoting; every division is
    exact so no rounding occurs as long as intermediate minors fit in int64.
    """
    b, n, _ = mats.shape
    m = mats.astype(np.int64, copy=True)
    alive = np.ones(b, dtype=bool)
    prev = np.ones(b, dtype=np.int64)
    idx = np.arange(b)
    for k in range(n):
        nz = m[:, k:, k] != 0
        has = nz.any(axis=1)
        alive &= has
        p = k + np.argmax(nz, axis=1)
        swap = p != k
        if swap.any():
            rows_k = m[idx, k].copy()
            m[idx, k] = m[idx, p]
            m[idx, p] = rows_k
        if k == n - 1:
            break
        piv = m[:, k, k].copy()
        piv[~alive] = 1
        sub = m[:, k + 1:, k + 1:]
        col = m[:, k + 1:, k][:, :, None]
        rowk = m[:, k, k + 1:][:, None, :]
        m[:, k + 1:, k + 1:] = (piv[:, None, None] * sub - col * rowk) // prev[:, None, None]
        prev = piv
    out = np.abs(m[:, n - 1, n - 1])
    out[~alive] = 0
    return out


def _hadamard_fits_int64(order: int, max_abs: int) -> bool:
    # Bareiss intermediates are products of two minors, each within the Hadamard bound
    bound = (order ** (order / 2.0)) * (max_abs ** order)
    return bound * bound < 2.0 ** 60


def _scan_order(a: list[list[int]], k: int, max_abs: int):
    m = len(a)
    n = len(a[0]) if m else 0
    best = 0
    best_witness: tuple[tuple[int, ...], tuple[int, ...]] = ((), ())
    use_numpy = _hadamard_fits_int64(k, max_abs)
    for cols in itertools.combinations(range(n), k):
        # zero rows and rows equal up to sign cannot contribute
        seen: dict[tuple[int, ...], int] = {}
        for i in range(m):
            r = tuple(a[i][j] for j in cols)
            if not any(r):
                continue
            lead = next(v for v in r if v)
            key = r if lead > 0 else tuple(-v for v in r)
            seen.setdefault(key, i)
        if len(seen) < k:
            continue
        keys = list(seen)
        combos = list(itertools.combinations(range(len(keys)), k))
        if use_numpy:
            mats = np.array([[keys[c] for c in combo] for combo in combos], dtype=np.int64)
            dets = _batch_abs_det(mats)
            pos = int(np.argmax(dets))
            val = int(dets[pos])
        else:
            val, pos = 0, 0
            for t, combo in enumerate(combos):
                d = abs(_bareiss_int([list(keys[c]) for c in combo]))
                if d > val:
                    val, pos = d, t
        if val > best:
            best = val
            best_witness = (tuple(sorted(seen[keys[c]] for c in combos[pos])), cols)
    return best, best_witness


def max_abs_subdeterminant(M: RationalMatrix, order_cap: int = 6) -> DeltaCertificate:
    """Scan every square submatrix of order at most ``order_cap``.

    The scan is exponential and meant for certification of small matrices.
    """
    if order_cap < 1:
        raise ValueError("order_cap must be at least 1")
    if not M.is_integral():
        raise ValueError("subdeterminant certification needs an integral matrix")
    a = M.to_int_lists()
    top = min(M.rows, M.cols)
    upto = min(order_cap, top)
    max_abs = max((abs(v) for r in a for v in r), default=0)
    best = 0
    witness: tuple[tuple[int, ...], tuple[int, ...]] = ((), ())
    for k in range(1, upto + 1):
        val, wit = _scan_order(a, k, max_abs)
        if val > best:
            best, witness = val, wit
    return DeltaCertificate(M.fingerprint(), best, upto, upto >= top, witness)


class RowClearing(NamedTuple):
    """Columns ``columns`` hitting every row outside {-1,0,1}.

    ``witness_rows[k]`` is the row that forced ``columns[k]``; together they
    index a triangular submatrix with diagonal entries of absolute value >= 2.
    """

    columns: tuple[int, ...]
    witness_rows: tuple[int, ...]


class ColumnClearing(NamedTuple):
    rows: tuple[int, ...]
    columns: tuple[int, ...]
    witness_rows: tuple[int, ...]


def find_row_clearing_columns(A: RationalMatrix, delta: int) -> RowClearing:
    """Pick columns J so that every row is in {-1,0,1}^n or meets J.

    Greedy: while some row is outside {-1,0,1}^n and misses J, add its
    first column with an entry of absolute value at least two. Raises
    :class:`NotDeltaModular` once more than ``floor(log2(delta))`` columns
    would be needed.
    """
    if not A.is_integral():
        raise ValueError("row clearing needs an integral matrix")
    limit = floor_log2(delta)
    cols: list[int] = []
    rows: list[int] = []
    chosen: set[int] = set()
    while True:
        for i in range(A.rows):
            r = A.row(i)
            if all(abs(v) <= 1 for v in r):
                continue
            if any(r[j] != 0 for j in chosen):
                continue
            j = next(j for j, v in enumerate(r) if abs(v) >= 2 and j not in chosen)
            break
        else:
            return RowClearing(tuple(cols), tuple(rows))
        if len(cols) >= limit:
            raise NotDeltaModular(
                f"row {i} still needs clearing after {len(cols)} columns; "
                f"matrix is not totally {delta}-modular")
        cols.append(j)
        rows.append(i)
        chosen.add(j)


def find_column_clearing_sets(A: RationalMatrix, delta: int) -> ColumnClearing:
    """Rows I and columns J such that A outside I x J has entries in {-1,0,1}.

    J indexes a maximal upper-triangular submatrix whose diagonal entries have
    absolute value at least two, grown greedily by smallest row then column;
    I is the union of the supports of the columns in J.
    """
    if not A.is_integral():
        raise ValueError("column clearing needs an integral matrix")
    for j in range(A.cols):
        if len(A.nonzeros_in_col(j)) > 2:
            raise ValueError(f"column {j} has more than two nonzeros")
    limit = floor_log2(delta)
    cols: list[int] = []
    rows: list[int] = []
    support: set[int] = set()
    while True:
        pick = None
        for i in range(A.rows):
            if i in support:
                continue
            for j in range(A.cols):
                if j not in cols and abs(A[i, j]) >= 2:
                    pick = (i, j)
                    break
            if pick:
                break
        if pick is None:
            return ColumnClearing(tuple(sorted(support)), tuple(cols), tuple(rows))
        if len(cols) >= limit:
            raise NotDeltaModular(
                f"triangular submatrix would exceed {limit} columns; "
                f"matrix is not totally {delta}-modular")
        i, j = pick
        rows.append(i)
        cols.append(j)
        support.update(A.nonzeros_in_col(j))
