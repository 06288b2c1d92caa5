from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from deltaip.exactmat import (NotDeltaModular, RationalMatrix, det, find_column_clearing_sets,
                              find_row_clearing_columns, floor_log2, max_abs_subdeterminant)
from deltaip.stableset import Graph, ocp_brute


def cofactor_det(a):
    n = len(a)
    if n == 0:
        return 1
    if n == 1:
        return a[0][0]
    return sum((-1) ** j * a[0][j] * cofactor_det([r[:j] + r[j + 1:] for r in a[1:]])
               for j in range(n))


def test_det_examples():
    assert det(RationalMatrix.identity(2)) == 1
    assert det(RationalMatrix.from_rows([[2, 0], [0, 3]])) == 6
    assert abs(det(RationalMatrix.from_rows([[1, 1, 0], [0, 1, 1], [1, 0, 1]]))) == 2


def test_det_rational_entries():
    M = RationalMatrix.from_rows([[Fraction(1, 2), 1], [Fraction(1, 3), 2]])
    assert det(M) == Fraction(1, 2) * 2 - Fraction(1, 3)


def test_det_rejects_non_square():
    with pytest.raises(ValueError):
        det(RationalMatrix.from_rows([[1, 2, 3], [4, 5, 6]]))


def test_det_matches_cofactor_expansion():
    rng = random.Random(0)
    for _ in range(1000):
        n = rng.randint(1, 5)
        a = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        assert det(RationalMatrix.from_rows(a)) == cofactor_det(a)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=4))
def test_subdeterminant_scan_matches_naive(rows):
    M = RationalMatrix.from_rows(rows)
    cert = max_abs_subdeterminant(M, order_cap=6)
    naive = 0
    for k in range(1, min(M.rows, M.cols) + 1):
        for R in itertools.combinations(range(M.rows), k):
            for C in itertools.combinations(range(M.cols), k):
                naive = max(naive, abs(cofactor_det([[rows[i][j] for j in C] for i in R])))
    assert cert.exhaustive
    assert cert.delta == naive


def test_subdeterminant_examples():
    c3 = RationalMatrix.from_rows([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    cert = max_abs_subdeterminant(c3, order_cap=3)
    assert (cert.delta, cert.exhaustive) == (2, True)
    diag = RationalMatrix.from_rows([[1, 0, 0], [0, -1, 0], [0, 0, 1]])
    assert max_abs_subdeterminant(diag).delta <= 1
    c4 = Graph.cycle(4).incidence_matrix()
    assert max_abs_subdeterminant(c4, order_cap=4).delta == 1


def test_subdeterminant_cap_flags_partial_scan():
    M = RationalMatrix.from_rows([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    cert = max_abs_subdeterminant(M, order_cap=2)
    assert not cert.exhaustive and cert.verified_up_to_order == 2
    with pytest.raises(ValueError):
        max_abs_subdeterminant(RationalMatrix.from_rows([[Fraction(1, 2)]]))


def test_subdeterminant_witness_attains_delta():
    M = RationalMatrix.from_rows([[2, 1, 0], [1, 3, 1], [0, 1, 1]])
    cert = max_abs_subdeterminant(M)
    R, C = cert.witness
    assert abs(det(M.submatrix(R, C))) == cert.delta


def test_incidence_subdeterminant_is_power_of_ocp():
    rng = random.Random(1)
    for _ in range(40):
        n = rng.randint(2, 7)
        g = Graph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.4])
        if g.m == 0:
            continue
        assert max_abs_subdeterminant(g.incidence_matrix()).delta == 2 ** ocp_brute(g)


def test_row_clearing_examples():
    assert find_row_clearing_columns(RationalMatrix.from_rows([[1, -1], [1, 1]]), 1).columns == ()
    assert find_row_clearing_columns(RationalMatrix.from_rows([[2, 0], [0, 1]]), 2).columns == (0,)
    res = find_row_clearing_columns(RationalMatrix.from_rows([[2, 1], [1, 3]]), 5)
    assert res.columns == (0,)
    assert len(res.columns) <= floor_log2(5)


def test_row_clearing_disjunction_and_witness():
    rng = random.Random(2)
    for _ in range(200):
        n, m = rng.randint(1, 4), rng.randint(1, 4)
        a = [[rng.choice([0, 0, 1, -1, 2, -2, 3]) for _ in range(n)] for _ in range(m)]
        M = RationalMatrix.from_rows(a)
        delta = max(max_abs_subdeterminant(M).delta, 1)
        res = find_row_clearing_columns(M, delta)
        assert len(res.columns) <= floor_log2(delta)
        for r in a:
            assert all(abs(v) <= 1 for v in r) or any(r[j] for j in res.columns)
        if res.columns:
            sub = M.submatrix(res.witness_rows, res.columns)
            assert abs(det(sub)) >= 2 ** len(res.columns)


def test_row_clearing_detects_false_promise():
    with pytest.raises(NotDeltaModular):
        find_row_clearing_columns(RationalMatrix.from_rows([[2, 0], [0, 2]]), 2)


def test_column_clearing_examples():
    res = find_column_clearing_sets(RationalMatrix.from_rows([[1, 1], [1, -1]]), 2)
    assert (res.rows, res.columns) == ((), ())
    A = RationalMatrix.from_rows([[3, 1, 0], [0, 1, 1], [1, 0, -1]])
    res = find_column_clearing_sets(A, 3)
    assert res.columns == (0,) and res.rows == (0, 2)
    assert abs(A[1, 1]) <= 1 and abs(A[1, 2]) <= 1
    res = find_column_clearing_sets(RationalMatrix.from_rows([[2, 0], [0, 2]]), 4)
    assert set(res.columns) == {0, 1} and set(res.rows) == {0, 1}


def test_column_clearing_leaves_unit_entries():
    rng = random.Random(3)
    for _ in range(200):
        n, m = rng.randint(1, 5), rng.randint(1, 4)
        cols = []
        for _ in range(n):
            c = [0] * m
            for r in rng.sample(range(m), min(m, rng.randint(1, 2))):
                c[r] = rng.choice([1, -1, 2, -2, 3])
            cols.append(c)
        M = RationalMatrix.from_rows([[cols[j][i] for j in range(n)] for i in range(m)])
        delta = max(max_abs_subdeterminant(M).delta, 1)
        res = find_column_clearing_sets(M, delta)
        assert len(res.columns) <= floor_log2(delta)
        assert len(res.rows) <= 2 * floor_log2(delta)
        for i in range(m):
            for j in range(n):
                if i not in res.rows and j not in res.columns:
                    assert abs(M[i, j]) <= 1
