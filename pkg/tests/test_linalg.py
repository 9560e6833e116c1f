from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from zipmot import linalg
from zipmot._symkernel import SymSums, exact_rank, sparse_rank

small = st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=5)


@given(small)
def test_exact_rank_agrees(M):
    assert exact_rank(np.array(M, dtype=np.int64)) == linalg.rank(M)


@given(small)
def test_sparse_rank_agrees(M):
    rows = [{j: v for j, v in enumerate(row) if v} for row in M]
    assert sparse_rank(rows) == linalg.rank(M)


@given(small)
def test_echelon_rank(M):
    ech = linalg.Echelon()
    for row in M:
        ech.add({j: Fraction(v) for j, v in enumerate(row) if v})
    assert len(ech) == linalg.rank(M)


def test_inverse_and_solve():
    A = [[2, 1], [1, 1]]
    inv = linalg.inverse(A)
    assert linalg.matmul(A, inv) == linalg.identity(2)
    assert linalg.solve(A, [3, 2]) == [1, 1]


def test_symsums_trivial_group():
    S = SymSums([np.eye(2, dtype=np.int64)], 3)
    assert [S.rank(k) for k in range(4)] == [1, 2, 3, 4]


def test_symsums_sign_group():
    S = SymSums([np.eye(1, dtype=np.int64), -np.eye(1, dtype=np.int64)], 4)
    assert [S.rank(k) for k in range(5)] == [1, 0, 1, 0, 1]
    assert S.row(2, 0) == {0: 2}
