"""Small exact linear algebra over Q (dense, list-of-rows matrices)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import InternalError

Matrix = list[list[Fraction]]


def to_fractions(M: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in M]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    n, m, p = len(A), len(B), len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(m)) for j in range(p)] for i in range(n)]


def transpose(A: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*A)]


def rref(M: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = to_fractions(M)
    rows = len(A)
    cols = len(A[0]) if A else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A[:r], pivots


def rank(M: Sequence[Sequence]) -> int:
    if not M:
        return 0
    return len(rref(M)[1])


def inverse(M: Sequence[Sequence]) -> Matrix:
    n = len(M)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(to_fractions(M))]
    R, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


def solve(A: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve ``A x = b`` for a consistent system with full column rank."""
    n = len(A[0])
    aug = [list(row) + [Fraction(bi)] for row, bi in zip(to_fractions(A), b)]
    R, pivots = rref(aug)
    if n in pivots:
        raise InternalError("inconsistent linear system")
    if pivots != list(range(n)):
        raise InternalError("linear system is under-determined")
    return [R[i][n] for i in range(n)]


def is_integral(M: Sequence[Sequence[Fraction]]) -> bool:
    return all(Fraction(x).denominator == 1 for row in M for x in row)


def as_int_matrix(M: Sequence[Sequence]) -> tuple[tuple[int, ...], ...]:
    if not is_integral(M):
        raise InternalError("matrix is not integral")
    return tuple(tuple(int(x) for x in row) for row in M)


class Echelon:
    """Incremental row echelon form over Q for sparse rows ``{column: value}``.

    Columns may be any totally ordered keys; each stored row is scaled so
    its smallest column (the pivot) has coefficient 1.
    """

    def __init__(self):
        self.pivots: dict = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        row = {c: Fraction(v) for c, v in row.items() if v}
        while row:
            lead = min(row)
            piv = self.pivots.get(lead)
            if piv is None:
                return row
            f = row[lead]
            for c, v in piv.items():
                nv = row.get(c, 0) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        return row

    def add(self, row: dict) -> bool:
        """Insert ``row`` if it is independent of the stored rows."""
        row = self.reduce(row)
        if not row:
            return False
        lead = min(row)
        inv = 1 / row[lead]
        self.pivots[lead] = {c: v * inv for c, v in row.items()}
        return True

    def reduced_rows(self) -> list[tuple[object, dict]]:
        """Fully reduced rows (zero at every other pivot), sorted by pivot."""
        out = []
        for lead in sorted(self.pivots):
            row = dict(self.pivots[lead])
            while True:
                todo = [c for c, v in row.items() if v and c != lead and c in self.pivots]
                if not todo:
                    break
                c = min(todo)
                f = row[c]
                for cc, v in self.pivots[c].items():
                    row[cc] = row.get(cc, 0) - f * v
            out.append((lead, {c: v for c, v in row.items() if v}))
        return out
