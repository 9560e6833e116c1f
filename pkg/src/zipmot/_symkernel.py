"""Integer kernel for group sums of symmetric powers.

For a finite matrix group ``G`` acting on ``Q^r`` this computes, for every
degree ``k <= D``, the integer matrix ``R_k = sum_{g in G} Sym^k(g)`` whose row
``a`` holds the coefficients of ``sum_g g·x^a`` over the degree-``k``
monomials (grevlex-increasing order, see :func:`zipmot.exact.iter_monomials`).
Row ``a`` divided by ``|G|`` is the Reynolds image of ``x^a``.

Two per-element paths keep this affordable:

* elements with at most one non-unit column (signed permutations, or type-A
  permutations written in the ``ε`` frame) are handled by scattering powers
  of the single dense linear form;
* anything else goes through an incremental product of linear forms.

All accumulation is in int64 when a magnitude bound proves it safe, and in
Python integers (object arrays) otherwise.
"""

from __future__ import annotations

import math
from functools import reduce

import numpy as np

from .exact import iter_monomials

_SAFE = 2**62


class MonomialIndex:
    """Exponent tables and product-index lookups for ``r`` variables up to degree ``D``."""

    def __init__(self, r: int, D: int):
        self.r, self.D = r, D
        self.base = D + 1
        self.exps = [np.array(iter_monomials(r, k), dtype=np.int64).reshape(-1, r) for k in range(D + 1)]
        self.weights = self.base ** np.arange(r, dtype=np.int64)
        self._codes = []
        self._order = []
        for E in self.exps:
            codes = E @ self.weights
            order = np.argsort(codes, kind="stable")
            self._codes.append(codes[order])
            self._order.append(order)
        self._mul: dict[tuple[int, int], np.ndarray] = {}

    def size(self, k: int) -> int:
        return len(self.exps[k])

    def lookup(self, k: int, E: np.ndarray) -> np.ndarray:
        """Indices (in degree ``k``) of the exponent rows ``E``."""
        codes = E @ self.weights
        pos = np.searchsorted(self._codes[k], codes)
        return self._order[k][pos]

    def mul_table(self, p: int, q: int) -> np.ndarray:
        """``T[i, j]`` = index of ``exps[p][i] + exps[q][j]`` in degree ``p + q``."""
        key = (p, q)
        if key not in self._mul:
            Ep, Eq = self.exps[p], self.exps[q]
            S = Ep[:, None, :] + Eq[None, :, :]
            self._mul[key] = self.lookup(p + q, S.reshape(-1, self.r)).reshape(len(Ep), len(Eq))
        return self._mul[key]


def _column_norm_bound(mats: list[np.ndarray], D: int) -> int:
    worst = max(int(np.abs(g).sum(axis=0).max()) for g in mats)
    return len(mats) * max(worst, 1) ** D


def _power_vectors(form: np.ndarray, idx: MonomialIndex, kmax: int, dtype) -> list[np.ndarray]:
    """Coefficient vectors of ``form^m`` for ``m = 0..kmax``."""
    out = [np.ones(1, dtype=dtype)]
    for m in range(1, kmax + 1):
        prev = out[-1]
        cur = np.zeros(idx.size(m), dtype=dtype)
        T = idx.mul_table(m - 1, 1)
        for i in range(idx.r):
            c = int(form[i])
            if c:
                cur[T[:, _unit_index(idx, i)]] += c * prev
        out.append(cur)
    return out


def _unit_index(idx: MonomialIndex, i: int) -> int:
    e = np.zeros((1, idx.r), dtype=np.int64)
    e[0, i] = 1
    return int(idx.lookup(1, e)[0])


def _is_unit_column(col: np.ndarray) -> bool:
    nz = col[col != 0]
    return len(nz) == 1 and abs(int(nz[0])) == 1


class SymSums:
    """``R_k = sum_g Sym^k(g)`` for ``k = 0..D`` (see module docstring).

    When every element is a signed permutation matrix the rows are kept
    sparse (``dict`` column -> value); otherwise each ``R_k`` is a dense
    integer array.
    """

    def __init__(self, mats: list[np.ndarray], D: int):
        self.order = len(mats)
        self.r = r = mats[0].shape[0]
        self.D = D
        self.index = idx = MonomialIndex(r, D)
        self.sparse = r > 0 and all(all(_is_unit_column(g[:, j]) for j in range(r)) for g in mats)
        if self.sparse:
            self._rows = [_monomial_group_rows(mats, idx, k) for k in range(D + 1)]
            return
        dtype = np.int64 if _column_norm_bound(mats, D) < _SAFE else object
        R = [np.zeros((idx.size(k), idx.size(k)), dtype=dtype) for k in range(D + 1)]
        if r == 0:
            R[0][0, 0] = len(mats)
        for g in mats:
            dense = [j for j in range(r) if not _is_unit_column(g[:, j])]
            if len(dense) <= 1:
                _accumulate_near_monomial(g, dense, idx, R, dtype)
            else:
                _accumulate_dense(g, idx, R, dtype)
        self._dense = R

    def size(self, k: int) -> int:
        return self.index.size(k)

    def row(self, k: int, i: int) -> dict[int, int]:
        """Non-zero entries of row ``i`` of ``R_k``."""
        if self.sparse:
            return dict(self._rows[k].get(i, {}))
        row = self._dense[k][i]
        return {int(j): int(row[j]) for j in np.flatnonzero(row)}

    def rank(self, k: int) -> int:
        if self.sparse:
            return sparse_rank(self._rows[k].values())
        return exact_rank(self._dense[k])

    def dense(self, k: int) -> np.ndarray:
        if not self.sparse:
            return self._dense[k]
        out = np.zeros((self.size(k), self.size(k)), dtype=object)
        for i, row in self._rows[k].items():
            for j, v in row.items():
                out[i, j] = v
        return out


def _monomial_group_rows(mats, idx: MonomialIndex, k: int) -> dict[int, dict[int, int]]:
    E = idx.exps[k]
    n = len(E)
    keys, vals = [], []
    for g in mats:
        img = np.zeros_like(E)
        neg = np.zeros(n, dtype=np.int64)
        for j in range(idx.r):
            i = int(np.flatnonzero(g[:, j])[0])
            img[:, i] += E[:, j]
            if g[i, j] < 0:
                neg += E[:, j]
        cols = idx.lookup(k, img) if k else np.zeros(n, dtype=np.int64)
        keys.append(np.arange(n, dtype=np.int64) * n + cols)
        vals.append(np.where(neg % 2 == 1, -1, 1).astype(np.int64))
    keys = np.concatenate(keys)
    vals = np.concatenate(vals)
    order = np.argsort(keys, kind="stable")
    keys, vals = keys[order], vals[order]
    starts = np.flatnonzero(np.r_[True, keys[1:] != keys[:-1]])
    sums = np.add.reduceat(vals, starts)
    rows: dict[int, dict[int, int]] = {}
    for key, v in zip(keys[starts].tolist(), sums.tolist()):
        if v:
            rows.setdefault(key // n, {})[key % n] = v
    return rows


def sparse_rank(rows) -> int:
    """Exact rank of integer rows given as ``{column: value}`` dicts."""
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                g = reduce(math.gcd, (abs(v) for v in row.values()))
                pivots[lead] = {c: v // g for c, v in row.items()}
                break
            a, b = piv[lead], row[lead]
            new = {c: a * v for c, v in row.items()}
            for c, v in piv.items():
                new[c] = new.get(c, 0) - b * v
            row = {c: v for c, v in new.items() if v}
            if row:
                g = reduce(math.gcd, (abs(v) for v in row.values()))
                if g > 1:
                    row = {c: v // g for c, v in row.items()}
    return len(pivots)


def _accumulate_near_monomial(g, dense, idx: MonomialIndex, R, dtype) -> None:
    r, D = idx.r, idx.D
    unit = [j not in dense for j in range(r)]
    target = np.zeros(r, dtype=np.int64)
    sign = np.ones(r, dtype=np.int64)
    for j in range(r):
        if unit[j]:
            i = int(np.flatnonzero(g[:, j])[0])
            target[j] = i
            sign[j] = int(g[i, j])
    jd = dense[0] if dense else None
    powers = _power_vectors(g[:, jd], idx, D, dtype) if dense else None
    R[0][0, 0] += 1
    for k in range(1, D + 1):
        E = idx.exps[k]
        # exponent of the image monomial contributed by unit columns
        img = np.zeros_like(E)
        neg = np.zeros(len(E), dtype=np.int64)
        for j in range(r):
            if unit[j]:
                img[:, target[j]] += E[:, j]
                if sign[j] < 0:
                    neg += E[:, j]
        sgn = np.where(neg % 2 == 1, -1, 1)
        if jd is None:
            cols = idx.lookup(k, img)
            rows = np.arange(len(E))
            R[k][rows, cols] += sgn.astype(dtype)
            continue
        m_all = E[:, jd]
        for m in range(k + 1):
            rows = np.flatnonzero(m_all == m)
            if not len(rows):
                continue
            mu = idx.lookup(k - m, img[rows])
            cols = idx.mul_table(k - m, m)[mu]
            vals = sgn[rows].astype(dtype)[:, None] * powers[m][None, :]
            R[k][rows[:, None], cols] += vals


def _accumulate_dense(g, idx: MonomialIndex, R, dtype) -> None:
    r, D = idx.r, idx.D
    M = np.ones((1, 1), dtype=dtype)
    R[0][0, 0] += 1
    nnz = np.count_nonzero(g, axis=0)
    prio = np.argsort(nnz, kind="stable")
    for k in range(1, D + 1):
        E = idx.exps[k]
        present = E[:, prio] > 0
        jsel = prio[np.argmax(present, axis=1)]
        parent_exp = E.copy()
        parent_exp[np.arange(len(E)), jsel] -= 1
        parent = idx.lookup(k - 1, parent_exp)
        Mp = M[parent]
        T = idx.mul_table(k - 1, 1)
        Mk = np.zeros((len(E), len(E)), dtype=dtype)
        for i in range(r):
            c = g[i, jsel]
            rows = np.flatnonzero(c)
            if len(rows):
                shift = T[:, _unit_index(idx, i)]
                Mk[rows[:, None], shift[None, :]] += c[rows].astype(dtype)[:, None] * Mp[rows]
        M = Mk
        R[k] += Mk


def exact_rank(M: np.ndarray) -> int:
    """Rank over Q of an integer matrix by fraction-free elimination.

    Rows are divided by their content after every step; the update switches
    to Python integers whenever int64 could overflow.
    """
    A = np.asarray(M)
    if A.size == 0:
        return 0
    A = A[np.any(A != 0, axis=1)]
    rank = 0
    while len(A):
        col = int(np.flatnonzero(np.any(A != 0, axis=0))[0])
        column = A[:, col]
        nz = np.flatnonzero(column)
        pr = int(nz[np.argmin(np.abs(column[nz]).astype(float) if A.dtype == object else np.abs(column[nz]))])
        pivot = A[pr].copy()
        rest = np.delete(A, pr, axis=0)
        rank += 1
        if not len(rest):
            break
        p = pivot[col]
        f = rest[:, col]
        if A.dtype != object:
            bound = int(np.abs(rest).max()) * abs(int(p)) + int(np.abs(f).max()) * int(np.abs(pivot).max())
            if bound >= _SAFE:
                rest, pivot, f = rest.astype(object), pivot.astype(object), f.astype(object)
                p = int(p)
        rest = rest * p - f[:, None] * pivot[None, :]
        rest = rest[np.any(rest != 0, axis=1)]
        A = _primitive_rows(rest)
    return rank


def _primitive_rows(A: np.ndarray) -> np.ndarray:
    if not len(A):
        return A
    if A.dtype == object:
        rows = []
        for row in A:
            g = reduce(math.gcd, (abs(int(x)) for x in row), 0)
            rows.append(row // g)
        A = np.array(rows, dtype=object)
        if all(abs(int(x)) < 2**31 for x in A.flat):
            A = A.astype(np.int64)
        return A
    g = np.gcd.reduce(np.abs(A), axis=1)
    return A // g[:, None]
