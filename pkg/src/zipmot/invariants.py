"""Invariant theory of Weyl groups acting on ``S = Sym(T̂ ⊗ Q)`` and on ``R(T)``.

Group elements act on polynomials through :meth:`MultiPoly.substitute_linear`
(``x_j`` goes to the image of the ``j``-th lattice basis vector), and on
characters through ``x^λ -> x^{wλ}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

import numpy as np

from . import linalg, upoly
from .linalg import Echelon
from ._symkernel import SymSums
from .errors import InternalError, PreconditionError, StructureError
from .exact import GroupRingElem, MultiPoly, default_variables, iter_monomials
from .rootdata import sparse_frame
from .weyl import WeylGroup, apply

MAX_MOLIEN_DEGREE = 40

_SYM_CACHE: dict[tuple, SymSums] = {}


@dataclass(frozen=True)
class GradedSubspaceBasis:
    """Bases of ``S^Γ_d`` for ``d = 0..max_degree``."""

    by_degree: tuple[tuple[MultiPoly, ...], ...]

    @property
    def dims(self) -> list[int]:
        return [len(b) for b in self.by_degree]


@dataclass(frozen=True)
class FundamentalInvariants:
    generators: tuple[MultiPoly, ...]
    degrees: tuple[int, ...]


def _check_space(p: MultiPoly, G: WeylGroup) -> None:
    if p.nvars != G.rank:
        raise StructureError(f"polynomial has {p.nvars} variables, group acts on rank {G.rank}")


def reynolds(p: MultiPoly, G: WeylGroup) -> MultiPoly:
    """``(1/|Γ|) Σ_γ γ·p``."""
    _check_space(p, G)
    acc = MultiPoly.zero(p.variables)
    for w in G.elements:
        acc = acc + p.substitute_linear(w.matrix)
    return acc.scale(Fraction(1, G.order))


def is_invariant(p: MultiPoly, G: WeylGroup) -> bool:
    """Exact check against the generating reflections."""
    return all(p.substitute_linear(s.matrix) == p for s in G.simple_reflections)


def char_poly_reversed(M) -> list[int]:
    """Ascending coefficients of ``det(1 - tM)`` (Faddeev–LeVerrier)."""
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    c = [Fraction(0)] * (n + 1)
    c[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        AM = linalg.matmul(A, Mk)
        Mk = [[AM[i][j] + (c[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        AMk = linalg.matmul(A, Mk)
        c[n - k] = -sum(AMk[i][i] for i in range(n)) / k
    out = [c[n - k] for k in range(n + 1)]
    if any(x.denominator != 1 for x in out):
        raise InternalError("non-integral characteristic polynomial")
    return [int(x) for x in out]


def molien_series(G: WeylGroup, max_degree: int) -> list[int]:
    """``dim S^Γ_d`` for ``d <= max_degree`` from ``(1/|Γ|) Σ_γ 1/det(1 - tγ)``."""
    if not 0 <= max_degree <= MAX_MOLIEN_DEGREE:
        raise PreconditionError(f"Molien degree must lie in 0..{MAX_MOLIEN_DEGREE}")
    classes: dict[tuple[int, ...], int] = {}
    for w in G.elements:
        key = tuple(char_poly_reversed(w.matrix))
        classes[key] = classes.get(key, 0) + 1
    total = [Fraction(0)] * (max_degree + 1)
    for key in sorted(classes):
        inv = upoly.series_inverse(list(key), max_degree)
        for d in range(max_degree + 1):
            total[d] += classes[key] * inv[d]
    out = []
    for x in total:
        x /= G.order
        if x.denominator != 1:
            raise InternalError("Molien coefficient is not an integer")
        out.append(int(x))
    return out


def _frame_matrices(G: WeylGroup) -> list[np.ndarray] | None:
    P = sparse_frame(G.datum)
    if P is None:
        return None
    Pinv = linalg.inverse(P)
    mats = []
    for w in G.elements:
        conj = linalg.matmul(linalg.matmul(Pinv, w.matrix), P)
        mats.append(np.array(linalg.as_int_matrix(conj), dtype=np.int64))
    return mats


def _sym_sums(G: WeylGroup, D: int, frame: bool) -> SymSums:
    key = (G.datum.label, G.generators, frame)
    cached = _SYM_CACHE.get(key)
    if cached is not None and cached.D >= D:
        return cached
    mats = _frame_matrices(G) if frame else None
    if mats is None:
        key = (G.datum.label, G.generators, False)
        cached = _SYM_CACHE.get(key)
        if cached is not None and cached.D >= D:
            return cached
        mats = [np.array(w.matrix, dtype=np.int64) for w in G.elements]
    table = SymSums(mats, D)
    _SYM_CACHE[key] = table
    return table


def reynolds_rank_table(G: WeylGroup, max_degree: int) -> list[int]:
    """``dim S^Γ_d`` as the rank of the Reynolds operator on degree-``d`` monomials.

    The rank is unchanged by a rational change of basis, so the computation
    runs in a frame where the group acts sparsely whenever one is known.
    """
    table = _sym_sums(G, max_degree, frame=True)
    return [table.rank(d) for d in range(max_degree + 1)]


def _row_key(e: tuple[int, ...]) -> tuple:
    # echelon columns ordered so that min() is the grevlex-smallest monomial
    return (sum(e), tuple(-a for a in reversed(e)))


def _poly_row(p: MultiPoly) -> dict:
    return {_row_key(e): c for e, c in p.terms.items()}


def _row_poly(row: dict, exps, variables) -> MultiPoly:
    return MultiPoly(variables, {exps[j]: v for j, v in row.items()})


def invariant_basis(G: WeylGroup, max_degree: int) -> GradedSubspaceBasis:
    """Row-reduced bases of ``S^Γ_d`` from Reynolds images of monomials."""
    variables = default_variables(G.rank)
    table = _sym_sums(G, max_degree, frame=False)
    out = []
    for d in range(max_degree + 1):
        exps = list(iter_monomials(G.rank, d))
        ech = Echelon()
        for i in range(table.size(d)):
            row = table.row(d, i)
            if row:
                ech.add({_row_key(exps[j]): v for j, v in row.items()})
        basis = [key_poly(row, variables).monic() for _, row in ech.reduced_rows()]
        out.append(tuple(basis))
    return GradedSubspaceBasis(tuple(out))


def key_poly(row: dict, variables) -> MultiPoly:
    """Polynomial from a row keyed by :func:`_row_key` columns."""
    return MultiPoly(variables, {tuple(-a for a in reversed(neg)): v for (_, neg), v in row.items()})


def poly_row(p: MultiPoly) -> dict:
    return _poly_row(p)


def _coxeter_guess(G: WeylGroup) -> int:
    s = len(G.generators)
    n = len(G.positive_roots)
    return max(1, -(-2 * n // s)) if s else 1


def fundamental_invariants(G: WeylGroup) -> FundamentalInvariants:
    """Greedy degree-by-degree choice of algebra generators of ``S^Γ``.

    At each degree the span of products of earlier generators is extended by
    Reynolds images of monomials taken in increasing grevlex order until it
    reaches the Molien dimension.  Generators are made monic.
    """
    r = G.rank
    variables = default_variables(r)
    molien_cap = min(MAX_MOLIEN_DEGREE, len(G.positive_roots) + 1)
    molien = molien_series(G, molien_cap)
    for D in (_coxeter_guess(G), len(G.positive_roots) + 1):
        found = _greedy(G, variables, molien, min(D, molien_cap))
        if found is not None:
            return found
    raise InternalError(f"no complete set of basic invariants for {G.datum.label}")


def _greedy(G: WeylGroup, variables, molien: list[int], D: int) -> FundamentalInvariants | None:
    r = G.rank
    table = _sym_sums(G, D, frame=False)
    gens: list[MultiPoly] = []
    degs: list[int] = []
    powers: dict[tuple[int, int], MultiPoly] = {}

    def power(i: int, k: int) -> MultiPoly:
        if (i, k) not in powers:
            powers[(i, k)] = MultiPoly.one(variables) if k == 0 else power(i, k - 1) * gens[i]
        return powers[(i, k)]

    for d in range(D + 1):
        ech = Echelon()
        for exps in _weighted_compositions(degs, d):
            p = MultiPoly.one(variables)
            for i, k in enumerate(exps):
                if k:
                    p = p * power(i, k)
            if not ech.add(_poly_row(p)):
                raise InternalError("chosen invariants are algebraically dependent")
        target = molien[d]
        if d and len(ech) < target:
            mons = list(iter_monomials(r, d))
            for i in range(table.size(d)):
                if len(ech) == target:
                    break
                row = table.row(d, i)
                if not row:
                    continue
                cand = {_row_key(mons[j]): v for j, v in row.items()}
                if ech.add(cand):
                    f = _row_poly(row, mons, variables).monic()
                    if not is_invariant(f, G):
                        raise InternalError("Reynolds image is not invariant")
                    gens.append(f)
                    degs.append(d)
        if len(ech) != target:
            raise InternalError(f"degree {d}: span {len(ech)} differs from Molien {target}")
        if len(gens) == r and prod(degs) == G.order:
            return FundamentalInvariants(tuple(gens), tuple(degs))
        if len(gens) > r:
            raise InternalError("too many basic invariants")
    return None


def _weighted_compositions(degs: list[int], d: int):
    """Exponent vectors ``e`` with ``Σ e_i·degs[i] = d``."""
    if not degs:
        if d == 0:
            yield ()
        return
    *rest, last = degs
    for k in range(d // last + 1):
        for head in _weighted_compositions(rest, d - k * last):
            yield head + (k,)


def chevalley_degrees(G: WeylGroup) -> tuple[int, ...]:
    return fundamental_invariants(G).degrees


def orbit(lam, G: WeylGroup) -> tuple[tuple[int, ...], ...]:
    """The orbit ``W·λ`` (closure under the generating reflections), sorted."""
    lam = tuple(int(a) for a in lam)
    if len(lam) != G.rank:
        raise StructureError("weight has the wrong rank")
    gens = [s.matrix for s in G.simple_reflections]
    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for s in gens:
                nu = apply(s, mu)
                if nu not in seen:
                    seen.add(nu)
                    nxt.append(nu)
        frontier = nxt
    return tuple(sorted(seen))


def stabilizer_order(lam, G: WeylGroup) -> int:
    lam = tuple(lam)
    return sum(1 for w in G.elements if apply(w.matrix, lam) == lam)


def orbit_sum(lam, G: WeylGroup) -> GroupRingElem:
    """``Σ_{μ ∈ W·λ} x^μ`` with each orbit point counted once."""
    pts = orbit(lam, G)
    return GroupRingElem(G.rank, {mu: 1 for mu in pts})


def weighted_products(degrees, d: int) -> int:
    """Coefficient of ``t^d`` in ``Π 1/(1 - t^{d_i})``."""
    return sum(1 for _ in _weighted_compositions(list(degrees), d))


def free_algebra_series(degrees, n: int) -> list[int]:
    return [weighted_products(degrees, d) for d in range(n + 1)]


__all__ = [
    "FundamentalInvariants",
    "GradedSubspaceBasis",
    "chevalley_degrees",
    "free_algebra_series",
    "fundamental_invariants",
    "invariant_basis",
    "is_invariant",
    "molien_series",
    "orbit",
    "orbit_sum",
    "reynolds",
    "reynolds_rank_table",
    "stabilizer_order",
]
