"""Weyl groups as finite groups of lattice automorphisms."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from . import upoly
from .errors import InternalError
from .rootdata import LeviSubset, RootDatum

MAX_ELEMENTS = 10_000

Matrix = tuple[tuple[int, ...], ...]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    r = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(r)) for j in range(r)) for i in range(r)
    )


def apply(a: Matrix, v) -> tuple[int, ...]:
    return tuple(sum(a[i][j] * v[j] for j in range(len(v))) for i in range(len(a)))


def identity(r: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))


@dataclass(frozen=True)
class WeylElement:
    matrix: Matrix
    length: int
    word: tuple[int, ...]  # 1-based simple reflection indices

    def __str__(self) -> str:
        return " ".join(map(str, self.word)) if self.word else "e"


@dataclass(frozen=True, eq=False)
class WeylGroup:
    """Group generated by the simple reflections indexed by ``generators``.

    ``generators`` holds 1-based simple-root indices; for the full Weyl group
    it is ``1..num_simple``, for a parabolic subgroup the Levi subset.
    """

    datum: RootDatum
    generators: tuple[int, ...]
    elements: tuple[WeylElement, ...]
    longest: int
    _index: dict = field(repr=False)

    @property
    def rank(self) -> int:
        return self.datum.rank

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def matrices(self) -> list[Matrix]:
        return [w.matrix for w in self.elements]

    @property
    def simple_reflections(self) -> list[WeylElement]:
        return [self.elements[self._index[self.datum.reflection_matrix(i - 1)]] for i in self.generators]

    @property
    def longest_element(self) -> WeylElement:
        return self.elements[self.longest]

    def element(self, matrix: Matrix) -> WeylElement:
        return self.elements[self._index[matrix]]

    def __contains__(self, matrix) -> bool:
        return matrix in self._index

    @cached_property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        """Positive roots of the sub-root system spanned by the generators."""
        gens = {i - 1 for i in self.generators}
        rd = self.datum
        return tuple(
            lam
            for lam, beta in zip(rd.positive_roots, rd.positive_roots_simple_coords)
            if all(b == 0 or i in gens for i, b in enumerate(beta))
        )

    def inversion_count(self, matrix: Matrix) -> int:
        pos = set(self.positive_roots)
        neg = {tuple(-a for a in lam) for lam in pos}
        count = 0
        for lam in pos:
            image = apply(matrix, lam)
            if image in neg:
                count += 1
            elif image not in pos:
                raise InternalError("group element does not preserve the root system")
        return count


def _bfs(rd: RootDatum, gens: tuple[int, ...]) -> WeylGroup:
    r = rd.rank
    reflections = [(i, rd.reflection_matrix(i - 1)) for i in gens]
    e = identity(r)
    words = {e: ()}
    order = [e]
    frontier = [e]
    while frontier:
        nxt = []
        for w in frontier:
            for i, s in reflections:
                ws = matmul(w, s)
                if ws not in words:
                    words[ws] = words[w] + (i,)
                    order.append(ws)
                    nxt.append(ws)
                    if len(order) > MAX_ELEMENTS:
                        raise InternalError(f"Weyl group of {rd.label} exceeds {MAX_ELEMENTS} elements")
        frontier = nxt
    proto = WeylGroup(rd, gens, (), 0, {})
    elements = []
    for m in order:
        length = len(words[m])
        inv = proto.inversion_count(m)
        if inv != length:
            raise InternalError(f"length mismatch for {words[m]}: BFS {length}, inversions {inv}")
        elements.append(WeylElement(m, length, words[m]))
    top = max(w.length for w in elements)
    longest = [k for k, w in enumerate(elements) if w.length == top]
    if len(longest) != 1:
        raise InternalError("longest element is not unique")
    index = {w.matrix: k for k, w in enumerate(elements)}
    return WeylGroup(rd, gens, tuple(elements), longest[0], index)


def enumerate_weyl(rd: RootDatum) -> WeylGroup:
    """Breadth-first closure of the simple reflections acting on the lattice."""
    return _bfs(rd, tuple(range(1, rd.num_simple + 1)))


def parabolic_subgroup(W: WeylGroup, L) -> WeylGroup:
    """Subgroup ``W_L`` generated by the simple reflections of the Levi subset."""
    L = LeviSubset.of(W.datum, L)
    if L.indices == W.generators:
        return W
    return _bfs(W.datum, L.indices)


def poincare_polynomial(W: WeylGroup) -> list[int]:
    """Ascending coefficients of ``sum_w t^{l(w)}``."""
    coeffs = [0] * (W.longest_element.length + 1)
    for w in W.elements:
        coeffs[w.length] += 1
    return coeffs


def format_poincare(W: WeylGroup) -> str:
    return upoly.format_tpoly(poincare_polynomial(W))
