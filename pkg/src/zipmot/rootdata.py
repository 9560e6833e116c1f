"""Split root data for the supported reductive groups.

A datum lives on the character lattice ``X = Z^r``: simple roots are vectors
of ``X`` and simple coroots are vectors of the dual lattice, both written in
the chosen basis, so the pairing is the ordinary dot product.  Three lattice
kinds are available:

``simply-connected``
    ``X`` is the weight lattice written in the basis of fundamental weights;
    the simple root ``α_i`` is row ``i`` of the Cartan matrix and the coroots
    form the dual standard basis.
``adjoint``
    ``X`` is the root lattice with the simple roots as basis.
``GL``
    ``GL_n`` on the standard lattice ``Z^n`` with ``α_i = e_i - e_{i+1}``.

Simple roots are numbered as in Bourbaki.  The Cartan matrix convention is
``C[i][j] = <α_i, α_j^∨>``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from . import linalg
from .errors import ParseError, UnsupportedError

SIMPLY_CONNECTED = "simply-connected"
ADJOINT = "adjoint"
GL = "GL"

# Largest rank per Cartan type; every entry keeps |W| <= 1152.
SUPPORTED_RANKS = {
    "A": range(1, 6),
    "B": range(2, 5),
    "C": range(2, 5),
    "D": range(4, 5),
    "G": range(2, 3),
    "F": range(4, 5),
}
MAX_GL = 6

_SPEC = re.compile(r"^(?:(?P<type>[A-Z])(?P<rank>\d+)(?P<kind>-sc|-ad)?|GL(?P<n>\d+))$")


def _e(m: int, i: int, c: Fraction = Fraction(1)) -> list[Fraction]:
    v = [Fraction(0)] * m
    v[i] = c
    return v


def euclidean_simple_roots(cartan_type: str, n: int) -> list[list[Fraction]]:
    """Bourbaki's realisation of the simple roots in a Euclidean ambient space."""
    half = Fraction(1, 2)
    if cartan_type == "A":
        m = n + 1
        return [[a - b for a, b in zip(_e(m, i), _e(m, i + 1))] for i in range(n)]
    if cartan_type in "BCD":
        roots = [[a - b for a, b in zip(_e(n, i), _e(n, i + 1))] for i in range(n - 1)]
        if cartan_type == "B":
            roots.append(_e(n, n - 1))
        elif cartan_type == "C":
            roots.append(_e(n, n - 1, Fraction(2)))
        else:
            roots.append([a + b for a, b in zip(_e(n, n - 2), _e(n, n - 1))])
        return roots
    if cartan_type == "G":
        return [
            [Fraction(1), Fraction(-1), Fraction(0)],
            [Fraction(-2), Fraction(1), Fraction(1)],
        ]
    if cartan_type == "F":
        return [
            [Fraction(0), Fraction(1), Fraction(-1), Fraction(0)],
            [Fraction(0), Fraction(0), Fraction(1), Fraction(-1)],
            [Fraction(0), Fraction(0), Fraction(0), Fraction(1)],
            [half, -half, -half, -half],
        ]
    raise UnsupportedError(f"unknown Cartan type {cartan_type!r}")


def _dot(u, v) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def standard_cartan(cartan_type: str, n: int) -> tuple[tuple[int, ...], ...]:
    roots = euclidean_simple_roots(cartan_type, n)
    C = []
    for ai in roots:
        row = []
        for aj in roots:
            val = 2 * _dot(ai, aj) / _dot(aj, aj)
            assert val.denominator == 1
            row.append(int(val))
        C.append(tuple(row))
    return tuple(C)


@dataclass(frozen=True)
class RootDatum:
    label: str
    cartan_type: str  # "A".."G" or "GL"
    rank: int
    simple_roots: tuple[tuple[int, ...], ...]
    simple_coroots: tuple[tuple[int, ...], ...]
    lattice_kind: str
    # Euclidean images of the lattice basis vectors (None for GL, whose
    # lattice is its own ambient space).  Used to pick sparse coordinates.
    ambient_basis: tuple[tuple[Fraction, ...], ...] | None = field(default=None, compare=False, repr=False)

    @property
    def num_simple(self) -> int:
        return len(self.simple_roots)

    def pairing(self, lam, j: int) -> int:
        """``<λ, α_j^∨>`` for a lattice vector ``λ`` and 0-based coroot index."""
        return sum(a * b for a, b in zip(lam, self.simple_coroots[j]))

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        return cartan_matrix(self)

    def reflection_matrix(self, i: int) -> tuple[tuple[int, ...], ...]:
        """Matrix of ``s_i: λ -> λ - <λ, α_i^∨> α_i`` on lattice column vectors."""
        a, c = self.simple_roots[i], self.simple_coroots[i]
        r = self.rank
        return tuple(tuple(int(p == q) - a[p] * c[q] for q in range(r)) for p in range(r))

    @cached_property
    def positive_roots_simple_coords(self) -> tuple[tuple[int, ...], ...]:
        """Positive roots as non-negative combinations of simple roots."""
        k = self.num_simple
        C = self.cartan
        simple = [tuple(int(i == j) for j in range(k)) for i in range(k)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for beta in frontier:
                for j in range(k):
                    p = sum(beta[i] * C[i][j] for i in range(k))
                    gamma = tuple(b - p * int(i == j) for i, b in enumerate(beta))
                    if all(g >= 0 for g in gamma) and any(gamma) and gamma not in seen:
                        seen.add(gamma)
                        nxt.append(gamma)
            frontier = nxt
        return tuple(sorted(seen, key=lambda b: (sum(b), tuple(-x for x in b))))

    @cached_property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        """Positive roots as lattice vectors."""
        out = []
        for beta in self.positive_roots_simple_coords:
            out.append(
                tuple(sum(b * self.simple_roots[i][p] for i, b in enumerate(beta)) for p in range(self.rank))
            )
        return tuple(out)

    @property
    def num_positive_roots(self) -> int:
        return len(self.positive_roots_simple_coords)

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class LeviSubset:
    """Subset of simple-root indices (1-based); empty = torus, full = G."""

    indices: tuple[int, ...] = ()

    @classmethod
    def of(cls, rd: RootDatum, indices) -> "LeviSubset":
        if isinstance(indices, LeviSubset):
            indices = indices.indices
        if isinstance(indices, str):
            indices = parse_levi(indices)
        idx = tuple(sorted(set(int(i) for i in indices)))
        bad = [i for i in idx if not 1 <= i <= rd.num_simple]
        if bad:
            raise ParseError(f"Levi index out of range for {rd.label}: {bad}")
        return cls(idx)

    @classmethod
    def full(cls, rd: RootDatum) -> "LeviSubset":
        return cls(tuple(range(1, rd.num_simple + 1)))

    def zero_based(self) -> tuple[int, ...]:
        return tuple(i - 1 for i in self.indices)

    def __str__(self) -> str:
        return ",".join(str(i) for i in self.indices)


def parse_levi(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise ParseError(f"malformed Levi subset {text!r}") from None


def parse_group_spec(spec: str) -> tuple[str, int, str]:
    """Split a spec into (Cartan type, rank, lattice kind) without building it."""
    m = _SPEC.match(spec.strip())
    if not m:
        raise ParseError(f"unknown group spec {spec!r}")
    if m.group("n"):
        n = int(m.group("n"))
        if not 1 <= n <= MAX_GL:
            raise UnsupportedError(f"GL{n}: n must be between 1 and {MAX_GL}")
        return "GL", n, GL
    t, n = m.group("type"), int(m.group("rank"))
    if t == "E":
        raise UnsupportedError("E-types are not supported")
    if t not in SUPPORTED_RANKS:
        raise ParseError(f"unknown group spec {spec!r}")
    if n not in SUPPORTED_RANKS[t]:
        lo, hi = SUPPORTED_RANKS[t].start, SUPPORTED_RANKS[t].stop - 1
        raise UnsupportedError(f"type {t}{n} unsupported: rank must be in {lo}..{hi}")
    kind = ADJOINT if m.group("kind") == "-ad" else SIMPLY_CONNECTED
    return t, n, kind


def build_root_datum(spec: str) -> RootDatum:
    """Construct the datum for ``spec`` (``"A2-sc"``, ``"B3-ad"``, ``"G2"``, ``"GL4"`` ...).

    Classical types default to the simply-connected lattice.
    """
    t, n, kind = parse_group_spec(spec)
    if kind == GL:
        roots = tuple(tuple(int(k == i) - int(k == i + 1) for k in range(n)) for i in range(n - 1))
        return RootDatum(f"GL{n}", "GL", n, roots, roots, GL)

    C = standard_cartan(t, n)
    eu = euclidean_simple_roots(t, n)
    if kind == SIMPLY_CONNECTED:
        roots = tuple(tuple(row) for row in C)
        coroots = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        Cinv = linalg.inverse(C)
        ambient = tuple(
            tuple(sum(Cinv[i][k] * eu[k][p] for k in range(n)) for p in range(len(eu[0])))
            for i in range(n)
        )
    else:
        roots = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        coroots = tuple(tuple(C[i][j] for i in range(n)) for j in range(n))
        ambient = tuple(tuple(v) for v in eu)
    suffix = "" if t in "GF" and kind == SIMPLY_CONNECTED else ("-sc" if kind == SIMPLY_CONNECTED else "-ad")
    return RootDatum(f"{t}{n}{suffix}", t, n, roots, coroots, kind, ambient)


def cartan_matrix(rd: RootDatum) -> tuple[tuple[int, ...], ...]:
    """``C[i][j] = <α_i, α_j^∨>``."""
    return tuple(
        tuple(sum(a * b for a, b in zip(ai, cj)) for cj in rd.simple_coroots) for ai in rd.simple_roots
    )


def fundamental_weights(rd: RootDatum) -> tuple[tuple[int, ...], ...]:
    """Lattice vectors ``ω_i`` with ``<ω_i, α_j^∨> = δ_ij``.

    For ``GL_n`` these are ``e_1 + ... + e_i`` (``i < n``); the determinant
    character is available separately via :func:`determinant_character`.
    """
    if rd.lattice_kind == SIMPLY_CONNECTED:
        return tuple(tuple(int(i == j) for j in range(rd.rank)) for i in range(rd.rank))
    if rd.lattice_kind == GL:
        n = rd.rank
        return tuple(tuple(int(k <= i) for k in range(n)) for i in range(n - 1))
    raise UnsupportedError(f"{rd.label}: fundamental weights are not lattice vectors for the adjoint lattice")


def determinant_character(rd: RootDatum) -> tuple[int, ...]:
    if rd.lattice_kind != GL:
        raise UnsupportedError("determinant character only exists for GL_n")
    return (1,) * rd.rank


def sparse_frame(rd: RootDatum):
    """Lattice coordinates of a Q-basis in which W acts by near-monomial matrices.

    Returns ``None`` when the lattice basis is already such a frame (GL_n) or
    no sparse frame is known (G2, F4).  Type A uses the images of the standard
    vectors ``ε_1..ε_n`` of the ambient space projected to the root span;
    types B, C, D use the Euclidean basis, on which W acts by signed
    permutations.
    """
    if rd.lattice_kind == GL or rd.cartan_type in "GF":
        return None
    n = rd.rank
    amb = rd.ambient_basis
    m = len(amb[0])
    if rd.cartan_type == "A":
        mean = Fraction(1, m)
        targets = [[Fraction(int(p == j)) - mean for p in range(m)] for j in range(n)]
    else:
        targets = [[Fraction(int(p == j)) for p in range(m)] for j in range(n)]
    A = [[amb[i][p] for i in range(n)] for p in range(m)]  # ambient <- lattice coords
    cols = [linalg.solve(A, t) for t in targets]
    return [[cols[j][i] for j in range(n)] for i in range(n)]
