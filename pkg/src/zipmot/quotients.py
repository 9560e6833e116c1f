"""Rational Chow rings and K₀ of quotients up to isogeny ``[G/_φ L]``.

The Chow ring is the ``W_L``-invariant part of ``S/J``, with ``J`` generated
in all of ``S`` by ``f - φf`` for the basic invariants ``f`` of ``W_G``; the
invariant part is the image of the Reynolds operator on the standard
monomials of ``S/J``.  K₀ is computed the same way in the presentation
``R(T) = Q[x_1..x_r, z]/(z·x_1⋯x_r - 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from . import invariants as inv
from . import linalg, oracles, upoly
from .errors import InternalError, PreconditionError, UnsupportedError
from .exact import GroupRingElem, MultiPoly, default_variables, groupring_substitute, iter_monomials, matrix_det
from .groebner import GroebnerBasis, GroebnerCache, buchberger, quotient_data
from .linalg import Echelon
from .rootdata import ADJOINT, GL, LeviSubset, RootDatum, determinant_character, fundamental_weights
from .tate import TateClass, hilbert_class
from .weyl import WeylGroup, apply, enumerate_weyl, parabolic_subgroup, poincare_polynomial

DEFAULT_CAP = 20
MAX_STRUCTURE_DIM = 64
REYNOLDS_CHECK_DEGREE = 8

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Check:
    """One consistency or oracle check: status is ``pass``, ``fail`` or ``unverified``."""

    name: str
    status: str
    detail: str = ""

    @classmethod
    def of(cls, name: str, ok: bool, detail: str = "") -> "Check":
        return cls(name, "pass" if ok else "fail", detail)

    @property
    def failed(self) -> bool:
        return self.status == "fail"


def _identity(r: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))


def _scalar(r: int, q: int) -> Matrix:
    return tuple(tuple(q * int(i == j) for j in range(r)) for i in range(r))


def _as_matrix(M) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in M)


@dataclass(frozen=True)
class IsogenyMap:
    """Integer matrix ``F`` acting on ``T̂`` (column vectors).

    ``kind`` is ``identity``, ``frobenius`` (``q·Id``), ``twisted``
    (``q·P`` for a lattice automorphism ``P`` permuting the roots) or
    ``custom``.
    """

    matrix: Matrix
    kind: str
    q: int | None = None
    twist: Matrix | None = None

    @classmethod
    def identity(cls, r: int) -> "IsogenyMap":
        return cls(_identity(r), "identity")

    @classmethod
    def frobenius(cls, r: int, q: int) -> "IsogenyMap":
        if q < 2:
            raise PreconditionError(f"Frobenius needs q >= 2, got {q}")
        return cls(_scalar(r, q), "frobenius", q)

    @classmethod
    def twisted(cls, P, q: int) -> "IsogenyMap":
        if q < 2:
            raise PreconditionError(f"Frobenius needs q >= 2, got {q}")
        P = _as_matrix(P)
        return cls(tuple(tuple(q * x for x in row) for row in P), "twisted", q, P)

    @classmethod
    def custom(cls, M) -> "IsogenyMap":
        return cls(_as_matrix(M), "custom")

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @property
    def scaling_factor(self) -> int | None:
        """``q`` when ``F = q·Id`` with ``q >= 2``, else ``None``."""
        r = self.rank
        q = self.matrix[0][0] if r else None
        if q is not None and q >= 2 and self.matrix == _scalar(r, q):
            return q
        return None

    def describe(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.q is not None:
            out["q"] = self.q
        if self.twist is not None:
            out["twist"] = [list(row) for row in self.twist]
        out["matrix"] = [list(row) for row in self.matrix]
        return out

    def __str__(self) -> str:
        if self.kind == "frobenius":
            return f"{self.q}*Id"
        if self.kind == "identity":
            return "Id"
        rows = ";".join(" ".join(str(x) for x in row) for row in self.matrix)
        return f"[{rows}]"


def _root_set(rd: RootDatum, positive) -> set[tuple[int, ...]]:
    pos = set(positive)
    return pos | {tuple(-a for a in v) for v in pos}


def validate_isogeny(rd: RootDatum, phi: IsogenyMap) -> None:
    """Shape, ``det F != 0``, ``F`` preserves the root span; twists permute the roots."""
    r = rd.rank
    F = phi.matrix
    if len(F) != r or any(len(row) != r for row in F):
        raise PreconditionError(f"isogeny matrix must be {r}x{r} for {rd.label}")
    if matrix_det(F) == 0:
        raise PreconditionError("isogeny matrix is singular")
    roots = [list(a) for a in rd.simple_roots]
    if roots:
        base = linalg.rank(roots)
        for a in rd.simple_roots:
            if linalg.rank(roots + [list(apply(F, a))]) != base:
                raise PreconditionError("isogeny does not preserve the span of the roots")
    if phi.twist is not None:
        P = phi.twist
        if abs(matrix_det(P)) != 1:
            raise PreconditionError("twist must be a lattice automorphism")
        allroots = _root_set(rd, rd.positive_roots)
        if {apply(P, a) for a in allroots} != allroots:
            raise PreconditionError("twist does not permute the root system")


@dataclass(frozen=True)
class ZipDatum:
    """Zip datum ``(G, P, Q, φ)`` with Levi subsets and a lattice map on ``T̂``."""

    datum: RootDatum
    p_levi: LeviSubset
    q_levi: LeviSubset
    lattice_map: Matrix

    @classmethod
    def make(cls, rd: RootDatum, p_levi, q_levi=None, lattice_map=None) -> "ZipDatum":
        P = LeviSubset.of(rd, p_levi)
        Q = P if q_levi is None else LeviSubset.of(rd, q_levi)
        M = _identity(rd.rank) if lattice_map is None else _as_matrix(lattice_map)
        z = cls(rd, P, Q, M)
        z.validate()
        return z

    def validate(self) -> None:
        rd = self.datum
        M = self.lattice_map
        if len(M) != rd.rank or any(len(row) != rd.rank for row in M):
            raise PreconditionError("lattice map has the wrong shape")
        if abs(matrix_det(M)) != 1:
            raise PreconditionError("lattice map must be invertible over Z")
        W = enumerate_weyl(rd)
        src = _root_set(rd, parabolic_subgroup(W, self.p_levi).positive_roots)
        dst = _root_set(rd, parabolic_subgroup(W, self.q_levi).positive_roots)
        if {apply(M, a) for a in src} != dst:
            raise PreconditionError("lattice map does not carry the P-Levi roots onto the Q-Levi roots")

    def isogeny(self, q: int) -> IsogenyMap:
        if self.lattice_map == _identity(self.datum.rank):
            return IsogenyMap.frobenius(self.datum.rank, q)
        return IsogenyMap.twisted(self.lattice_map, q)


@dataclass(frozen=True, eq=False)
class GradedQuotientResult:
    group: str
    levi: tuple[int, ...]
    isogeny: IsogenyMap | None
    graded_dims: tuple[int, ...]
    finite: bool
    total_dim: int | None
    hilbert_series: TateClass | None
    basis: tuple[tuple[MultiPoly, ...], ...]
    generators: tuple[MultiPoly, ...] = ()
    ideal_generators: tuple[MultiPoly, ...] = ()
    groebner_basis: tuple[MultiPoly, ...] = ()
    structure_constants: tuple[tuple[int, int, int, Fraction], ...] | None = None
    checks: tuple[Check, ...] = ()
    degree_cap: int = DEFAULT_CAP
    from_cache: bool = field(default=False, compare=False)

    def with_checks(self, *extra: Check) -> "GradedQuotientResult":
        return replace(self, checks=self.checks + tuple(extra))

    @property
    def ok(self) -> bool:
        return not any(c.failed for c in self.checks)


@dataclass(frozen=True, eq=False)
class K0Result:
    group: str
    levi: tuple[int, ...]
    isogeny: IsogenyMap
    finite: bool
    dimension: int | None
    ambient_dimension: int | None
    basis: tuple[GroupRingElem, ...]
    ideal_generators: tuple[GroupRingElem, ...]
    groebner_basis: tuple[MultiPoly, ...]
    checks: tuple[Check, ...] = ()
    from_cache: bool = field(default=False, compare=False)

    @property
    def ok(self) -> bool:
        return not any(c.failed for c in self.checks)


# -- Chow rings -----------------------------------------------------------------


def _groups(rd: RootDatum, L) -> tuple[WeylGroup, WeylGroup, LeviSubset]:
    W = enumerate_weyl(rd)
    L = LeviSubset.of(rd, L)
    return W, parabolic_subgroup(W, L), L


def _invariant_ring(rd: RootDatum, WL: WeylGroup, L: LeviSubset, phi, cap: int) -> GradedQuotientResult:
    """``S^{W_L}`` itself (zero ideal): Hilbert series from the basic invariants."""
    fi = inv.fundamental_invariants(WL)
    molien = inv.molien_series(WL, min(cap, inv.MAX_MOLIEN_DEGREE))
    free = inv.free_algebra_series(fi.degrees, len(molien) - 1)
    k = min(cap, REYNOLDS_CHECK_DEGREE)
    checks = [
        Check.of("molien-equals-free-series", molien == free, f"degrees {list(fi.degrees)} up to t^{len(molien) - 1}"),
        Check.of("reynolds-rank-equals-molien", inv.reynolds_rank_table(WL, k) == molien[: k + 1], f"up to t^{k}"),
        Check.of("product-of-degrees", _prod(fi.degrees) == WL.order, f"|W_L| = {WL.order}"),
        Check.of("degree-zero-is-one", molien[0] == 1),
    ]
    return GradedQuotientResult(
        group=rd.label,
        levi=L.indices,
        isogeny=phi,
        graded_dims=tuple(molien),
        finite=False,
        total_dim=None,
        hilbert_series=hilbert_class(fi.degrees),
        basis=(),
        generators=fi.generators,
        checks=tuple(checks),
        degree_cap=cap,
    )


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def chow_BG(rd: RootDatum, cap: int = DEFAULT_CAP) -> GradedQuotientResult:
    """``A^•(BG)_Q = S^W`` with Hilbert series ``Π 1/(1 - t^{d_i})``."""
    W, WG, L = _groups(rd, LeviSubset.full(rd))
    return _invariant_ring(rd, WG, L, None, cap)


def _reynolds_on_quotient(WL: WeylGroup, B: GroebnerBasis, layers, variables):
    """Per-degree dimensions and reduced bases of ``(S/J)^{W_L}``."""
    r = WL.rank
    D = len(layers) - 1
    dims, bases = [], []
    table = inv._sym_sums(WL, max(D, 0), frame=False) if WL.order > 1 else None
    for d, mons in enumerate(layers):
        ech = Echelon()
        if table is None:
            for m in mons:
                ech.add({inv._row_key(m): 1})
        else:
            exps = list(iter_monomials(r, d))
            pos = {e: i for i, e in enumerate(exps)}
            for m in mons:
                row = table.row(d, pos[m])
                img = B.normal_form(MultiPoly(variables, {exps[j]: v for j, v in row.items()}))
                ech.add(inv.poly_row(img))
        reps = tuple(inv.key_poly(row, variables) for _, row in ech.reduced_rows())
        dims.append(len(reps))
        bases.append(reps)
    while dims and dims[-1] == 0 and len(dims) > 1:
        dims.pop()
        bases.pop()
    return dims, bases


def _structure_constants(B: GroebnerBasis, bases, variables):
    reps = [p for layer in bases for p in layer]
    # pivot = grevlex-smallest monomial of each reduced representative
    pivots = [min(p.terms, key=_grev) for p in reps]
    out = []
    for i, a in enumerate(reps):
        for j in range(i, len(reps)):
            prod_nf = B.normal_form(a * reps[j])
            acc = MultiPoly.zero(variables)
            for k, piv in enumerate(pivots):
                c = prod_nf.coefficient(piv)
                if c:
                    out.append((i, j, k, c))
                    acc = acc + reps[k].scale(c)
            if acc != prod_nf:
                raise InternalError("product of invariants left the invariant span")
    return tuple(out)


def _grev(e):
    return (sum(e), tuple(-a for a in reversed(e)))


def chow_isogeny_quotient(
    rd: RootDatum,
    L,
    phi: IsogenyMap,
    cap: int = DEFAULT_CAP,
    cache: GroebnerCache | None = None,
) -> GradedQuotientResult:
    """``A^•([G/_φL])_Q = S^{W_L}/(f - φf : f ∈ S_+^{W_G})``."""
    W, WL, L = _groups(rd, L)
    validate_isogeny(rd, phi)
    r = rd.rank
    variables = default_variables(r)
    fi = inv.fundamental_invariants(W)
    images = [f.substitute_linear(phi.matrix) for f in fi.generators]
    bad = [i + 1 for i, g in enumerate(images) if not inv.is_invariant(g, WL)]
    if bad:
        raise PreconditionError(f"isogeny is incompatible with L: phi(f_{bad[0]}) is not W_L-invariant")
    compat = Check("isogeny-compatibility", "pass", "phi(f_i) is W_L-invariant for every basic invariant")
    ideal = tuple((f - g).monic() for f, g in zip(fi.generators, images) if f != g)
    if not ideal:
        res = _invariant_ring(rd, WL, L, phi, cap)
        return res.with_checks(compat, Check("zero-ideal", "pass", "phi fixes every basic invariant"))
    B = buchberger(ideal, variables, cache)
    Q = quotient_data(B, cap)
    dims, bases = _reynolds_on_quotient(WL, B, Q.standard_monomials, variables)
    total = sum(dims) if Q.finite else None
    checks = [
        compat,
        Check.of("ideal-membership", all(B.contains(g) for g in ideal), f"{len(ideal)} generators reduce to 0"),
        Check.of("s-polynomial-audit", B.s_polynomial_audit(), f"{len(B.basis)} basis elements"),
        Check.of("degree-zero-is-one", bool(dims) and dims[0] == 1),
    ]
    q = phi.scaling_factor
    if q is not None:
        expected = oracles.poincare_ratio(poincare_polynomial(W), poincare_polynomial(WL))
        checks.append(
            Check.of(
                "poincare-ratio-oracle",
                list(dims) == expected and total == W.order // WL.order,
                "graded dims = W_G(t)/W_L(t) = " + upoly.format_tpoly(expected),
            )
        )
    elif phi.kind == "twisted":
        checks.append(Check("closed-form-oracle", "unverified", "twisted Frobenius: unverified by closed-form oracle"))
    structure = None
    if Q.finite and total is not None and total <= MAX_STRUCTURE_DIM:
        structure = _structure_constants(B, bases, variables)
    return GradedQuotientResult(
        group=rd.label,
        levi=L.indices,
        isogeny=phi,
        graded_dims=tuple(dims),
        finite=Q.finite,
        total_dim=total,
        hilbert_series=TateClass(dims) if Q.finite else None,
        basis=tuple(bases),
        generators=fi.generators,
        ideal_generators=ideal,
        groebner_basis=B.basis,
        structure_constants=structure,
        checks=tuple(checks),
        degree_cap=cap,
        from_cache=B.from_cache,
    )


def chow_finite_lie_type(rd: RootDatum, q: int, cap: int = DEFAULT_CAP, cache=None) -> GradedQuotientResult:
    """``A^•(B G^F)_Q`` as ``[G/_φG]`` with ``φ`` the ``q``-Frobenius."""
    res = chow_isogeny_quotient(rd, LeviSubset.full(rd), IsogenyMap.frobenius(rd.rank, q), cap, cache)
    return res.with_checks(
        Check.of("finite-group-triviality", res.total_dim == 1 and tuple(res.graded_dims) == (1,), "Q in degree 0")
    )


def chow_gzip(z: ZipDatum, q: int, cap: int = DEFAULT_CAP, cache=None) -> GradedQuotientResult:
    """Stack of ``G``-zips: reduces to ``[G/_φL]`` for the P-Levi and ``φ = q·P``."""
    rd = z.datum
    phi = z.isogeny(q)
    res = chow_isogeny_quotient(rd, z.p_levi, phi, cap, cache)
    if phi.kind == "frobenius":
        W, WL, _ = _groups(rd, z.p_levi)
        res = res.with_checks(
            Check.of("zip-dimension", res.total_dim == W.order // WL.order, f"|W_G|/|W_L| = {W.order // WL.order}")
        )
    return res


# -- K₀ --------------------------------------------------------------------------


def _k0_variables(r: int) -> tuple[str, ...]:
    return default_variables(r) + ("z",)


def laurent_to_poly(e: GroupRingElem, variables) -> MultiPoly:
    """``x^λ -> x^{λ + k·1} z^k`` with ``k = max(0, -min λ)``."""
    terms: dict = {}
    for lam, c in e.terms.items():
        k = max(0, -min(lam)) if lam else 0
        exp = tuple(a + k for a in lam) + (k,)
        terms[exp] = terms.get(exp, 0) + c
    return MultiPoly(variables, terms)


def _monomial_weight(m) -> tuple[int, ...]:
    *a, b = m
    return tuple(x - b for x in a)


def k0_isogeny_quotient(rd: RootDatum, L, phi: IsogenyMap, cache: GroebnerCache | None = None) -> K0Result:
    """``K₀([G/_φL])_Q = R(T)^{W_L}/(f - φ̃f : f ∈ R(T)^{W_G})``."""
    if rd.lattice_kind == ADJOINT:
        raise UnsupportedError("K0 route needs a simply-connected or GL_n lattice, not adjoint")
    W, WL, L = _groups(rd, L)
    validate_isogeny(rd, phi)
    r = rd.rank
    F = phi.matrix
    chars = [inv.orbit_sum(w, W) for w in fundamental_weights(rd)]
    if rd.lattice_kind == GL:
        det = determinant_character(rd)
        chars += [GroupRingElem.character(det), GroupRingElem.character(tuple(-a for a in det))]
    images = [groupring_substitute(c, F) for c in chars]
    gens_WL = [s.matrix for s in WL.simple_reflections]
    if any(groupring_substitute(g, s) != g for g in images for s in gens_WL):
        raise PreconditionError("isogeny is incompatible with L: phi(chi) is not W_L-invariant")
    relations = tuple(c - g for c, g in zip(chars, images) if c != g)
    V = _k0_variables(r)
    unit = MultiPoly.monomial(V, (1,) * (r + 1)) - 1
    ideal = tuple(laurent_to_poly(e, V).monic() for e in relations) + (unit,)
    B = buchberger(ideal, V, cache)
    Q = quotient_data(B, degree_cap=0)
    checks = [
        Check("isogeny-compatibility", "pass", "phi(chi) is W_L-invariant for every generator"),
        Check.of("ideal-membership", all(B.contains(g) for g in ideal), f"{len(ideal)} generators reduce to 0"),
        Check.of("s-polynomial-audit", B.s_polynomial_audit(), f"{len(B.basis)} basis elements"),
    ]
    if not Q.finite:
        return K0Result(rd.label, L.indices, phi, False, None, None, (), relations, B.basis, tuple(checks), B.from_cache)
    mons = Q.monomial_list
    ech = Echelon()
    for m in mons:
        lam = _monomial_weight(m)
        orbit_sum = GroupRingElem(r, {})
        for w in WL.elements:
            orbit_sum = orbit_sum + GroupRingElem.character(apply(w.matrix, lam))
        img = B.normal_form(laurent_to_poly(orbit_sum, V))
        ech.add({Q.position[e]: c for e, c in img.terms.items()})
    basis = []
    for _, row in ech.reduced_rows():
        basis.append(GroupRingElem(r, {_monomial_weight(mons[j]): c for j, c in row.items()}))
    dim = len(basis)
    checks.append(Check.of("unit-is-nonzero", dim >= 1))
    q = phi.scaling_factor
    if rd.cartan_type == "A" and rd.rank == 1 and L.indices == (1,) and q is not None:
        expected = oracles.sl2_frobenius_k0_dimension(q)
        checks.append(Check.of("chebyshev-oracle", dim == expected, f"codim of (c - p_{q}(c)) = {expected}"))
    return K0Result(
        rd.label, L.indices, phi, True, dim, len(mons), tuple(basis), relations, B.basis, tuple(checks), B.from_cache
    )
