"""Buchberger's algorithm over Q in grevlex order, normal forms and quotient data."""

from __future__ import annotations

import hashlib
import heapq
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm

from .errors import InternalError, StructureError
from .exact import Exponent, MultiPoly, divides, grevlex_key

ORDER = "grevlex"

Terms = dict[Exponent, int]


# -- integer-coefficient helpers (content stripped after every step) -------


def _lm(p: Terms) -> Exponent:
    return max(p, key=grevlex_key)


def _heap_key(e: Exponent) -> tuple:
    # smallest heap key = grevlex-largest monomial
    return (-sum(e), tuple(reversed(e)))


class _TermQueue:
    """Dict of terms plus a heap giving the grevlex-largest live monomial."""

    def __init__(self, terms):
        self.terms = dict(terms)
        self.heap = [(_heap_key(e), e) for e in self.terms]
        heapq.heapify(self.heap)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def add(self, e, v) -> None:
        nv = self.terms.get(e, 0) + v
        if nv:
            if e not in self.terms:
                heapq.heappush(self.heap, (_heap_key(e), e))
            self.terms[e] = nv
        else:
            self.terms.pop(e, None)

    def top(self) -> Exponent:
        while self.heap[0][1] not in self.terms:
            heapq.heappop(self.heap)
        return self.heap[0][1]


def _primitive(p: Terms) -> Terms:
    if not p:
        return p
    g = 0
    for v in p.values():
        g = gcd(g, v)
    if p[_lm(p)] < 0:
        g = -g
    return {e: v // g for e, v in p.items()}


def _from_poly(p: MultiPoly) -> Terms:
    den = 1
    for c in p.terms.values():
        den = lcm(den, c.denominator)
    return _primitive({e: int(c * den) for e, c in p.terms.items()})


def _sub_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def _lcm_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _reduce(p: Terms, basis: list[Terms], lms: list[Exponent]) -> Terms:
    """Full fraction-free reduction; the result is primitive."""
    work = _TermQueue(p)
    rem: list[tuple[Exponent, int]] = []
    scale = 1  # remainder terms are rescaled to the final multiplier at the end
    rem_scale: list[int] = []
    while work:
        m = work.top()
        c = work.terms[m]
        for g, gm in zip(basis, lms):
            if divides(gm, m):
                a = g[gm]
                q = _sub_exp(m, gm)
                f = gcd(a, c)
                sa, sc = a // f, c // f
                if sa != 1:
                    for e in work.terms:
                        work.terms[e] *= sa
                    scale *= sa
                for e, v in g.items():
                    work.add(tuple(x + y for x, y in zip(e, q)), -sc * v)
                break
        else:
            rem.append((m, work.terms.pop(m)))
            rem_scale.append(scale)
    # bring every remainder term to the final common scale
    out = {e: v * (scale // s) for (e, v), s in zip(rem, rem_scale)}
    return _primitive(out)


def _spoly(f: Terms, g: Terms) -> Terms:
    fm, gm = _lm(f), _lm(g)
    L = _lcm_exp(fm, gm)
    qf, qg = _sub_exp(L, fm), _sub_exp(L, gm)
    a, b = f[fm], g[gm]
    out: Terms = {}
    for e, v in f.items():
        e2 = tuple(x + y for x, y in zip(e, qf))
        out[e2] = out.get(e2, 0) + b * v
    for e, v in g.items():
        e2 = tuple(x + y for x, y in zip(e, qg))
        out[e2] = out.get(e2, 0) - a * v
    return _primitive({e: v for e, v in out.items() if v})


def _coprime(a: Exponent, b: Exponent) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


# -- the basis object -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GroebnerBasis:
    """Reduced Gröbner basis (monic, sorted by increasing leading monomial)."""

    variables: tuple[str, ...]
    generators: tuple[MultiPoly, ...]
    basis: tuple[MultiPoly, ...]
    order: str = ORDER
    from_cache: bool = field(default=False, compare=False)

    @cached_property
    def leading_monomials(self) -> tuple[Exponent, ...]:
        return tuple(g.leading_monomial() for g in self.basis)

    @property
    def is_unit_ideal(self) -> bool:
        return any(sum(m) == 0 for m in self.leading_monomials)

    def normal_form(self, p: MultiPoly) -> MultiPoly:
        return normal_form(p, self)

    def contains(self, p: MultiPoly) -> bool:
        return normal_form(p, self).is_zero()

    def s_polynomial_audit(self) -> bool:
        """Every S-polynomial of the basis reduces to zero."""
        ints = [_from_poly(g) for g in self.basis]
        lms = list(self.leading_monomials)
        for i in range(len(ints)):
            for j in range(i + 1, len(ints)):
                if _reduce(_spoly(ints[i], ints[j]), ints, lms):
                    return False
        return True

    def is_reduced(self) -> bool:
        lms = self.leading_monomials
        for i, g in enumerate(self.basis):
            if g.leading_coefficient() != 1:
                return False
            for e in g.terms:
                if any(divides(m, e) for k, m in enumerate(lms) if k != i):
                    return False
        return True


def normal_form(p: MultiPoly, B: GroebnerBasis) -> MultiPoly:
    """Remainder of ``p`` modulo ``B``; no term is divisible by a leading monomial."""
    if p.variables != B.variables:
        raise StructureError("polynomial and basis live in different rings")
    work = _TermQueue(p.terms)
    rem: dict[Exponent, Fraction] = {}
    lms = B.leading_monomials
    while work:
        m = work.top()
        c = work.terms.pop(m)
        for g, gm in zip(B.basis, lms):
            if divides(gm, m):
                q = _sub_exp(m, gm)
                for e, v in g.terms.items():
                    if e != gm:
                        work.add(tuple(x + y for x, y in zip(e, q)), -c * v)
                break
        else:
            rem[m] = c
    return MultiPoly(p.variables, rem)


def _to_monic(m: Exponent, g: dict, variables) -> MultiPoly:
    c = Fraction(g[m])
    return MultiPoly(variables, {e: Fraction(v) / c for e, v in g.items()})


def _reduced_basis(G: list[Terms], variables) -> list[MultiPoly]:
    """Minimal, then tail-reduced monic basis using exact rational normal forms."""
    lms = [_lm(g) for g in G]
    idx = sorted(range(len(G)), key=lambda i: grevlex_key(lms[i]))
    minimal: list[MultiPoly] = []
    for i in idx:
        if not any(divides(p.leading_monomial(), lms[i]) for p in minimal):
            minimal.append(_to_monic(lms[i], G[i], variables))
    out = []
    for i, g in enumerate(minimal):
        others = tuple(p for j, p in enumerate(minimal) if j != i)
        m = g.leading_monomial()
        tail = MultiPoly(variables, {e: c for e, c in g.terms.items() if e != m})
        tmp = GroebnerBasis(variables, (), others)
        out.append(MultiPoly.monomial(variables, m) + normal_form(tail, tmp))
    out.sort(key=lambda p: grevlex_key(p.leading_monomial()))
    return out


def buchberger(generators, variables=None, cache: "GroebnerCache | None" = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``generators`` (grevlex).

    Buchberger's coprime and chain criteria only skip pairs whose
    S-polynomials are known to reduce to zero.
    """
    gens = tuple(generators)
    if variables is None:
        if not gens:
            raise StructureError("need variables for an empty generator list")
        variables = gens[0].variables
    variables = tuple(variables)
    for g in gens:
        if g.variables != variables:
            raise StructureError("generators live in different rings")
    if cache is not None:
        hit = cache.load(variables, gens)
        if hit is not None:
            return GroebnerBasis(variables, gens, hit, ORDER, True)
    G: list[Terms] = []
    lms: list[Exponent] = []
    for g in gens:
        t = _reduce(_from_poly(g), G, lms) if not g.is_zero() else {}
        if t:
            G.append(t)
            lms.append(_lm(t))
    pairs = {(i, j) for j in range(len(G)) for i in range(j)}
    while pairs:
        i, j = min(pairs, key=lambda ij: (grevlex_key(_lcm_exp(lms[ij[0]], lms[ij[1]])), ij))
        pairs.discard((i, j))
        L = _lcm_exp(lms[i], lms[j])
        if _coprime(lms[i], lms[j]):
            continue
        if any(
            k not in (i, j)
            and divides(lms[k], L)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue
        h = _reduce(_spoly(G[i], G[j]), G, lms)
        if h:
            n = len(G)
            G.append(h)
            lms.append(_lm(h))
            pairs.update((k, n) for k in range(n))
            if sum(lms[-1]) == 0:
                break
    if any(sum(m) == 0 for m in lms):
        basis = [MultiPoly.one(variables)]
    else:
        basis = _reduced_basis(G, variables) if G else []
    B = GroebnerBasis(variables, gens, tuple(basis), ORDER)
    if cache is not None:
        cache.store(variables, gens, B.basis)
    return B


# -- quotient rings -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class QuotientRingData:
    """Standard-monomial data of ``Q[x]/I``.

    ``standard_monomials[d]`` lists the degree-``d`` monomials outside the
    leading-term ideal, in increasing grevlex order.  When ``finite`` is
    false only degrees up to ``degree_cap`` were enumerated.
    """

    basis: GroebnerBasis
    standard_monomials: tuple[tuple[Exponent, ...], ...]
    finite: bool
    degree_cap: int

    @property
    def graded_dims(self) -> list[int]:
        return [len(s) for s in self.standard_monomials]

    @property
    def total_dim(self) -> int | None:
        return sum(self.graded_dims) if self.finite else None

    @cached_property
    def monomial_list(self) -> tuple[Exponent, ...]:
        return tuple(m for deg in self.standard_monomials for m in deg)

    @cached_property
    def position(self) -> dict[Exponent, int]:
        return {m: i for i, m in enumerate(self.monomial_list)}

    def coordinates(self, p: MultiPoly) -> dict[int, Fraction]:
        """Coordinates of the normal form of ``p`` on the standard monomials."""
        nf = normal_form(p, self.basis)
        pos = self.position
        out = {}
        for e, c in nf.terms.items():
            if e not in pos:
                raise InternalError("normal form left the enumerated standard monomials")
            out[pos[e]] = c
        return out

    def structure_constants(self) -> list[list[dict[int, Fraction]]]:
        """``table[i][j]`` = coordinates of ``m_i · m_j``."""
        if not self.finite:
            raise StructureError("structure constants need a finite quotient")
        V = self.basis.variables
        mons = self.monomial_list
        return [
            [self.coordinates(MultiPoly.monomial(V, tuple(a + b for a, b in zip(mi, mj)))) for mj in mons]
            for mi in mons
        ]


def is_zero_dimensional(B: GroebnerBasis) -> bool:
    """Leading monomials contain a pure power of every variable."""
    n = len(B.variables)
    seen = set()
    for m in B.leading_monomials:
        nz = [i for i, a in enumerate(m) if a]
        if len(nz) == 1:
            seen.add(nz[0])
        elif not nz:
            return True
    return len(seen) == n


def quotient_data(B: GroebnerBasis, degree_cap: int = 20) -> QuotientRingData:
    """Standard monomials degree by degree.

    For zero-dimensional ideals the enumeration runs until a degree has no
    standard monomial (the full basis, independent of ``degree_cap``);
    otherwise it stops at ``degree_cap`` and the result is flagged infinite.
    """
    n = len(B.variables)
    lms = B.leading_monomials
    finite = is_zero_dimensional(B)
    if B.is_unit_ideal:
        return QuotientRingData(B, (), True, degree_cap)
    layers: list[tuple[Exponent, ...]] = [((0,) * n,)]
    d = 0
    while True:
        if not finite and d >= degree_cap:
            break
        nxt = set()
        for m in layers[-1]:
            for i in range(n):
                e = tuple(a + (k == i) for k, a in enumerate(m))
                if not any(divides(l, e) for l in lms):
                    nxt.add(e)
        if not nxt:
            break
        layers.append(tuple(sorted(nxt, key=grevlex_key)))
        d += 1
    return QuotientRingData(B, tuple(layers), finite, degree_cap)


# -- on-disk cache ----------------------------------------------------------


class GroebnerCache:
    """Reduced bases keyed by a content hash of (order, variables, generators)."""

    def __init__(self, directory: str):
        self.directory = directory

    @staticmethod
    def key(variables, gens) -> str:
        payload = json.dumps(
            {"order": ORDER, "variables": list(variables), "generators": [str(g) for g in gens]},
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode()).hexdigest()

    def _path(self, variables, gens) -> str:
        return os.path.join(self.directory, self.key(variables, gens) + ".json")

    def load(self, variables, gens):
        path = self._path(variables, gens)
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, ValueError):
            return None
        try:
            return tuple(MultiPoly.parse(s, variables) for s in data["basis"])
        except (KeyError, ValueError, TypeError):
            return None

    def store(self, variables, gens, basis) -> None:
        os.makedirs(self.directory, exist_ok=True)
        path = self._path(variables, gens)
        tmp = f"{path}.{os.getpid()}.tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump({"order": ORDER, "variables": list(variables), "basis": [str(g) for g in basis]}, fh)
        os.replace(tmp, path)
