"""Exact arithmetic kernel: rationals, multivariate polynomials, group rings.

Scalars are :class:`fractions.Fraction` throughout; nothing here ever rounds.
Two ambient rings are modelled:

* :class:`MultiPoly` -- the symmetric algebra ``S = Sym(X ⊗ Q)`` of a
  character lattice ``X = Z^r``, one variable per lattice basis vector.
* :class:`GroupRingElem` -- the group ring ``Q[X]`` (Laurent polynomials),
  i.e. the rational representation ring of a split torus.

Matrices act on column vectors of lattice coordinates.  Substituting a
matrix ``M`` into a polynomial replaces ``x_j`` by the linear form encoded in
column ``j`` of ``M``; this is the covariant action of ``GL(X)`` on
``Sym(X)`` and composes as ``p.substitute_linear(M @ N) ==
p.substitute_linear(N).substitute_linear(M)``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import ParseError, PreconditionError, StructureError

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]
IntMatrix = Sequence[Sequence[int]]


def as_scalar(value: Scalar | str) -> Fraction:
    """Coerce ``value`` to an exact rational (strings like ``"-3/4"`` accepted)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not re.fullmatch(r"\s*-?\d+(\s*/\s*\d+)?\s*", value):
            raise ParseError(f"not an exact rational: {value!r}")
        return Fraction(value.replace(" ", ""))
    raise TypeError(f"not an exact scalar: {value!r}")


def format_scalar(c: Fraction) -> str:
    """Canonical rendering: ``"7"``, ``"-3/2"``."""
    return str(c)


def grevlex_key(e: Exponent) -> tuple:
    """Sort key for graded reverse lexicographic order (larger key = larger monomial)."""
    return (sum(e), tuple(-a for a in reversed(e)))


def default_variables(r: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(1, r + 1))


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def divides(a: Exponent, b: Exponent) -> bool:
    """True when monomial ``x^a`` divides ``x^b``."""
    return all(x <= y for x, y in zip(a, b))


class MultiPoly:
    """Polynomial over Q in an ordered tuple of named variables.

    Instances are treated as immutable; every operation returns a new object.
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(
        self,
        variables: Sequence[str],
        terms: Mapping[Exponent, Scalar] | None = None,
    ):
        self.variables = tuple(variables)
        r = len(self.variables)
        clean: dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(a) for a in e)
            if len(e) != r or any(a < 0 for a in e):
                raise StructureError(f"bad exponent {e} for {r} variables")
            c = as_scalar(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, variables: tuple[str, ...], terms: dict[Exponent, Fraction]) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.variables = variables
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MultiPoly":
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, variables: Sequence[str], c: Scalar) -> "MultiPoly":
        variables = tuple(variables)
        c = as_scalar(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def one(cls, variables: Sequence[str]) -> "MultiPoly":
        return cls.constant(variables, 1)

    @classmethod
    def var(cls, variables: Sequence[str], i: int) -> "MultiPoly":
        variables = tuple(variables)
        e = [0] * len(variables)
        e[i] = 1
        return cls._raw(variables, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, variables: Sequence[str], e: Exponent, c: Scalar = 1) -> "MultiPoly":
        return cls(variables, {tuple(e): c})

    @classmethod
    def linear_form(cls, variables: Sequence[str], coeffs: Sequence[Scalar]) -> "MultiPoly":
        variables = tuple(variables)
        r = len(variables)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * r
            e[i] = 1
            terms[tuple(e)] = c
        return cls(variables, terms)

    # -- basic queries ------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in decreasing grevlex order."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def leading_monomial(self) -> Exponent:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=grevlex_key)

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    def coefficient(self, e: Exponent) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.nvars)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "MultiPoly") -> None:
        if self.variables != other.variables:
            raise StructureError(
                f"variable sets differ: {self.variables} vs {other.variables}"
            )

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return MultiPoly.constant(self.variables, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MultiPoly._raw(self.variables, terms)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "MultiPoly":
        c = as_scalar(c)
        if not c:
            return MultiPoly.zero(self.variables)
        return MultiPoly._raw(self.variables, {e: v * c for e, v in self.terms.items()})

    def mul_monomial(self, m: Exponent, c: Scalar = 1) -> "MultiPoly":
        c = as_scalar(c)
        if not c:
            return MultiPoly.zero(self.variables)
        return MultiPoly._raw(
            self.variables, {_add_exp(e, m): v * c for e, v in self.terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.variables, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.one(self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.terms == MultiPoly.constant(self.variables, other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    # -- graded structure ---------------------------------------------------

    def homogeneous_component(self, d: int) -> "MultiPoly":
        if d < 0:
            raise ValueError("degree must be non-negative")
        return MultiPoly._raw(
            self.variables, {e: c for e, c in self.terms.items() if sum(e) == d}
        )

    def components(self) -> dict[int, "MultiPoly"]:
        """All non-zero homogeneous components keyed by degree."""
        out: dict[int, dict[Exponent, Fraction]] = {}
        for e, c in self.terms.items():
            out.setdefault(sum(e), {})[e] = c
        return {d: MultiPoly._raw(self.variables, t) for d, t in sorted(out.items())}

    # -- substitutions ------------------------------------------------------

    def substitute_linear(self, M: IntMatrix) -> "MultiPoly":
        """Replace ``x_j`` by ``sum_i M[i][j] x_i`` (column ``j`` of ``M``)."""
        r = self.nvars
        if len(M) != r or any(len(row) != r for row in M):
            raise StructureError(f"matrix shape does not match rank {r}")
        forms = [
            MultiPoly.linear_form(self.variables, [M[i][j] for i in range(r)])
            for j in range(r)
        ]
        powers: list[list[MultiPoly]] = [[MultiPoly.one(self.variables)] for _ in range(r)]

        def power(j: int, k: int) -> MultiPoly:
            cache = powers[j]
            while len(cache) <= k:
                cache.append(cache[-1] * forms[j])
            return cache[k]

        result: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            term = MultiPoly.constant(self.variables, c)
            for j, a in enumerate(e):
                if a:
                    term = term * power(j, a)
            for e2, c2 in term.terms.items():
                result[e2] = result.get(e2, 0) + c2
        return MultiPoly._raw(self.variables, {e: c for e, c in result.items() if c})

    # -- normalisation ------------------------------------------------------

    def monic(self) -> "MultiPoly":
        """Rescale so the grevlex-leading coefficient is 1."""
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coefficient())

    # -- text ---------------------------------------------------------------

    def _monomial_str(self, e: Exponent) -> str:
        parts = []
        for name, a in zip(self.variables, e):
            if a == 1:
                parts.append(name)
            elif a > 1:
                parts.append(f"{name}^{a}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for k, (e, c) in enumerate(self.sorted_terms()):
            mono = self._monomial_str(e)
            mag = abs(c)
            if not mono:
                body = format_scalar(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_scalar(mag)}*{mono}"
            if k == 0:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append((" - " if c < 0 else " + ") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r}, variables={self.variables})"

    @classmethod
    def parse(cls, text: str, variables: Sequence[str]) -> "MultiPoly":
        """Parse the canonical string form (and ordinary ``+ - * ^ ()`` algebra)."""
        variables = tuple(variables)
        table = {name: MultiPoly.var(variables, i) for i, name in enumerate(variables)}

        def atom(name: str) -> MultiPoly:
            if name not in table:
                raise ParseError(f"unknown variable {name!r}")
            return table[name]

        return _ExprParser(text, atom, lambda c: MultiPoly.constant(variables, c)).parse()


class GroupRingElem:
    """Element of ``Q[X]`` for ``X = Z^rank``, stored as lattice vector -> coefficient."""

    __slots__ = ("rank", "terms", "_hash")

    def __init__(self, rank: int, terms: Mapping[Sequence[int], Scalar] | None = None):
        self.rank = int(rank)
        clean: dict[Exponent, Fraction] = {}
        for lam, c in (terms or {}).items():
            lam = tuple(int(a) for a in lam)
            if len(lam) != self.rank:
                raise StructureError(f"lattice vector {lam} has wrong rank")
            c = as_scalar(c)
            if c:
                clean[lam] = clean.get(lam, Fraction(0)) + c
                if not clean[lam]:
                    del clean[lam]
        self.terms = clean
        self._hash = None

    @classmethod
    def one(cls, rank: int) -> "GroupRingElem":
        return cls(rank, {(0,) * rank: 1})

    @classmethod
    def character(cls, lam: Sequence[int], c: Scalar = 1) -> "GroupRingElem":
        return cls(len(lam), {tuple(lam): c})

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "GroupRingElem") -> None:
        if self.rank != other.rank:
            raise StructureError(f"ranks differ: {self.rank} vs {other.rank}")

    def _coerce(self, other):
        if isinstance(other, GroupRingElem):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return GroupRingElem.one(self.rank).scale(other)
        return NotImplemented

    def scale(self, c: Scalar) -> "GroupRingElem":
        c = as_scalar(c)
        return GroupRingElem(self.rank, {lam: v * c for lam, v in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for lam, c in other.terms.items():
            terms[lam] = terms.get(lam, 0) + c
        return GroupRingElem(self.rank, terms)

    __radd__ = __add__

    def __neg__(self) -> "GroupRingElem":
        return self.scale(-1)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        self._check(other)
        terms: dict[Exponent, Fraction] = {}
        for a, c1 in self.terms.items():
            for b, c2 in other.terms.items():
                lam = _add_exp(a, b)
                terms[lam] = terms.get(lam, 0) + c1 * c2
        return GroupRingElem(self.rank, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "GroupRingElem":
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials are invertible in the group ring")
            ((lam, c),) = self.terms.items()
            return GroupRingElem(self.rank, {tuple(-a * -n for a in lam): c ** n})
        result = GroupRingElem.one(self.rank)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, GroupRingElem):
            return self.rank == other.rank and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self == GroupRingElem.one(self.rank).scale(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rank, frozenset(self.terms.items())))
        return self._hash

    def substitute(self, F: IntMatrix) -> "GroupRingElem":
        """Apply ``x^λ -> x^{Fλ}`` to every term (see :func:`groupring_substitute`)."""
        return groupring_substitute(self, F)

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for k, (lam, c) in enumerate(self.sorted_terms()):
            mono = "x^(" + ",".join(str(a) for a in lam) + ")"
            mag = abs(c)
            body = mono if mag == 1 else f"{format_scalar(mag)}*{mono}"
            if k == 0:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append((" - " if c < 0 else " + ") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"GroupRingElem({str(self)!r})"

    @classmethod
    def parse(cls, text: str, rank: int) -> "GroupRingElem":
        def atom(name: str) -> GroupRingElem:
            m = re.fullmatch(r"x\^\((-?\d+(?:,-?\d+)*)\)", name)
            if not m:
                raise ParseError(f"bad group-ring monomial {name!r}")
            lam = tuple(int(a) for a in m.group(1).split(","))
            if len(lam) != rank:
                raise ParseError(f"monomial {name!r} does not have rank {rank}")
            return GroupRingElem.character(lam)

        return _ExprParser(text, atom, lambda c: GroupRingElem.one(rank).scale(c), groupring=True).parse()


def matrix_det(M: IntMatrix) -> Fraction:
    """Exact determinant by fraction-based Gaussian elimination."""
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        det *= A[col][col]
        for r in range(col + 1, n):
            f = A[r][col] / A[col][col]
            if f:
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return det


def mat_vec(F: IntMatrix, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(F[i][j] * v[j] for j in range(len(v))) for i in range(len(F)))


def groupring_substitute(e: GroupRingElem, F: IntMatrix) -> GroupRingElem:
    """Image of ``e`` under the ring endomorphism ``x^λ -> x^{Fλ}``."""
    if len(F) != e.rank or any(len(row) != e.rank for row in F):
        raise StructureError(f"matrix shape does not match rank {e.rank}")
    if matrix_det(F) == 0:
        raise PreconditionError("singular lattice map")
    out: dict[Exponent, Fraction] = {}
    for lam, c in e.terms.items():
        mu = mat_vec(F, lam)
        out[mu] = out.get(mu, 0) + c
    return GroupRingElem(e.rank, out)


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    """``op`` is ``"add"`` or ``"mul"``; variable sets must agree."""
    a._check(b)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def homogeneous_component(p: MultiPoly, d: int) -> MultiPoly:
    return p.homogeneous_component(d)


def substitute_linear(p: MultiPoly, M: IntMatrix) -> MultiPoly:
    return p.substitute_linear(M)


# -- expression parsing -------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<lat>x\^\(-?\d+(?:\s*,\s*-?\d+)*\))|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str) -> Iterator[tuple[str, str]]:
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        pos = m.end()
        kind = m.lastgroup
        value = m.group(kind)
        if kind == "lat":
            value = value.replace(" ", "")
        yield kind, value


class _ExprParser:
    """Recursive-descent parser for ``+ - * / ^ ( )`` over a ring.

    ``/`` is only allowed with a constant right operand; ``^`` takes a
    non-negative integer literal.
    """

    def __init__(self, text, atom, const, groupring: bool = False):
        self.tokens = list(_tokenize(text))
        self.i = 0
        self.atom = atom
        self.const = const
        self.groupring = groupring
        if not self.tokens:
            raise ParseError("empty expression")

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        value, _ = self.expr()
        if self.i != len(self.tokens):
            raise ParseError(f"trailing input near token {self.peek()[1]!r}")
        return value

    # each level returns (value, constant-or-None)
    def expr(self):
        kind, tok = self.peek()
        sign = 1
        if tok in ("+", "-"):
            self.take()
            sign = -1 if tok == "-" else 1
        value, const = self.term()
        value = value * sign
        const = None if const is None else const * sign
        while self.peek()[1] in ("+", "-"):
            _, op = self.take()
            rhs, rconst = self.term()
            value = value + rhs if op == "+" else value - rhs
            const = None if const is None or rconst is None else (const + rconst if op == "+" else const - rconst)
        return value, const

    def term(self):
        value, const = self.power()
        while self.peek()[1] in ("*", "/"):
            _, op = self.take()
            rhs, rconst = self.power()
            if op == "*":
                value = value * rhs
                const = None if const is None or rconst is None else const * rconst
            else:
                if rconst is None or rconst == 0:
                    raise ParseError("division only by non-zero constants")
                value = value * (1 / rconst)
                const = None if const is None else const / rconst
        return value, const

    def power(self):
        value, const = self.primary()
        if self.peek()[1] == "^":
            self.take()
            kind, tok = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer")
            n = int(tok)
            value = value ** n
            const = None if const is None else const ** n
        return value, const

    def primary(self):
        kind, tok = self.take()
        if kind == "num":
            c = Fraction(int(tok))
            return self.const(c), c
        if kind == "lat" and self.groupring:
            return self.atom(tok), None
        if kind == "name" and not self.groupring:
            return self.atom(tok), None
        if tok == "(":
            value = self.expr()
            if self.take()[1] != ")":
                raise ParseError("unbalanced parenthesis")
            return value
        raise ParseError(f"unexpected token {tok!r}")


def iter_monomials(r: int, d: int) -> Iterable[Exponent]:
    """All exponent vectors of total degree ``d`` in ``r`` variables, grevlex-increasing."""
    out: list[Exponent] = []

    def rec(i: int, remaining: int, prefix: list[int]) -> None:
        if i == r - 1:
            out.append(tuple(prefix + [remaining]))
            return
        for a in range(remaining + 1):
            rec(i + 1, remaining - a, prefix + [a])

    if r == 0:
        return [()] if d == 0 else []
    rec(0, d, [])
    out.sort(key=grevlex_key)
    return out
