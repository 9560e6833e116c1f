"""K₀ classes of Tate motives as rational functions in the twist variable ``t``.

A class is ``t^offset · N(t) / Π_j (1 - t^{a_j})`` with ``N`` an integer
polynomial whose constant term is non-zero (the ``t``-valuation always lives
in ``offset``).  The twist ``⟨n⟩`` acts as multiplication by ``t^n``; odd
shifts have no representative and are rejected.
"""

from __future__ import annotations

import re
from collections import Counter
from functools import lru_cache

from . import upoly
from .errors import ParseError, PreconditionError
from .invariants import FundamentalInvariants
from .rootdata import RootDatum
from .weyl import enumerate_weyl, poincare_polynomial


@lru_cache(maxsize=None)
def _mobius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    return -result if m > 1 else result


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def _psi(n: int) -> tuple[int, ...]:
    """``Π_{d|n} (1 - t^d)^{μ(n/d)}``: the cyclotomic ``Φ_n`` normalised to constant term 1."""
    num, den = [1], [1]
    for d in _divisors(n):
        mu = _mobius(n // d)
        if mu == 1:
            num = upoly.mul(num, upoly.one_minus_t_pow(d))
        elif mu == -1:
            den = upoly.mul(den, upoly.one_minus_t_pow(d))
    q = upoly.exact_div(num, den)
    assert q is not None
    return tuple(q)


def _valuation(p) -> int:
    return next(i for i, c in enumerate(p) if c)


def _ratio(a: int, b: int) -> list[int]:
    """``(1 - t^a)/(1 - t^b)`` for ``b | a``."""
    return [1 if k % b == 0 else 0 for k in range(a - b + 1)]


class TateClass:
    """Immutable class ``t^offset · numerator / Π (1 - t^a)``."""

    __slots__ = ("numerator", "denominator", "offset")

    def __init__(self, numerator=(1,), denominator=(), offset: int = 0):
        num = upoly.trim([int(c) for c in numerator])
        dens = sorted(int(a) for a in denominator)
        if any(a < 1 for a in dens):
            raise PreconditionError("denominator factors need exponent >= 1")
        if not num:
            num, dens, offset = [], [], 0
        else:
            v = _valuation(num)
            num, offset = num[v:], offset + v
            num, dens = _cancel(num, dens)
        object.__setattr__(self, "numerator", tuple(num))
        object.__setattr__(self, "denominator", tuple(dens))
        object.__setattr__(self, "offset", int(offset))

    def __setattr__(self, name, value):
        raise AttributeError("TateClass is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "TateClass":
        return cls(())

    @classmethod
    def one(cls) -> "TateClass":
        return cls((1,))

    @classmethod
    def t_power(cls, n: int) -> "TateClass":
        return cls((1,), (), n)

    @classmethod
    def integer(cls, c: int) -> "TateClass":
        return cls((c,))

    @classmethod
    def motive(cls, twist: int, shift: int) -> "TateClass":
        """Class of ``1(twist)[shift]``; only ``shift = 2·twist`` is a Tate twist ``⟨twist⟩``."""
        if shift != 2 * twist:
            raise TypeError("only even shifts 1(n)[2n] are representable")
        return cls.t_power(twist)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.numerator

    def is_polynomial(self) -> bool:
        return not self.denominator

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "TateClass":
        if isinstance(other, TateClass):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return TateClass.integer(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        ca, cb = Counter(self.denominator), Counter(other.denominator)
        common = ca | cb
        na, nb = list(self.numerator), list(other.numerator)
        for a, k in common.items():
            for _ in range(k - ca[a]):
                na = upoly.mul(na, upoly.one_minus_t_pow(a))
            for _ in range(k - cb[a]):
                nb = upoly.mul(nb, upoly.one_minus_t_pow(a))
        base = min(self.offset, other.offset)
        na = upoly.shift(na, self.offset - base)
        nb = upoly.shift(nb, other.offset - base)
        return TateClass(upoly.add(na, nb), list(common.elements()), base)

    __radd__ = __add__

    def __neg__(self) -> "TateClass":
        return TateClass([-c for c in self.numerator], self.denominator, self.offset)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return TateClass(
            upoly.mul(self.numerator, other.numerator),
            self.denominator + other.denominator,
            self.offset + other.offset,
        )

    __rmul__ = __mul__

    def inverse(self) -> "TateClass":
        """Exact inverse; the numerator must be ``±`` a product of cyclotomic factors."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero class")
        rest = list(self.numerator)
        up: list[int] = []  # factors (1 - t^d) moved to the numerator
        down: list[int] = []
        n = 1
        bound = 2 * (len(rest) - 1) ** 2 + 2
        while len(rest) > 1 and n <= bound:
            q = upoly.exact_div(rest, _psi(n))
            if q is None:
                n += 1
                continue
            rest = q
            for d in _divisors(n):
                mu = _mobius(n // d)
                if mu == 1:
                    down.append(d)
                elif mu == -1:
                    up.append(d)
        if len(rest) != 1 or rest[0] not in (1, -1):
            raise PreconditionError("class is not invertible over Z[t, t^-1, 1/(1-t^a)]")
        num = [rest[0]]
        for a in list(self.denominator) + up:
            num = upoly.mul(num, upoly.one_minus_t_pow(a))
        return TateClass(num, down, -self.offset)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int) -> "TateClass":
        if n < 0:
            return self.inverse() ** (-n)
        out = TateClass.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self) -> int:
        return hash((self.offset, tuple(self.series(24))))

    # -- expansions --------------------------------------------------------

    def series(self, d: int) -> list[int]:
        """Coefficients of ``t^{offset}, ..., t^{offset+d}``."""
        out = list(self.numerator[: d + 1]) + [0] * max(0, d + 1 - len(self.numerator))
        for a in self.denominator:
            out = upoly.series_mul(out, upoly.series_inverse(upoly.one_minus_t_pow(a), d), d)
        return out

    def coefficients(self, d: int) -> list[int]:
        """Coefficients of ``t^0..t^d`` of the Laurent expansion (offset ``>= 0`` only)."""
        if self.offset < 0:
            raise PreconditionError("class has negative powers of t")
        s = self.series(d)
        return ([0] * self.offset + s)[: d + 1]

    # -- text --------------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        num = upoly.format_tpoly(self.numerator, spaced=False)
        multi = sum(1 for c in self.numerator if c) > 1
        dens = Counter(self.denominator)
        den_parts = []
        for a in sorted(dens):
            f = "(1-t)" if a == 1 else f"(1-t^{a})"
            den_parts.append(f if dens[a] == 1 else f"{f}^{dens[a]}")
        den = ""
        if den_parts:
            den = den_parts[0] if len(den_parts) == 1 else "(" + "*".join(den_parts) + ")"
        o = self.offset
        tp = "" if o == 0 else ("t" if o == 1 else f"t^{o}")
        if not tp:
            if not den:
                return num
            return f"({num})/{den}" if multi else f"{num}/{den}"
        body_num = f"({num})" if multi else num
        if num == "1":
            return f"{tp}/{den}" if den else tp
        if num == "-1":
            return f"-{tp}/{den}" if den else f"-{tp}"
        return f"{tp}*{body_num}/{den}" if den else f"{tp}*{body_num}"

    def __repr__(self) -> str:
        return f"TateClass({str(self)!r})"

    # -- parsing -----------------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "TateClass":
        return _Parser(text).parse()


def _cancel(num: list[int], dens: list[int]) -> tuple[list[int], list[int]]:
    """Cancel ``(1 - t^a)`` factors, or shrink them to ``(1 - t^b)``, ``b | a``."""
    dens = sorted(dens, reverse=True)
    changed = True
    while changed:
        changed = False
        for k, a in enumerate(dens):
            q = upoly.exact_div(num, upoly.one_minus_t_pow(a))
            if q is not None:
                num = q
                del dens[k]
                changed = True
                break
            for b in sorted((d for d in _divisors(a) if d < a), reverse=True):
                q = upoly.exact_div(num, _ratio(a, b))
                if q is not None:
                    num = q
                    dens[k] = b
                    changed = True
                    break
            if changed:
                break
        dens.sort(reverse=True)
    return num, sorted(dens)


# -- expression grammar -------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(t)|(\^)|([-+*/()]))")


class _Parser:
    """``expr := term (('+'|'-') term)*``, ``term := factor (('*'|'/') factor)*``,
    ``factor := '-' factor | atom ('^' '-'? INT)?``, ``atom := INT | 't' | '(' expr ')'``."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        stripped = text.rstrip()
        while pos < len(stripped):
            m = _TOKEN.match(stripped, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character at {pos} in {text!r}")
            self.tokens.append(m.group(m.lastindex))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'a token'} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> TateClass:
        if not self.tokens:
            raise ParseError("empty class expression")
        out = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing input {self.peek()!r} in {self.text!r}")
        return out

    def expr(self) -> TateClass:
        acc = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> TateClass:
        acc = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            if op == "*":
                acc = acc * rhs
            else:
                try:
                    acc = acc / rhs
                except ZeroDivisionError as exc:
                    raise ParseError("division by zero") from exc
                except PreconditionError as exc:
                    raise ParseError(str(exc)) from exc
        return acc

    def factor(self) -> TateClass:
        if self.peek() == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        if self.peek() == "^":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            tok = self.take()
            if not tok.isdigit():
                raise ParseError(f"exponent must be an integer in {self.text!r}")
            n = -int(tok) if neg else int(tok)
            try:
                return base**n
            except (ZeroDivisionError, PreconditionError) as exc:
                raise ParseError(str(exc)) from exc
        return base

    def atom(self) -> TateClass:
        tok = self.take()
        if tok.isdigit():
            return TateClass.integer(int(tok))
        if tok == "t":
            return TateClass.t_power(1)
        if tok == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise ParseError(f"unexpected {tok!r} in {self.text!r}")


# -- operations ---------------------------------------------------------------


def flag_class(rd: RootDatum) -> TateClass:
    """``Σ_w t^{l(w)}`` with offset ``-#Φ⁺`` (Bruhat cells of ``G/B``)."""
    W = enumerate_weyl(rd)
    return TateClass(poincare_polynomial(W), (), -rd.num_positive_roots)


def flag_numerator(rd: RootDatum) -> list[int]:
    """Numerator of :func:`flag_class` without the offset normalisation."""
    return poincare_polynomial(enumerate_weyl(rd))


def classifying_gm_class() -> TateClass:
    """``Σ_{i>=0} t^i = 1/(1-t)``."""
    return TateClass((1,), (1,))


def classifying_torus_class(r: int) -> TateClass:
    if r < 0:
        raise PreconditionError("rank must be non-negative")
    return TateClass((1,), (1,) * r)


def gysin_open_class(total: TateClass, closed: TateClass, codim: int) -> TateClass:
    """Class of the open complement: ``total - closed·t^c``."""
    if codim < 1:
        raise PreconditionError("codimension must be >= 1")
    return total - closed * TateClass.t_power(codim)


def torsor_descend(base: TateClass, rank: int) -> TateClass:
    """Total space of a split rank-``r`` torus torsor: ``base·(1-t)^r``."""
    if rank < 0:
        raise PreconditionError("rank must be non-negative")
    return base * TateClass(_one_minus_t_power(rank))


def _one_minus_t_power(r: int) -> list[int]:
    out = [1]
    for _ in range(r):
        out = upoly.mul(out, [1, -1])
    return out


def finite_invariants_class(base: TateClass, degrees) -> TateClass:
    """``Π 1/(1 - t^{d_i})`` as the invariant part of ``base = 1/(1-t)^r``.

    ``degrees`` may be a list or a :class:`FundamentalInvariants`; the base
    class must be that of a split torus of rank ``len(degrees)``.
    """
    if isinstance(degrees, FundamentalInvariants):
        degrees = degrees.degrees
    degrees = [int(d) for d in degrees]
    if any(d < 1 for d in degrees):
        raise PreconditionError("degrees must be positive")
    if base != classifying_torus_class(len(degrees)):
        raise PreconditionError(f"base class {base} is not 1/(1-t)^{len(degrees)}: rank and degree count differ")
    return TateClass((1,), degrees)


def hilbert_class(degrees) -> TateClass:
    return TateClass((1,), [int(d) for d in degrees])
