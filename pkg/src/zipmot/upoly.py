"""Integer/rational univariate polynomials in ``t`` as ascending coefficient lists."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def trim(p: Sequence) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def add(p: Sequence, q: Sequence) -> list:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p: Sequence, q: Sequence) -> list:
    return add(p, [-c for c in q])


def mul(p: Sequence, q: Sequence) -> list:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def shift(p: Sequence, k: int) -> list:
    return trim([0] * k + list(p)) if p else []


def one_minus_t_pow(a: int) -> list[int]:
    """Coefficients of ``1 - t^a``."""
    out = [0] * (a + 1)
    out[0] = 1
    out[a] -= 1
    return out


def divmod_poly(p: Sequence, q: Sequence) -> tuple[list, list]:
    """Polynomial long division; ``q`` must have a unit leading coefficient."""
    p, q = trim(p), trim(q)
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    lead = q[-1]
    if lead not in (1, -1):
        raise ValueError("divisor must have leading coefficient +-1")
    rem = list(p)
    quot = [0] * max(len(p) - len(q) + 1, 0)
    for k in range(len(quot) - 1, -1, -1):
        c = rem[k + len(q) - 1] * lead  # lead is ±1, its own inverse
        quot[k] = c
        if c:
            for j, b in enumerate(q):
                rem[k + j] -= c * b
    return trim(quot), trim(rem)


def exact_div(p: Sequence, q: Sequence) -> list | None:
    """``p / q`` when it divides exactly, else ``None``."""
    quot, rem = divmod_poly(p, q)
    return quot if not rem else None


def series_inverse(p: Sequence, n: int) -> list:
    """First ``n + 1`` coefficients of ``1 / p`` as a power series (``p[0] = ±1``)."""
    if not p or p[0] not in (1, -1):
        raise ValueError("power-series inverse needs constant term +-1")
    c0 = p[0]
    out = [0] * (n + 1)
    for k in range(n + 1):
        s = 1 if k == 0 else 0
        for j in range(1, min(k, len(p) - 1) + 1):
            s -= p[j] * out[k - j]
        out[k] = s * c0
    return out


def series_mul(p: Sequence, q: Sequence, n: int) -> list:
    out = [0] * (n + 1)
    for i, a in enumerate(p[: n + 1]):
        if a:
            for j, b in enumerate(q[: n + 1 - i]):
                out[i + j] += a * b
    return out


def evaluate(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def is_palindromic(p: Sequence) -> bool:
    p = trim(p)
    return p == p[::-1]


def format_tpoly(p: Sequence, var: str = "t", spaced: bool = True) -> str:
    """Render ascending coefficients, e.g. ``1 + 2*t + t^2``."""
    p = trim(p)
    if not p:
        return "0"
    pieces = []
    for k, c in enumerate(p):
        if c == 0:
            continue
        c = Fraction(c)
        mag = abs(c)
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not pieces:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            sep = (" - " if c < 0 else " + ") if spaced else ("-" if c < 0 else "+")
            pieces.append(sep + body)
    return "".join(pieces)
