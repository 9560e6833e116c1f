"""Closed-form and brute-force oracles kept independent of the main pipelines."""

from __future__ import annotations

import itertools
from math import factorial

from . import upoly


def symmetric_group_matrices(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """All ``n × n`` permutation matrices."""
    out = []
    for perm in itertools.permutations(range(n)):
        out.append(tuple(tuple(int(perm[j] == i) for j in range(n)) for i in range(n)))
    return out


def symmetric_group_order(n: int) -> int:
    order = len(symmetric_group_matrices(n))
    assert order == factorial(n)
    return order


def chebyshev_polynomials(q: int) -> list[list[int]]:
    """``p_0 = 2, p_1 = c, p_{k+1} = c·p_k - p_{k-1}`` as ascending coefficient lists in ``c``.

    ``p_k(x + x^{-1}) = x^k + x^{-k}``.
    """
    ps = [[2], [0, 1]]
    while len(ps) <= q:
        ps.append(upoly.sub(upoly.shift(ps[-1], 1), ps[-2]))
    return ps[: q + 1]


def sl2_frobenius_k0_dimension(q: int) -> int:
    """``dim Q[c]/(c - p_q(c))``: the degree of ``c - p_q(c)``."""
    rel = upoly.sub([0, 1], chebyshev_polynomials(q)[q])
    rel = upoly.trim(rel)
    if not rel:
        raise ValueError("q = 1 gives the zero relation")
    return len(rel) - 1


def solomon_product(degrees) -> list[int]:
    """``Π_i (1 - t^{d_i})/(1 - t) = Π_i (1 + t + ... + t^{d_i - 1})``."""
    out = [1]
    for d in degrees:
        out = upoly.mul(out, [1] * d)
    return out


def poincare_ratio(pg, pl) -> list[int]:
    """``W_G(t) / W_L(t)``, which is a polynomial for parabolic subgroups."""
    q = upoly.exact_div(list(pg), list(pl))
    if q is None:
        raise ValueError("Poincare polynomials do not divide")
    return q


def diagonal_quotient_dimension(exponents) -> int:
    out = 1
    for e in exponents:
        out *= e
    return out
