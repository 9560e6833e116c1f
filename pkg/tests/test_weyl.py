import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zipmot import oracles
from zipmot.rootdata import LeviSubset, build_root_datum
from zipmot.weyl import (
    enumerate_weyl,
    format_poincare,
    matmul,
    parabolic_subgroup,
    poincare_polynomial,
)

from conftest import SMALL_SPECS


def W(spec):
    return enumerate_weyl(build_root_datum(spec))


def test_a1():
    G = W("A1")
    assert G.order == 2
    assert sorted(w.length for w in G.elements) == [0, 1]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_type_a_matches_permutation_oracle(n):
    assert W(f"A{n}").order == oracles.symmetric_group_order(n + 1)
    assert W(f"GL{n}").order == oracles.symmetric_group_order(n)


def test_gl3_is_the_permutation_group():
    assert sorted(W("GL3").matrices) == sorted(oracles.symmetric_group_matrices(3))


@pytest.mark.parametrize("spec,order", [("B2", 8), ("G2", 12), ("B3", 48), ("D4", 192), ("F4", 1152)])
def test_orders(spec, order):
    assert W(spec).order == order


def test_parabolic():
    G = W("A2")
    rd = G.datum
    assert parabolic_subgroup(G, LeviSubset()).order == 1
    assert parabolic_subgroup(G, LeviSubset.full(rd)).order == 6
    assert parabolic_subgroup(G, LeviSubset.of(rd, (1,))).order == 2


def test_poincare_examples():
    assert format_poincare(W("A1")) == "1 + t"
    assert poincare_polynomial(W("A2")) == [1, 2, 2, 1]
    assert poincare_polynomial(W("B2")) == [1, 2, 2, 2, 1]
    assert poincare_polynomial(W("A2")) == oracles.solomon_product([2, 3])


def test_longest_element():
    G = W("A2")
    w0 = G.longest_element
    assert w0.length == 3
    assert str(w0) == "1 2 1"
    assert [w.length for w in G.elements].count(3) == 1
    assert str(G.elements[0]) == "e"


@pytest.mark.parametrize("spec", SMALL_SPECS + ["B4", "D4"])
def test_element_invariants(spec):
    G = W(spec)
    ident = tuple(tuple(int(i == j) for j in range(G.rank)) for i in range(G.rank))
    maxlen = max(w.length for w in G.elements)
    assert maxlen == G.datum.num_positive_roots
    assert sum(1 for w in G.elements if w.length == maxlen) == 1
    for w in G.elements:
        assert G.inversion_count(w.matrix) == w.length == len(w.word)
        prod = ident
        for i in w.word:
            prod = matmul(prod, G.simple_reflections[i - 1].matrix)
        assert prod == w.matrix


@pytest.mark.parametrize("spec", ["A2", "B2", "G2", "A3", "GL3"])
def test_closed_under_multiplication(spec):
    G = W(spec)
    mats = set(G.matrices)
    for a in G.matrices:
        for b in G.matrices:
            assert matmul(a, b) in mats


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["A3", "B3", "C3", "GL4"]), st.data())
def test_parabolic_poincare_divides(spec, data):
    G = W(spec)
    rd = G.datum
    idx = data.draw(st.sets(st.integers(1, rd.num_simple)))
    WL = parabolic_subgroup(G, LeviSubset.of(rd, idx))
    ratio = oracles.poincare_ratio(poincare_polynomial(G), poincare_polynomial(WL))
    assert sum(ratio) * WL.order == G.order
    assert all(m in G for m in WL.matrices)
