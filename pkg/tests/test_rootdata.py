import pathlib

import pytest

from zipmot.errors import ParseError, UnsupportedError
from zipmot.rootdata import (
    LeviSubset,
    build_root_datum,
    cartan_matrix,
    SIMPLY_CONNECTED,
    determinant_character,
    fundamental_weights,
    parse_group_spec,
    parse_levi,
)

from conftest import ALL_SPECS

TABLE = pathlib.Path(__file__).parent / "data" / "cartan_matrices.txt"


def _table():
    out = {}
    for line in TABLE.read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        name, rows = line.split(":")
        out[name.strip()] = tuple(tuple(int(x) for x in row.split()) for row in rows.split(";"))
    return out


@pytest.mark.parametrize("name,expected", sorted(_table().items()))
@pytest.mark.parametrize("kind", ["sc", "ad"])
def test_cartan_against_table(name, expected, kind):
    spec = name if name.startswith("GL") else f"{name}-{kind}"
    assert cartan_matrix(build_root_datum(spec)) == expected


def test_sl2():
    rd = build_root_datum("A1-sc")
    assert rd.rank == 1
    assert rd.simple_roots == ((2,),)
    assert rd.simple_coroots == ((1,),)
    assert fundamental_weights(rd) == ((1,),)


def test_gl2():
    rd = build_root_datum("GL2")
    assert rd.rank == 2
    assert rd.simple_roots == ((1, -1),)
    assert rd.simple_coroots == ((1, -1),)
    assert fundamental_weights(rd) == ((1, 0),)
    assert determinant_character(rd) == (1, 1)


def test_sc_default_and_weights():
    rd = build_root_datum("A2")
    assert rd.lattice_kind == SIMPLY_CONNECTED
    assert fundamental_weights(rd) == ((1, 0), (0, 1))


@pytest.mark.parametrize("spec", ALL_SPECS)
def test_structure(spec):
    rd = build_root_datum(spec)
    assert rd.num_simple <= rd.rank
    for i in range(rd.num_simple):
        assert rd.pairing(rd.simple_roots[i], i) == 2
        s = rd.reflection_matrix(i)
        sq = tuple(tuple(sum(s[a][k] * s[k][b] for k in range(rd.rank)) for b in range(rd.rank)) for a in range(rd.rank))
        assert sq == tuple(tuple(int(a == b) for b in range(rd.rank)) for a in range(rd.rank))


@pytest.mark.parametrize("bad", ["E6", "E8-sc", "A6", "B1", "D3", "G3", "GL7", "Z9", "A2-xx", ""])
def test_bad_specs(bad):
    with pytest.raises((ParseError, UnsupportedError)):
        build_root_datum(bad)


def test_e_types_unsupported():
    with pytest.raises(UnsupportedError):
        parse_group_spec("E7")


def test_levi():
    rd = build_root_datum("A3")
    assert LeviSubset.of(rd, "3,1").indices == (1, 3)
    assert LeviSubset.of(rd, "").indices == ()
    assert LeviSubset.full(rd).indices == (1, 2, 3)
    assert parse_levi("1, 2") == (1, 2)
    with pytest.raises(ParseError):
        LeviSubset.of(rd, (4,))
    with pytest.raises(ParseError):
        parse_levi("a,b")
