import json
import os
import pathlib

import jsonschema
import pytest

from zipmot import cli
from zipmot.cli import UsageError, parse_args

from conftest import run_cli

GOLDEN = pathlib.Path(__file__).parent / "golden"
SCHEMA = json.loads((pathlib.Path(cli.__file__).parent / "data" / "report.schema.json").read_text())

CASES = {
    "weyl_a2.txt": ["weyl", "A2"],
    "weyl_b2_levi.json": ["weyl", "B2", "--levi", "1", "--json"],
    "invariants_g2.json": ["invariants", "G2", "--max-degree", "12", "--json"],
    "chow_a2_levi1_q2.json": ["chow", "A2-sc", "--levi", "1", "--frobenius", "2", "--json"],
    "chow_a2_levi1_q2.txt": ["chow", "A2-sc", "--levi", "1", "--frobenius", "2"],
    "chow_a1_identity.json": ["chow", "A1", "--cap", "8", "--json"],
    "lietype_a1_q2.json": ["lietype", "A1", "--q", "2", "--json"],
    "lietype_b2_q2.txt": ["lietype", "B2", "--q", "2"],
    "gzip_gl2_q3.txt": ["gzip", "GL2", "--levi", "", "--q", "3"],
    "k0_a1_q3.json": ["k0", "A1-sc", "--frobenius", "3", "--json"],
    "k0_gl2_q2.json": ["k0", "GL2", "--frobenius", "2", "--json"],
    "tate_bgm.txt": ["tate", "bgm"],
    "tate_flag_a2.json": ["tate", "flag", "A2", "--json"],
    "groebner_demo.txt": ["groebner", "--demo"],
    "error_bad_levi.json": ["chow", "A2", "--levi", "5", "--json"],
}


def _check(name, proc):
    path = GOLDEN / name
    if os.environ.get("ZIPMOT_UPDATE_GOLDEN"):
        path.write_text(proc.stdout)
    assert proc.stdout == path.read_text(), f"{name} drifted from its golden file"


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    proc = run_cli(*CASES[name])
    _check(name, proc)
    assert proc.stdout.isascii()
    if name.endswith(".json"):
        jsonschema.validate(json.loads(proc.stdout), SCHEMA)


@pytest.mark.parametrize("name", sorted(CASES))
def test_two_runs_identical(name):
    a = run_cli(*CASES[name])
    b = run_cli(*CASES[name])
    assert a.stdout == b.stdout and a.returncode == b.returncode


@pytest.mark.parametrize("name", [n for n in sorted(CASES) if n.split("_")[0] in ("chow", "lietype", "gzip", "k0", "groebner")])
def test_cache_cold_and_warm(name, tmp_path):
    env = {"ZIPMOT_CACHE_DIR": str(tmp_path)}
    cold = run_cli(*CASES[name], env=env)
    warm = run_cli(*CASES[name], env=env)
    assert cold.stdout == warm.stdout == (GOLDEN / name).read_text()
    if "error" not in name and "identity" not in name:
        assert any(tmp_path.iterdir())


def test_text_reports():
    out = run_cli("weyl", "A2").stdout
    assert "order: 6" in out
    assert "poincare: 1 + 2*t + 2*t^2 + t^3" in out
    assert "class: 1/(1-t)" in run_cli("tate", "bgm").stdout
    data = json.loads(run_cli("lietype", "A1", "--q", "2", "--json").stdout)
    assert data["total_dim"] == 1


def test_exit_codes():
    assert run_cli("weyl", "Z9").returncode == 2
    assert "unknown group spec" in run_cli("weyl", "Z9").stderr
    assert run_cli("chow", "A2", "--levi", "5").returncode == 2
    assert run_cli("k0", "A1-ad", "--frobenius", "2").returncode == 2
    assert run_cli("chow", "A2", "--frobenius", "1").returncode == 2
    assert run_cli().returncode == 2
    assert run_cli("weyl", "A2").returncode == 0


def test_json_error_is_structured():
    proc = run_cli("k0", "A2-ad", "--frobenius", "2", "--json")
    data = json.loads(proc.stdout)
    assert data["error"]["type"] == "UnsupportedError"
    jsonschema.validate(data, SCHEMA)


def test_parse_args():
    cfg = parse_args(["chow", "A2-sc", "--levi", "1", "--frobenius", "2", "--json"])
    assert (cfg.subcommand, cfg.spec, cfg.levi, cfg.frobenius, cfg.fmt) == ("chow", "A2-sc", (1,), 2, "json")
    cfg = parse_args(["k0", "A1-sc", "--frobenius", "3"])
    assert (cfg.subcommand, cfg.spec, cfg.frobenius, cfg.fmt) == ("k0", "A1-sc", 3, "text")
    with pytest.raises(UsageError, match="unknown group spec"):
        parse_args(["weyl", "Z9"])
    with pytest.raises(UsageError):
        parse_args(["k0", "A1"])
    with pytest.raises(UsageError):
        parse_args(["chow", "A1", "--frobenius", "2", "--isogeny-matrix", "m.txt"])
    with pytest.raises(UsageError):
        parse_args(["chow", "A1", "--levi", "x"])


def test_env_overrides_cache_dir(monkeypatch, tmp_path):
    monkeypatch.setenv("ZIPMOT_CACHE_DIR", str(tmp_path / "env"))
    assert parse_args(["weyl", "A1", "--cache-dir", "other"]).cache_dir == str(tmp_path / "env")
    monkeypatch.delenv("ZIPMOT_CACHE_DIR")
    assert parse_args(["weyl", "A1", "--cache-dir", "other"]).cache_dir == "other"


def test_isogeny_matrix_file(tmp_path):
    m = tmp_path / "phi.txt"
    m.write_text("3 0\n0 3\n")
    a = json.loads(run_cli("chow", "GL2", "--isogeny-matrix", str(m), "--json").stdout)
    b = json.loads(run_cli("chow", "GL2", "--frobenius", "3", "--json").stdout)
    assert a["graded_dims"] == b["graded_dims"] == [1]
    assert a["isogeny"]["kind"] == "custom"
    m.write_text("1 2 3\n")
    assert run_cli("chow", "GL2", "--isogeny-matrix", str(m)).returncode == 2


def test_batch(tmp_path):
    batch = tmp_path / "jobs.txt"
    batch.write_text("# comment\nweyl A2\nlietype A1 --q 2\n\ntate bgm\nweyl Z9\n")
    one = run_cli("batch", str(batch), "--jobs", "1", "--json")
    two = run_cli("batch", str(batch), "--jobs", "2", "--json")
    assert one.stdout == two.stdout
    assert one.returncode == 2
    data = json.loads(one.stdout)
    jsonschema.validate(data, SCHEMA)
    assert [r["line"] for r in data["runs"]] == ["weyl A2", "lietype A1 --q 2", "tate bgm", "weyl Z9"]
    assert [r["exit_code"] for r in data["runs"]] == [0, 0, 0, 2]
    assert data["runs"][1]["report"]["total_dim"] == 1


def test_in_process_main(capsys):
    assert cli.main(["tate", "bgm", "--series", "3"]) == 0
    out = capsys.readouterr().out
    assert "series: 1 1 1 1" in out
