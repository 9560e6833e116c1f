"""Command-line front end: ``zipmot <subcommand> ...``.

Every report is assembled as a plain dict first; ``--json`` prints it as
JSON, otherwise it is rendered as ``key: value`` text.  Exit codes: 0 ok,
1 internal error or failed check, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import shlex
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import invariants as inv
from . import oracles, quotients, tate, upoly
from .errors import InternalError, ParseError, ZipmotError
from .exact import MultiPoly, format_scalar
from .groebner import GroebnerCache, buchberger, quotient_data
from .quotients import Check, IsogenyMap, ZipDatum
from .rootdata import GL, LeviSubset, build_root_datum, parse_group_spec, parse_levi
from .weyl import enumerate_weyl, format_poincare, parabolic_subgroup, poincare_polynomial

log = logging.getLogger("zipmot")

CACHE_ENV = "ZIPMOT_CACHE_DIR"


class UsageError(ZipmotError, ValueError):
    """Malformed command line."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    spec: str | None = None
    levi: tuple[int, ...] | None = None
    frobenius: int | None = None
    isogeny_matrix: tuple[tuple[int, ...], ...] | None = None
    twist: tuple[tuple[int, ...], ...] | None = None
    cap: int = quotients.DEFAULT_CAP
    fmt: str = "text"
    cache_dir: str | None = None
    verbosity: int = 0
    options: dict = field(default_factory=dict)


# -- argument parsing -------------------------------------------------------------


def _read_matrix(path: str) -> tuple[tuple[int, ...], ...]:
    try:
        with open(path, encoding="utf-8") as fh:
            rows = [line.split() for line in fh if line.strip()]
    except OSError as exc:
        raise UsageError(f"--isogeny-matrix: cannot read {path}: {exc.strerror}") from None
    try:
        M = tuple(tuple(int(x) for x in row) for row in rows)
    except ValueError:
        raise UsageError(f"--isogeny-matrix: {path} must contain integers") from None
    if not M or any(len(row) != len(M) for row in M):
        raise UsageError(f"--isogeny-matrix: {path} must hold r lines of r integers")
    return M


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--cache-dir", help="directory for cached Groebner bases")
    p.add_argument("-v", "--verbose", action="count", default=0)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zipmot", description="Chow rings, K0 and Tate classes of quotients up to isogeny.")
    sub = parser.add_subparsers(dest="subcommand", parser_class=_Parser)

    p = sub.add_parser("weyl", help="Weyl group order, degrees, Poincare polynomial")
    p.add_argument("spec")
    p.add_argument("--levi")
    _common(p)

    p = sub.add_parser("invariants", help="basic invariants and Molien series")
    p.add_argument("spec")
    p.add_argument("--levi")
    p.add_argument("--max-degree", type=int, default=12)
    _common(p)

    for name in ("chow", "k0"):
        p = sub.add_parser(name, help=f"{'rational Chow ring' if name == 'chow' else 'rational K0'} of [G/_phi L]")
        p.add_argument("spec")
        p.add_argument("--levi")
        p.add_argument("--frobenius", type=int, metavar="Q")
        p.add_argument("--isogeny-matrix", metavar="FILE")
        p.add_argument("--twist", metavar="FILE", help="lattice automorphism P for phi = q*P")
        if name == "chow":
            p.add_argument("--cap", type=int, default=quotients.DEFAULT_CAP)
        _common(p)

    p = sub.add_parser("lietype", help="Chow ring of B(G^F)")
    p.add_argument("spec")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--cap", type=int, default=quotients.DEFAULT_CAP)
    _common(p)

    p = sub.add_parser("gzip", help="Chow ring of the stack of G-zips")
    p.add_argument("spec")
    p.add_argument("--levi", required=True)
    p.add_argument("--q-levi")
    p.add_argument("--twist", metavar="FILE")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--cap", type=int, default=quotients.DEFAULT_CAP)
    _common(p)

    p = sub.add_parser("tate", help="K0 classes of Tate motives")
    tsub = p.add_subparsers(dest="operation", parser_class=_Parser)
    tp = tsub.add_parser("flag")
    tp.add_argument("spec")
    tp = tsub.add_parser("bgm")
    tp.add_argument("--rank", type=int, default=1)
    tp = tsub.add_parser("torsor")
    tp.add_argument("--base", required=True)
    tp.add_argument("--rank", type=int, required=True)
    tp = tsub.add_parser("gysin")
    tp.add_argument("--total", required=True)
    tp.add_argument("--closed", required=True)
    tp.add_argument("--codim", type=int, required=True)
    tp = tsub.add_parser("eval")
    tp.add_argument("expr")
    for tp in tsub.choices.values():
        tp.add_argument("--series", type=int, metavar="D")
        _common(tp)

    p = sub.add_parser("groebner", help="worked Groebner basis example")
    p.add_argument("--demo", action="store_true", required=True)
    _common(p)

    p = sub.add_parser("batch", help="run one command per line of FILE")
    p.add_argument("file")
    p.add_argument("--jobs", type=int, default=1)
    _common(p)
    return parser


def parse_args(argv: list[str]) -> RunConfig:
    """Validate ``argv`` into a :class:`RunConfig`; raises :class:`UsageError`."""
    ns = _build_parser().parse_args(argv)
    if ns.subcommand is None:
        raise UsageError("missing subcommand")
    cache_dir = os.environ.get(CACHE_ENV) or getattr(ns, "cache_dir", None)
    fmt = "json" if ns.json else "text"
    spec = getattr(ns, "spec", None)
    if spec is not None:
        try:
            parse_group_spec(spec)
        except ParseError as exc:
            raise UsageError(str(exc)) from None
    levi = None
    if getattr(ns, "levi", None) is not None:
        try:
            levi = parse_levi(ns.levi)
        except ParseError as exc:
            raise UsageError(f"--levi: {exc}") from None
    opts: dict = {}
    frob = matrix = twist = None
    cap = getattr(ns, "cap", quotients.DEFAULT_CAP)
    if cap < 0:
        raise UsageError("--cap must be non-negative")
    sc = ns.subcommand
    if sc in ("chow", "k0"):
        if ns.frobenius is not None and ns.isogeny_matrix is not None:
            raise UsageError("--frobenius and --isogeny-matrix are mutually exclusive")
        if ns.twist is not None and ns.frobenius is None:
            raise UsageError("--twist needs --frobenius")
        if sc == "k0" and ns.frobenius is None and ns.isogeny_matrix is None:
            raise UsageError("k0 needs --frobenius or --isogeny-matrix")
        if ns.frobenius is not None and ns.frobenius < 2:
            raise UsageError("--frobenius must be >= 2")
        frob = ns.frobenius
        matrix = _read_matrix(ns.isogeny_matrix) if ns.isogeny_matrix else None
        twist = _read_matrix(ns.twist) if ns.twist else None
    elif sc in ("lietype", "gzip"):
        if ns.q < 2:
            raise UsageError("--q must be >= 2")
        frob = ns.q
        if sc == "gzip":
            twist = _read_matrix(ns.twist) if ns.twist else None
            if ns.q_levi is not None:
                try:
                    opts["q_levi"] = parse_levi(ns.q_levi)
                except ParseError as exc:
                    raise UsageError(f"--q-levi: {exc}") from None
    elif sc == "invariants":
        if not 0 <= ns.max_degree <= inv.MAX_MOLIEN_DEGREE:
            raise UsageError(f"--max-degree must lie in 0..{inv.MAX_MOLIEN_DEGREE}")
        opts["max_degree"] = ns.max_degree
    elif sc == "tate":
        if ns.operation is None:
            raise UsageError("tate needs an operation: flag, bgm, torsor, gysin, eval")
        opts["operation"] = ns.operation
        if ns.series is not None and not 0 <= ns.series <= 200:
            raise UsageError("--series must lie in 0..200")
        opts["series"] = ns.series
        for key in ("rank", "base", "total", "closed", "codim", "expr"):
            if hasattr(ns, key):
                opts[key] = getattr(ns, key)
        for key in ("base", "total", "closed", "expr"):
            if key in opts:
                try:
                    tate.TateClass.parse(opts[key])
                except ParseError as exc:
                    raise UsageError(f"--{key}: {exc}") from None
        if ns.operation == "flag":
            try:
                parse_group_spec(ns.spec)
            except ParseError as exc:
                raise UsageError(str(exc)) from None
            spec = ns.spec
    elif sc == "batch":
        if ns.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        opts["file"] = ns.file
        opts["jobs"] = ns.jobs
    return RunConfig(sc, spec, levi, frob, matrix, twist, cap, fmt, cache_dir, ns.verbose, opts)


# -- rendering --------------------------------------------------------------------


def _num(c):
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else format_scalar(c)


def _checks(checks) -> list[dict]:
    return [{"name": c.name, "status": c.status, "detail": c.detail} for c in checks]


def render_text(report: dict) -> str:
    lines: list[str] = []
    checks = report.get("checks", [])
    for key, value in report.items():
        if key == "checks":
            continue
        _render(lines, key, value, 0)
    if checks:
        lines.append("checks:")
        for c in checks:
            extra = f" ({c['detail']})" if c["detail"] else ""
            lines.append(f"  [{c['status']}] {c['name']}{extra}")
    return "\n".join(lines) + "\n"


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _scalar_text(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _render(lines, key, value, depth) -> None:
    pad = "  " * depth
    if isinstance(value, dict):
        lines.append(f"{pad}{key}:")
        for k, v in value.items():
            _render(lines, k, v, depth + 1)
    elif isinstance(value, list) and value and all(_is_int(v) for v in value):
        lines.append(f"{pad}{key}: " + " ".join(str(v) for v in value))
    elif isinstance(value, list):
        lines.append(f"{pad}{key}:" + ("" if value else " (none)"))
        for v in value:
            if isinstance(v, dict):
                lines.append(f"{pad}  - " + ", ".join(f"{k}={_scalar_text(x)}" for k, x in v.items()))
            elif isinstance(v, list):
                sep = " " if all(_is_int(x) for x in v) else "; "
                lines.append(f"{pad}  - " + (sep.join(str(x) for x in v) if v else "(none)"))
            else:
                lines.append(f"{pad}  - {v}")
    else:
        lines.append(f"{pad}{key}: {_scalar_text(value)}")


# -- command implementations ------------------------------------------------------


def _cache(cfg: RunConfig):
    return GroebnerCache(cfg.cache_dir) if cfg.cache_dir else None


def _datum(cfg: RunConfig):
    return build_root_datum(cfg.spec)


def _levi(rd, cfg: RunConfig, default_full=True) -> LeviSubset:
    if cfg.levi is None:
        return LeviSubset.full(rd) if default_full else LeviSubset()
    return LeviSubset.of(rd, cfg.levi)


def cmd_weyl(cfg: RunConfig) -> dict:
    rd = _datum(cfg)
    W = enumerate_weyl(rd)
    fi = inv.fundamental_invariants(W)
    pg = poincare_polynomial(W)
    w0 = W.longest_element
    checks = [
        Check("length-equals-inversions", "pass", "BFS depth and inversion count agree for every element"),
        Check.of("product-of-degrees", _prod(fi.degrees) == W.order, f"prod d_i = {_prod(fi.degrees)}"),
        Check.of("solomon-identity", pg == oracles.solomon_product(fi.degrees), "sum t^l(w) = prod (1-t^d_i)/(1-t)"),
        Check.of("poincare-palindromic", upoly.is_palindromic(pg)),
    ]
    if rd.cartan_type in ("A", "GL"):
        n = rd.rank + 1 if rd.cartan_type == "A" else rd.rank
        checks.append(Check.of("symmetric-group-oracle", W.order == oracles.symmetric_group_order(n), f"|S_{n}|"))
    report = {
        "command": "weyl",
        "group": rd.label,
        "rank": rd.rank,
        "cartan_matrix": [" ".join(str(x) for x in row) for row in rd.cartan],
        "order": W.order,
        "degrees": list(fi.degrees),
        "poincare": format_poincare(W),
        "poincare_coefficients": pg,
        "longest_element": {"word": str(w0), "length": w0.length},
    }
    if cfg.levi is not None:
        L = LeviSubset.of(rd, cfg.levi)
        WL = parabolic_subgroup(W, L)
        pl = poincare_polynomial(WL)
        report["levi"] = {
            "indices": list(L.indices),
            "order": WL.order,
            "poincare": format_poincare(WL),
            "longest_element": {"word": str(WL.longest_element), "length": WL.longest_element.length},
        }
        checks.append(Check.of("parabolic-subset", all(m in W for m in WL.matrices), "W_L elements lie in W"))
        ratio = oracles.poincare_ratio(pg, pl)
        checks.append(Check.of("poincare-divides", upoly.evaluate(ratio, 1) * WL.order == W.order))
    report["checks"] = _checks(checks)
    return report


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


def cmd_invariants(cfg: RunConfig) -> dict:
    rd = _datum(cfg)
    W = enumerate_weyl(rd)
    G = parabolic_subgroup(W, _levi(rd, cfg)) if cfg.levi is not None else W
    d = cfg.options["max_degree"]
    fi = inv.fundamental_invariants(G)
    molien = inv.molien_series(G, d)
    k = min(d, 12)
    ranks = inv.reynolds_rank_table(G, k)
    checks = [
        Check.of("reynolds-rank-equals-molien", ranks == molien[: k + 1], f"degrees 0..{k}"),
        Check.of("product-of-degrees", _prod(fi.degrees) == G.order, f"|W| = {G.order}"),
        Check.of("generator-count", len(fi.degrees) == rd.rank, f"rank {rd.rank}"),
        Check.of("generators-invariant", all(inv.is_invariant(f, G) for f in fi.generators)),
        Check.of("molien-equals-free-series", molien == inv.free_algebra_series(fi.degrees, d)),
    ]
    report = {"command": "invariants", "group": rd.label}
    if cfg.levi is not None:
        report["levi"] = list(_levi(rd, cfg).indices)
    report.update(
        {
            "order": G.order,
            "degrees": list(fi.degrees),
            "generators": [str(f) for f in fi.generators],
            "molien": molien,
            "reynolds_ranks": ranks,
            "hilbert_series": str(tate.hilbert_class(fi.degrees)),
            "checks": _checks(checks),
        }
    )
    return report


def _isogeny(rd, cfg: RunConfig) -> IsogenyMap:
    if cfg.isogeny_matrix is not None:
        return IsogenyMap.custom(cfg.isogeny_matrix)
    if cfg.frobenius is None:
        return IsogenyMap.identity(rd.rank)
    if cfg.twist is not None:
        return IsogenyMap.twisted(cfg.twist, cfg.frobenius)
    return IsogenyMap.frobenius(rd.rank, cfg.frobenius)


def _graded_report(command: str, res, extra: dict | None = None) -> dict:
    report: dict = {"command": command, "group": res.group, "levi": list(res.levi)}
    report["isogeny"] = res.isogeny.describe() if res.isogeny is not None else None
    if extra:
        report.update(extra)
    report["degree_cap"] = res.degree_cap
    report["graded_dims"] = list(res.graded_dims)
    report["finite"] = res.finite
    if res.finite:
        report["total_dim"] = res.total_dim
    else:
        report["hilbert_series"] = str(res.hilbert_series) if res.hilbert_series is not None else None
    report["basis"] = [[str(p) for p in layer] for layer in res.basis]
    report["generators"] = [str(p) for p in res.generators]
    report["ideal_generators"] = [str(p) for p in res.ideal_generators]
    report["groebner_basis"] = [str(p) for p in res.groebner_basis]
    if res.structure_constants is not None:
        report["structure_constants"] = [
            {"i": i, "j": j, "k": k, "c": _num(c)} for i, j, k, c in res.structure_constants
        ]
    report["checks"] = _checks(res.checks)
    return report


def cmd_chow(cfg: RunConfig) -> dict:
    rd = _datum(cfg)
    L = _levi(rd, cfg)
    res = quotients.chow_isogeny_quotient(rd, L, _isogeny(rd, cfg), cfg.cap, _cache(cfg))
    return _graded_report("chow", res)


def cmd_lietype(cfg: RunConfig) -> dict:
    rd = _datum(cfg)
    res = quotients.chow_finite_lie_type(rd, cfg.frobenius, cfg.cap, _cache(cfg))
    return _graded_report("lietype", res, {"q": cfg.frobenius})


def cmd_gzip(cfg: RunConfig) -> dict:
    rd = _datum(cfg)
    z = ZipDatum.make(rd, cfg.levi, cfg.options.get("q_levi"), cfg.twist)
    res = quotients.chow_gzip(z, cfg.frobenius, cfg.cap, _cache(cfg))
    return _graded_report("gzip", res, {"q": cfg.frobenius, "q_levi": list(z.q_levi.indices)})


def cmd_k0(cfg: RunConfig) -> dict:
    rd = _datum(cfg)
    L = _levi(rd, cfg)
    res = quotients.k0_isogeny_quotient(rd, L, _isogeny(rd, cfg), _cache(cfg))
    report = {
        "command": "k0",
        "group": res.group,
        "levi": list(res.levi),
        "isogeny": res.isogeny.describe(),
        "finite": res.finite,
        "dimension": res.dimension,
        "ambient_dimension": res.ambient_dimension,
        "basis": [str(e) for e in res.basis],
        "ideal_generators": [str(e) for e in res.ideal_generators],
        "groebner_basis": [str(p) for p in res.groebner_basis],
    }
    if rd.lattice_kind == GL:
        report["note"] = "det and det^-1 adjoined to the generators of R(T)^W"
    report["checks"] = _checks(res.checks)
    return report


def _class_report(op: str, c: tate.TateClass, cfg: RunConfig, checks, extra=None) -> dict:
    report: dict = {"command": "tate", "operation": op}
    if extra:
        report.update(extra)
    report["class"] = str(c)
    report["numerator"] = list(c.numerator)
    report["denominator"] = list(c.denominator)
    report["offset"] = c.offset
    if cfg.options.get("series") is not None:
        report["series"] = c.series(cfg.options["series"])
    report["checks"] = _checks(checks)
    return report


def cmd_tate(cfg: RunConfig) -> dict:
    op = cfg.options["operation"]
    o = cfg.options
    if op == "flag":
        rd = _datum(cfg)
        c = tate.flag_class(rd)
        pg = poincare_polynomial(enumerate_weyl(rd))
        checks = [
            Check.of("numerator-equals-poincare", list(c.numerator) == pg, "sum_w t^l(w)"),
            Check.of("offset-is-minus-positive-roots", c.offset == -rd.num_positive_roots),
        ]
        return _class_report(op, c, cfg, checks, {"group": rd.label})
    if op == "bgm":
        r = o["rank"]
        c = tate.classifying_torus_class(r)
        checks = [Check.of("torsor-descends-to-point", tate.torsor_descend(c, r) == tate.TateClass.one())]
        return _class_report(op, c, cfg, checks, {"rank": r})
    if op == "torsor":
        base = tate.TateClass.parse(o["base"])
        c = tate.torsor_descend(base, o["rank"])
        checks = [Check.of("round-trip", c * tate.classifying_torus_class(o["rank"]) == base)]
        return _class_report(op, c, cfg, checks, {"base": str(base), "rank": o["rank"]})
    if op == "gysin":
        total = tate.TateClass.parse(o["total"])
        closed = tate.TateClass.parse(o["closed"])
        c = tate.gysin_open_class(total, closed, o["codim"])
        checks = [Check.of("additivity", c + closed * tate.TateClass.t_power(o["codim"]) == total)]
        return _class_report(op, c, cfg, checks, {"total": str(total), "closed": str(closed), "codim": o["codim"]})
    c = tate.TateClass.parse(o["expr"])
    return _class_report(op, c, cfg, [], {"expr": o["expr"]})


def cmd_groebner(cfg: RunConfig) -> dict:
    V = ("x", "y")
    gens = [MultiPoly.parse("x - y", V), MultiPoly.parse("y^2", V)]
    B = buchberger(gens, V, _cache(cfg))
    Q = quotient_data(B)
    xy = MultiPoly.parse("x*y", V)
    W1 = ("x1",)
    a1 = [MultiPoly.parse("x1^2", W1) - MultiPoly.parse("x1^2", W1).substitute_linear(((3,),))]
    B1 = buchberger([g.monic() for g in a1], W1, _cache(cfg))
    checks = [
        Check.of("s-polynomial-audit", B.s_polynomial_audit() and B1.s_polynomial_audit()),
        Check.of("reduced", B.is_reduced() and B1.is_reduced()),
        Check.of("ideal-membership", all(B.contains(g) for g in gens)),
    ]
    return {
        "command": "groebner",
        "examples": [
            {
                "ring": "Q[x, y]",
                "generators": "; ".join(str(g) for g in gens),
                "basis": "; ".join(str(g) for g in B.basis),
                "standard_monomials": "; ".join(str(MultiPoly.monomial(V, m)) for m in Q.monomial_list),
                "normal_form_of_xy": str(B.normal_form(xy)),
            },
            {
                "ring": "Q[x1] (A1, phi = 3*Id)",
                "generators": "; ".join(str(g) for g in a1),
                "basis": "; ".join(str(g) for g in B1.basis),
                "standard_monomials": "; ".join(
                    str(MultiPoly.monomial(W1, m)) for m in quotient_data(B1).monomial_list
                ),
            },
        ],
        "checks": _checks(checks),
    }


COMMANDS = {
    "weyl": cmd_weyl,
    "invariants": cmd_invariants,
    "chow": cmd_chow,
    "k0": cmd_k0,
    "lietype": cmd_lietype,
    "gzip": cmd_gzip,
    "tate": cmd_tate,
    "groebner": cmd_groebner,
}


# -- dispatch ---------------------------------------------------------------------


def _emit(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, ensure_ascii=True) + "\n"
    return render_text(report)


def _error_report(cfg_or_name, exc: Exception) -> dict:
    name = cfg_or_name.subcommand if isinstance(cfg_or_name, RunConfig) else cfg_or_name
    return {"command": name, "error": {"type": type(exc).__name__, "message": str(exc)}}


def run(cfg: RunConfig) -> tuple[int, str, str]:
    """Execute a validated config; returns ``(exit code, stdout, stderr)``."""
    if cfg.subcommand == "batch":
        return _run_batch(cfg)
    t0 = time.perf_counter()
    try:
        report = COMMANDS[cfg.subcommand](cfg)
    except InternalError as exc:
        return _failure(cfg, exc, 1)
    except ValueError as exc:
        return _failure(cfg, exc, 2)
    log.info("%s finished in %.2fs", cfg.subcommand, time.perf_counter() - t0)
    failed = [c["name"] for c in report.get("checks", []) if c["status"] == "fail"]
    err = "".join(f"check failed: {name}\n" for name in failed)
    return (1 if failed else 0), _emit(report, cfg.fmt), err


def _failure(cfg: RunConfig, exc: Exception, code: int) -> tuple[int, str, str]:
    if cfg.fmt == "json":
        return code, _emit(_error_report(cfg, exc), "json"), ""
    return code, "", f"error: {exc}\n"


def _run_line(argv: list[str]) -> tuple[int, str, str]:
    try:
        cfg = parse_args(argv)
        if cfg.subcommand == "batch":
            raise UsageError("batch files cannot nest")
    except ValueError as exc:
        return 2, "", f"usage error: {exc}\n"
    return run(cfg)


def _run_batch(cfg: RunConfig) -> tuple[int, str, str]:
    path = cfg.options["file"]
    try:
        with open(path, encoding="utf-8") as fh:
            raw = [line.strip() for line in fh]
    except OSError as exc:
        return 2, "", f"error: cannot read {path}: {exc.strerror}\n"
    lines = [line for line in raw if line and not line.startswith("#")]
    argvs = []
    for line in lines:
        argv = shlex.split(line)
        if cfg.fmt == "json" and "--json" not in argv:
            argv.append("--json")
        if cfg.cache_dir and "--cache-dir" not in argv:
            argv += ["--cache-dir", cfg.cache_dir]
        argvs.append(argv)
    jobs = cfg.options["jobs"]
    if jobs > 1 and len(argvs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_line, argvs))
    else:
        results = [_run_line(a) for a in argvs]
    code = max((r[0] for r in results), default=0)
    if cfg.fmt == "json":
        runs = []
        for line, (rc, out, err) in zip(lines, results):
            entry = {"line": line, "exit_code": rc}
            if out:
                entry["report"] = json.loads(out)
            if err:
                entry["stderr"] = err.rstrip("\n")
            runs.append(entry)
        return code, _emit({"command": "batch", "runs": runs}, "json"), ""
    out_parts, err_parts = [], []
    for line, (rc, out, err) in zip(lines, results):
        out_parts.append(f"### {line}\n{out}exit_code: {rc}\n")
        if err:
            err_parts.append(f"[{line}] {err}")
    return code, "\n".join(out_parts), "".join(err_parts)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
    except ValueError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2
    logging.basicConfig(level=logging.INFO if cfg.verbosity else logging.WARNING, stream=sys.stderr)
    code, out, err = run(cfg)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
