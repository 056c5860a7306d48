"""Command line: ``pluecker {derive,table,identities,bitangents,flexes,plot}``.

The numerical modules (numpy, scikit-image) are imported only by the
subcommands that need them, so ``derive`` and ``table`` start quickly.

Exit codes: 0 success/agreement, 1 failed identity, 2 bad input,
3 numerical count disagrees with the formula.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .derivation import bitangent_count, derivation_report, flex_count
from .identities import run_identities

ENV_PREFIX = "PLUECKER_"
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2, 3
ORACLE_SCHEMA = "pluecker.oracle/1"

log = logging.getLogger("pluecker")


class InputError(Exception):
    pass


def _setting(args, name: str, env: str, cast, default):
    """Flag, then environment variable, then built-in default."""
    value = getattr(args, name, None)
    if value is not None:
        return value
    raw = os.environ.get(ENV_PREFIX + env)
    if raw is not None and raw != "":
        try:
            return cast(raw)
        except ValueError:
            raise InputError(f"invalid {ENV_PREFIX + env}={raw!r}") from None
    return default


def _parse_window(text: str) -> tuple[float, float, float, float]:
    try:
        parts = tuple(float(p) for p in text.split(","))
    except ValueError:
        raise InputError(f"--window expects xmin,xmax,ymin,ymax, got {text!r}") from None
    if len(parts) != 4 or not (parts[0] < parts[1] and parts[2] < parts[3]):
        raise InputError(f"--window expects xmin,xmax,ymin,ymax with min < max, got {text!r}")
    return parts


def _config(args):
    from .numeric.solver import SolverConfig

    try:
        return SolverConfig(
            start_count=_setting(args, "starts", "STARTS", int, None),
            residual_tolerance=_setting(args, "tol_residual", "TOL_RESIDUAL", float, 1e-10),
            dedup_distance=_setting(args, "dedup", "DEDUP", float, 1e-6),
            seed=_setting(args, "seed", "SEED", int, 0),
            workers=_setting(args, "workers", "WORKERS", int, 1),
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _format(args, allowed: Sequence[str], default: str) -> str:
    fmt = _setting(args, "format", "FORMAT", str, default)
    if fmt not in allowed:
        raise InputError(f"format {fmt!r} not supported here (choose from {', '.join(allowed)})")
    return fmt


# --------------------------------------------------------------------------


def cmd_derive(args) -> int:
    fmt = _format(args, ("text", "json"), "text")
    report = derivation_report()
    print(report.to_json() if fmt == "json" else report.to_text())
    return EXIT_OK


def table_rows(d_min: int, d_max: int) -> list[dict]:
    if not 2 <= d_min <= d_max <= 50:
        raise InputError("need 2 <= d_min <= d_max <= 50")
    nb, nf = bitangent_count(), flex_count()
    return [{"d": k, "bitangents": int(nb(k)), "flexes": int(nf(k))} for k in range(d_min, d_max + 1)]


def cmd_table(args) -> int:
    fmt = _format(args, ("text", "json"), "text")
    rows = table_rows(args.d_min, args.d_max)
    if fmt == "json":
        print(json.dumps({"schema": "pluecker.table/1", "rows": rows}, indent=2))
    else:
        print(f"{'d':>3}  {'bitangents':>12}  {'flexes':>8}")
        for r in rows:
            print(f"{r['d']:>3}  {r['bitangents']:>12}  {r['flexes']:>8}")
    return EXIT_OK


def cmd_identities(args) -> int:
    fmt = _format(args, ("text", "json"), "text")
    results = run_identities()
    if fmt == "json":
        print(json.dumps([{"key": i.key, "statement": i.statement, "pass": ok} for i, ok in results], indent=2))
    else:
        for ident, ok in results:
            print(f"{'PASS' if ok else 'FAIL'}  ({ident.key}) {ident.statement}")
    return EXIT_OK if all(ok for _, ok in results) else EXIT_FAIL


def _load_curve(text: str):
    from .numeric.curve import CurveError, as_curve

    try:
        return as_curve(text)
    except CurveError as exc:
        raise InputError(str(exc)) from None


def oracle_document(result, items) -> dict:
    doc = {"schema": ORACLE_SCHEMA, "summary": result.summary(), "solutions": [s.to_dict() for s in items]}
    return doc


def _run_oracle(args, kind: str) -> int:
    from .numeric.solver import NonGenericCurveError, solve_bitangents, solve_flexes

    fmt = _format(args, ("text", "json"), "json")
    curve = _load_curve(args.curve)
    config = _config(args)
    solve = solve_bitangents if kind == "bitangents" else solve_flexes
    t0 = time.perf_counter()
    try:
        result = solve(curve, config, honest=args.honest)
    except NonGenericCurveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    elapsed = time.perf_counter() - t0
    items = result.solutions if kind == "bitangents" else result.points
    doc = oracle_document(result, items)
    if kind == "bitangents":
        doc["higher_order"] = [s.to_dict() for s in result.higher_order]
    if fmt == "json":
        print(json.dumps(doc, indent=2))
    else:
        s = result.summary()
        print(f"curve: {curve}")
        print(f"degree {s['degree']}: expected {s['expected']}, found {s['found']}"
              + (f" (weighted {s['weighted']})" if kind == "flexes" else "")
              + f", real {s['real']}, {'agrees' if s['agrees'] else 'DISAGREES'}")
        for w in s["warnings"]:
            print(f"warning: {w}")
        print(f"{s['starts']} starts in {elapsed:.1f} s")
    if fmt == "json":
        for w in result.warnings:
            log.warning(w)
    return EXIT_OK if result.agrees else EXIT_MISMATCH


def cmd_bitangents(args) -> int:
    return _run_oracle(args, "bitangents")


def cmd_flexes(args) -> int:
    return _run_oracle(args, "flexes")


def cmd_plot(args) -> int:
    from .numeric.solver import NonGenericCurveError, solve_bitangents
    from .plot import render_svg

    fmt = _format(args, ("svg", "text"), "svg")
    window = _parse_window(_setting(args, "window", "WINDOW", str, "-2,2,-2,2"))
    curve = _load_curve(args.curve)
    out = args.out or os.environ.get(ENV_PREFIX + "OUT")
    if fmt == "text" and not out:
        raise InputError("--format text prints a summary and needs --out for the SVG")
    try:
        result = solve_bitangents(curve, _config(args), honest=args.honest)
    except NonGenericCurveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    svg = render_svg(curve, result.solutions, window=window, higher_order=result.higher_order)
    if out:
        try:
            Path(out).write_text(svg, encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot write {out}: {exc}") from None
    else:
        sys.stdout.write(svg)
    if fmt == "text":
        n_lines = svg.count("<line")
        n_hyper = svg.count('<line class="hyperflex"')
        print(f"wrote {out}: {n_lines} real line(s) ({n_hyper} hyperflex) of {result.found} bitangents"
              f" + {len(result.higher_order)} hyperflex lines found")
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pluecker",
        description="Bitangent and flex counts of plane curves: exact derivation and numerical check.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    def fmt(p, choices):
        p.add_argument("--format", choices=choices, default=None, help=f"output format (env {ENV_PREFIX}FORMAT)")

    p = sub.add_parser("derive", help="print the symbolic derivation and N_B(d)")
    fmt(p, ["text", "json"])
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("table", help="tabulate bitangent and flex counts")
    p.add_argument("d_min", type=int)
    p.add_argument("d_max", type=int)
    fmt(p, ["text", "json"])
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("identities", help="check the intersection identities")
    fmt(p, ["text", "json"])
    p.set_defaults(func=cmd_identities)

    def oracle_flags(p):
        p.add_argument("curve", help='homogeneous polynomial, e.g. "x^4 + y^4 + z^4"')
        p.add_argument("--seed", type=int, default=None, help=f"random seed (env {ENV_PREFIX}SEED)")
        p.add_argument("--starts", type=int, default=None, help="number of Newton starts")
        p.add_argument("--tol-residual", type=float, default=None, help="residual tolerance")
        p.add_argument("--dedup", type=float, default=None, help="chordal dedup distance")
        p.add_argument("--workers", type=int, default=None, help="parallel workers")
        p.add_argument("--honest", action="store_true", help="do not size the run from the formula")

    for name, func, helptext in (
        ("bitangents", cmd_bitangents, "find bitangents numerically"),
        ("flexes", cmd_flexes, "find flexes numerically"),
    ):
        p = sub.add_parser(name, help=helptext)
        oracle_flags(p)
        fmt(p, ["text", "json"])
        p.set_defaults(func=func)

    p = sub.add_parser("plot", help="SVG of the real curve and its real bitangents")
    oracle_flags(p)
    p.add_argument("--out", default=None, help="SVG path (stdout if omitted)")
    p.add_argument("--window", default=None, help="xmin,xmax,ymin,ymax (default -2,2,-2,2); write --window=-3,3,-3,3 for negative bounds")
    fmt(p, ["svg", "text"])
    p.set_defaults(func=cmd_plot)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
