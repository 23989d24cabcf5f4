"""Command-line front end.

Exit codes: 0 success, 1 invalid input or arguments, 2 numerical failure,
3 a property check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import __version__
from .convexity import HullQuery, fconvex_hull_weights
from .equality import test_mean_equality
from .errors import BadArguments, NumericError, ValidationError
from .maps import check_admissibility_2d
from .means import DECISION_RTOL, aggregate
from .profiles import profile_from_json
from .properties import all_passed, run_property_suite
from .registry import resolve_map
from .selective import select
from .synergy import (
    CoalitionGame,
    check_null_synergy,
    coalition_label,
    coalition_table,
    stable_coalitions,
    synergy,
    zero_synergy_pairs,
)

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_PROPERTY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise BadArguments(f"{self.format_usage().strip()}\n{self.prog}: error: {message}")


def _default_seed() -> int:
    raw = os.environ.get("BAJRA_SEED")
    if raw is None:
        return 42
    try:
        return int(raw)
    except ValueError:
        raise BadArguments(f"BAJRA_SEED must be an integer, got {raw!r}") from None


def _load_json(text: str) -> Any:
    stripped = text.lstrip()
    if not stripped.startswith(("{", "[")):
        try:
            stripped = Path(text).read_text()
        except OSError as exc:
            raise BadArguments(f"cannot read input {text!r}: {exc}") from None
    try:
        return json.loads(stripped)
    except json.JSONDecodeError as exc:
        raise BadArguments(f"invalid JSON input: {exc}") from None


def _number(text: str):
    try:
        return int(text)
    except ValueError:
        try:
            return float(text)
        except ValueError:
            raise BadArguments(f"not a number: {text!r}") from None


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    return obj


def _emit(record: dict, rows: list[dict] | None, fmt: str, out) -> None:
    if fmt == "json":
        payload = dict(record)
        if rows is not None:
            payload["rows"] = rows
        out.write(json.dumps(_jsonable(payload)) + "\n")
    elif fmt == "csv":
        table = rows if rows is not None else [record]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(table[0].keys()), lineterminator="\n")
        writer.writeheader()
        for row in table:
            writer.writerow({k: _plain(v) for k, v in row.items()})
        out.write(buf.getvalue())
        if rows is not None:
            for key, value in record.items():
                out.write(f"# {key}={_plain(value)}\n")
    else:
        for row in rows or []:
            out.write("  ".join(f"{k}={_plain(v)}" for k, v in row.items()) + "\n")
        for key, value in record.items():
            out.write(f"{key}: {_plain(value)}\n")


def _plain(value) -> str:
    value = _jsonable(value)
    if isinstance(value, dict):
        return " ".join(f"{k}={_plain(v)}" for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return "(" + ", ".join(_plain(v) for v in value) + ")"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _cmd_aggregate(args) -> tuple[dict, list | None, int]:
    fmap = resolve_map(args.map)
    prof = profile_from_json(_load_json(args.input))
    out = aggregate(fmap, prof)
    return {"map": fmap.name, **out.as_dict()}, None, EXIT_OK


def _cmd_synergy(args):
    fmap = resolve_map(args.map)
    prof = profile_from_json(_load_json(args.input))
    out = aggregate(fmap, prof)
    return {"map": fmap.name, "effort": out.effort, "sum_weights": prof.total_weight(),
            "synergy": synergy(fmap, prof)}, None, EXIT_OK


def _cmd_select(args):
    prof = profile_from_json(_load_json(args.input))
    d = select(args.rule, prof)
    return {"rule": args.rule, "decision": d}, None, EXIT_OK


def _cmd_coalition(args):
    weights = [_number(s) for s in args.weights.split(",") if s.strip()]
    total = _number(args.total) if args.total is not None else 100
    game = CoalitionGame(tuple(weights), _number(args.quota), total)
    rows = [{"coalition": r.label, "threshold_effort": r.threshold_effort,
             "sum_individual": r.sum_individual, "synergy": r.synergy}
            for r in coalition_table(game)]
    record = {}
    if game.n >= 3:
        stable = stable_coalitions(game, strict=args.strict_preference)
        record["stable"] = " ".join(coalition_label(c) for c in stable) or "none"
        irrelevant = zero_synergy_pairs(game)
        record["irrelevant"] = " ".join(coalition_label(c) for c in irrelevant) or "none"
    return record, rows, EXIT_OK


def _cmd_hull(args):
    fmap = resolve_map(args.map)
    data = _load_json(args.input)
    if not isinstance(data, dict) or "generators" not in data or "query" not in data:
        raise BadArguments('hull input needs "generators" and "query"')
    cert = fconvex_hull_weights(fmap, HullQuery.of(data["generators"], data["query"]), tol=args.tol or 1e-9)
    return {"map": fmap.name, "member": cert.member, "weights": cert.weights,
            "residual": cert.residual}, None, EXIT_OK


def _cmd_equality(args):
    f, g = (resolve_map(s) for s in args.map)
    verdict = test_mean_equality(f, g, n_probes=args.trials or 1000, seed=args.seed,
                                 probe_tol=args.tol or 1e-8)
    record = {
        "f": f.name,
        "g": g.name,
        "equal": verdict.equal,
        "verdict": verdict.summary(),
        "linear_map": verdict.linear_map,
        "fitted_rank": verdict.fitted_rank,
        "max_fit_residual": verdict.max_fit_residual,
        "max_mean_discrepancy": verdict.max_mean_discrepancy,
        "max_effort_discrepancy": verdict.max_effort_discrepancy,
    }
    if not verdict.equal and verdict.witness is not None:
        record["witness"] = {"decisions": verdict.witness.points(),
                             "weights": verdict.witness.weights, "means": verdict.witness_means}
    return record, None, EXIT_OK


def _cmd_check(args):
    fmap = resolve_map(args.map)
    results = run_property_suite(fmap, args.trials or 200, seed=args.seed, rtol=args.tol or DECISION_RTOL)
    rows = [{"property": r.name, "passed": r.passed, "failed": r.failed} for r in results]
    null = check_null_synergy(fmap, args.trials or 300, seed=args.seed)
    record = {
        "map": fmap.name,
        "all_passed": all_passed(results),
        "null_synergy": {"zero_synergy": null.zero_synergy, "associative": null.associative,
                         "flat_formula_matches": null.flat_formula_matches},
    }
    if fmap.range_dim == 2 and fmap.dim == 1:
        record["admissibility"] = check_admissibility_2d(fmap).verdict
    ok = record["all_passed"] and null.coincide and record.get("admissibility", "pass") != "fail"
    code = EXIT_OK if ok else EXIT_PROPERTY
    return record, rows, code


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="random seed (default $BAJRA_SEED or 42)")
    common.add_argument("--format", choices=["json", "csv", "plain"], default=None)
    common.add_argument("--tol", type=float, default=None, help="tolerance override")

    parser = _Parser(prog="bajra", description="Generalized Bajraktarevic means and synergy.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, helptext in (("mean", "aggregate a profile"), ("effort", "aggregate a profile"),
                           ("synergy", "effort minus the sum of weights")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--map", required=True)
        p.add_argument("--input", required=True, help="profile JSON or path to it")

    p = sub.add_parser("select", parents=[common], help="apply a selective rule")
    p.add_argument("--rule", required=True, choices=["pe", "re", "fdd", "fd"])
    p.add_argument("--input", required=True)

    p = sub.add_parser("coalition", parents=[common], help="threshold coalition synergies")
    p.add_argument("--weights", required=True, help="comma separated party votes")
    p.add_argument("--quota", default="51")
    p.add_argument("--total", default=None, help="value of a winning coalition (default 100)")
    p.add_argument("--strict-preference", action="store_true")

    p = sub.add_parser("hull", parents=[common], help="f-convex hull membership")
    p.add_argument("--map", required=True)
    p.add_argument("--input", required=True, help='{"generators": [...], "query": ...}')

    p = sub.add_parser("equality", parents=[common], help="test whether two maps give the same mean")
    p.add_argument("--map", nargs=2, required=True, metavar=("F", "G"))
    p.add_argument("--trials", type=int, default=None, help="number of probe profiles")

    p = sub.add_parser("check", parents=[common], help="run the axiom and property suite")
    p.add_argument("--map", required=True)
    p.add_argument("--trials", type=int, default=None)
    return parser


_COMMANDS = {
    "mean": _cmd_aggregate,
    "effort": _cmd_aggregate,
    "synergy": _cmd_synergy,
    "select": _cmd_select,
    "coalition": _cmd_coalition,
    "hull": _cmd_hull,
    "equality": _cmd_equality,
    "check": _cmd_check,
}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.seed is None:
            args.seed = _default_seed()
        fmt = args.format or ("csv" if args.command == "coalition" else "json")
        record, rows, code = _COMMANDS[args.command](args)
        _emit(record, rows, fmt, out)
        return code
    except ValidationError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except NumericError as exc:
        err.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERIC


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
