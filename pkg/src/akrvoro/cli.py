"""Command-line front end.

Subcommands: nodes, eval, residual, lemma, decompose, verify.  Output is
CSV (default) or JSON via --format; --out redirects to a file.  Exit codes:
0 success / all verdicts pass, 1 a verification verdict failed, 2 invalid
arguments or domain errors.  AKRVORO_WORKERS sets the schedule worker
count (absent means sequential); AKRVORO_PURE_NUMPY=1 disables the numba
kernels.
"""

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import asdict, dataclass
from typing import List, Optional

from .acceptance import run_all
from .akr import akr_apply, build_node_table
from .asymptotics import (
    classical_rhs_1d,
    classical_rhs_2d,
    decomposition,
    drift_rhs_2d,
    extrapolate,
    residual_series,
    voronovskaja_rhs_1d,
    voronovskaja_rhs_2d,
)
from .basis import bernstein_apply
from .catalog import lookup
from .errors import CapabilityError, DomainError, UnknownFunctionError
from .tensor import tensor_akr_apply, tensor_bernstein_apply

_OPERATOR_KINDS = (
    "bernstein-1d",
    "akr-1d",
    "bernstein-2d",
    "akr-2d",
    "akr-minus-bernstein-2d",
)

DEFAULT_TOLERANCE = 1e-2


@dataclass
class RunConfig:
    command: str
    format: str = "csv"
    output_path: Optional[str] = None
    dry_run: bool = False
    n: Optional[int] = None
    n0: Optional[int] = None
    doublings: Optional[int] = None
    j: Optional[int] = None
    kind: Optional[str] = None
    fn_name: Optional[str] = None
    point: Optional[List[float]] = None
    x: Optional[float] = None
    tolerance: Optional[float] = None
    criteria: Optional[List[int]] = None


def build_parser():
    parser = argparse.ArgumentParser(
        prog="akrvoro",
        description=(
            "Bernstein and modified-node operators on [0,1] and the unit "
            "square, with convergence verification tooling."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", dest="output_path", default=None, metavar="PATH")
        p.add_argument(
            "--dry-run",
            action="store_true",
            help="echo the parsed configuration and exit",
        )

    p = sub.add_parser("nodes", help="emit the sampling-node table for (n, j)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=int, default=2)
    common(p)

    p = sub.add_parser("eval", help="evaluate one operator value")
    p.add_argument("--kind", choices=_OPERATOR_KINDS[:4], required=True)
    p.add_argument("--fn", dest="fn_name", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=int, default=2)
    p.add_argument("--point", type=float, nargs="+", required=True)
    common(p)

    p = sub.add_parser(
        "residual", help="scaled residual series plus extrapolated limit"
    )
    p.add_argument("--kind", choices=_OPERATOR_KINDS, required=True)
    p.add_argument("--fn", dest="fn_name", required=True)
    p.add_argument("--point", type=float, nargs="+", required=True)
    p.add_argument("--n0", type=int, default=64)
    p.add_argument("--doublings", type=int, default=7)
    p.add_argument("--j", type=int, default=2)
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    common(p)

    p = sub.add_parser(
        "lemma", help="scaled remainder-sum series and vanishing-limit verdict"
    )
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--n0", type=int, default=64)
    p.add_argument("--doublings", type=int, default=7)
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    common(p)

    p = sub.add_parser(
        "decompose", help="drift decomposition rows over a doubling schedule"
    )
    p.add_argument("--fn", dest="fn_name", required=True)
    p.add_argument("--point", type=float, nargs=2, required=True)
    p.add_argument("--n0", type=int, default=64)
    p.add_argument("--doublings", type=int, default=4)
    common(p)

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.add_argument(
        "--criteria",
        default=None,
        metavar="LIST",
        help="comma-separated criterion numbers (default: all)",
    )
    common(p)

    return parser


def _config_from_args(args):
    cfg = RunConfig(command=args.command)
    for field in (
        "format",
        "output_path",
        "dry_run",
        "n",
        "n0",
        "doublings",
        "j",
        "kind",
        "fn_name",
        "point",
        "x",
        "tolerance",
    ):
        if hasattr(args, field):
            setattr(cfg, field, getattr(args, field))
    if getattr(args, "criteria", None) is not None:
        cfg.criteria = [int(v) for v in str(args.criteria).split(",") if v.strip()]
    return cfg


def _workers_from_env():
    raw = os.environ.get("AKRVORO_WORKERS", "").strip()
    if not raw:
        return None
    count = int(raw)
    if count < 1:
        raise DomainError(f"AKRVORO_WORKERS must be >= 1, got {count}")
    return count


# --------------------------------------------------------------------------
# Row builders
# --------------------------------------------------------------------------


def _entry_for(cfg, arity):
    entry = lookup(cfg.fn_name)
    if entry.arity != arity:
        raise DomainError(
            f"function {entry.name!r} has arity {entry.arity}, "
            f"but this command needs arity {arity}"
        )
    return entry


def _series_rows(series):
    values = series.values
    ns = series.ns
    rows = []
    diffs = [None] + [float(b - a) for a, b in zip(values, values[1:])]
    for i in range(len(values)):
        rate = None
        if i >= 2 and diffs[i - 1] and diffs[i]:
            if diffs[i - 1] * diffs[i] > 0 and abs(diffs[i - 1]) > abs(diffs[i]):
                rate = math.log2(abs(diffs[i - 1] / diffs[i]))
        rows.append(
            {
                "n": int(ns[i]),
                "value": float(values[i]),
                "diff": diffs[i],
                "rate_estimate": rate,
            }
        )
    return rows


def _residual_target(cfg, entry, point):
    if cfg.j is not None and cfg.j != 2:
        return None
    f = entry.function
    try:
        if cfg.kind == "bernstein-1d":
            return classical_rhs_1d(f, point)
        if cfg.kind == "akr-1d":
            return voronovskaja_rhs_1d(f, point)
        if cfg.kind == "bernstein-2d":
            return classical_rhs_2d(f, point)
        if cfg.kind == "akr-2d":
            return voronovskaja_rhs_2d(f, point)
        return drift_rhs_2d(f, point)
    except CapabilityError:
        return None


def _verdict(limit, target, tolerance):
    if target is None:
        return None
    if target == 0.0:
        return "PASS" if abs(limit) <= tolerance else "FAIL"
    return "PASS" if abs(limit - target) / abs(target) <= tolerance else "FAIL"


def _cmd_nodes(cfg):
    table = build_node_table(cfg.n, cfg.j)
    rows = [{"k": k, "t": float(t)} for k, t in enumerate(table.nodes)]
    return rows, {}, 0


def _cmd_eval(cfg):
    arity = 1 if cfg.kind.endswith("1d") else 2
    entry = _entry_for(cfg, arity)
    point = cfg.point
    if len(point) != arity:
        raise DomainError(
            f"kind {cfg.kind!r} needs {arity} point coordinate(s), got {len(point)}"
        )
    f = entry.function
    if cfg.kind == "bernstein-1d":
        value = bernstein_apply(f, cfg.n, point[0])
    elif cfg.kind == "akr-1d":
        value = akr_apply(f, cfg.n, cfg.j, point[0])
    elif cfg.kind == "bernstein-2d":
        value = tensor_bernstein_apply(f, cfg.n, tuple(point))
    else:
        value = tensor_akr_apply(f, cfg.n, cfg.j, tuple(point))
    rows = [{"n": cfg.n, "value": float(value)}]
    return rows, {"value": float(value)}, 0


def _cmd_residual(cfg):
    arity = 1 if cfg.kind.endswith("1d") else 2
    entry = _entry_for(cfg, arity)
    if len(cfg.point) != arity:
        raise DomainError(
            f"kind {cfg.kind!r} needs {arity} point coordinate(s), got {len(cfg.point)}"
        )
    point = cfg.point[0] if arity == 1 else tuple(cfg.point)
    series = residual_series(
        cfg.kind,
        entry.function,
        point,
        n0=cfg.n0,
        doublings=cfg.doublings,
        j=cfg.j,
        workers=_workers_from_env(),
    )
    result = extrapolate(series)
    target = _residual_target(cfg, entry, point)
    verdict = _verdict(result.limit_estimate, target, cfg.tolerance)
    summary = {
        "limit_estimate": result.limit_estimate,
        "rate_estimate": result.rate_estimate,
        "residual_tail": result.residual_tail,
        "monotone_tail": result.monotone_tail,
        "target": target,
        "verdict": verdict,
    }
    return _series_rows(series), summary, 1 if verdict == "FAIL" else 0


def _cmd_lemma(cfg):
    series = residual_series(
        "lemma-sum",
        None,
        cfg.x,
        n0=cfg.n0,
        doublings=cfg.doublings,
        workers=_workers_from_env(),
    )
    result = extrapolate(series)
    verdict = "PASS" if abs(result.limit_estimate) <= cfg.tolerance else "FAIL"
    summary = {
        "limit_estimate": result.limit_estimate,
        "rate_estimate": result.rate_estimate,
        "min_value": float(series.values.min()),
        "target": 0.0,
        "verdict": verdict,
    }
    return _series_rows(series), summary, 1 if verdict == "FAIL" else 0


def _cmd_decompose(cfg):
    entry = _entry_for(cfg, 2)
    f = entry.function
    point = tuple(cfg.point)
    bound_const = (
        f.sup_bounds.taylor_constant() if f.sup_bounds is not None else None
    )
    rows = []
    for m in range(cfg.doublings + 1):
        n = cfg.n0 * 2**m
        d = decomposition(f, n, point)
        rows.append(
            {
                "n": n,
                "e_term": d.e_term,
                "f_term": d.f_term,
                "g_residual": d.g_residual,
                "total": d.total,
                "g_bound": bound_const / (2.0 * n) if bound_const else None,
            }
        )
    return rows, {}, 0


def _cmd_verify(cfg):
    results = run_all(cfg.criteria)
    rows = [
        {
            "criterion": r.number,
            "name": r.name,
            "status": r.status,
            "elapsed_s": r.elapsed,
            "runtime_limit_s": r.runtime_limit,
            "detail": r.detail,
        }
        for r in results
    ]
    passed = sum(r.passed for r in results)
    verdict = "PASS" if passed == len(results) else "FAIL"
    summary = {
        "passed": passed,
        "failed": len(results) - passed,
        "verdict": verdict,
    }
    return rows, summary, 0 if verdict == "PASS" else 1


_HANDLERS = {
    "nodes": _cmd_nodes,
    "eval": _cmd_eval,
    "residual": _cmd_residual,
    "lemma": _cmd_lemma,
    "decompose": _cmd_decompose,
    "verify": _cmd_verify,
}


# --------------------------------------------------------------------------
# Output rendering
# --------------------------------------------------------------------------


def _fmt_cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def _write_csv(stream, rows, summary):
    writer = csv.writer(stream, lineterminator="\n")
    if rows:
        header = list(rows[0].keys())
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt_cell(row[key]) for key in header])
    for key, value in summary.items():
        stream.write(f"# {key}={_fmt_cell(value)}\n")


def _write_json(stream, command, cfg, rows, summary):
    payload = {
        "command": command,
        "config": asdict(cfg),
        "rows": rows,
        "summary": summary,
    }
    json.dump(payload, stream, indent=2)
    stream.write("\n")


def _emit(cfg, rows, summary):
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as stream:
            _render(stream, cfg, rows, summary)
    else:
        _render(sys.stdout, cfg, rows, summary)


def _render(stream, cfg, rows, summary):
    if cfg.format == "json":
        _write_json(stream, cfg.command, cfg, rows, summary)
    else:
        _write_csv(stream, rows, summary)


def _emit_error(cfg, exc):
    if cfg is not None and cfg.format == "json":
        payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        json.dump(payload, sys.stderr)
        sys.stderr.write("\n")
    else:
        print(f"error: {exc}", file=sys.stderr)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _config_from_args(args)
    try:
        if cfg.dry_run:
            if cfg.output_path:
                with open(cfg.output_path, "w", encoding="utf-8") as stream:
                    json.dump(asdict(cfg), stream, indent=2)
                    stream.write("\n")
            else:
                json.dump(asdict(cfg), sys.stdout, indent=2)
                sys.stdout.write("\n")
            return 0
        rows, summary, code = _HANDLERS[cfg.command](cfg)
        _emit(cfg, rows, summary)
        return code
    except (DomainError, UnknownFunctionError, CapabilityError) as exc:
        _emit_error(cfg, exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
