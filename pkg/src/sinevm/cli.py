"""Command-line front end.

Subcommands ``mode-table``, ``grid``, ``verify`` and ``sample`` write CSV or
JSON. Exit status: 0 success, 1 a verification check failed, 2 usage or I/O
error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import checks
from .core import SvmParams
from .errors import DomainError
from .sampling import RandomStream, sample_batch
from .tables import DEFAULT_K_LIST, DEFAULT_LAMBDA_LIST, grid_rows, mode_rows, mode_table_notes

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class OutputSpec:
    def __init__(self, fmt="csv", precision=17, destination="-"):
        if fmt not in ("csv", "json"):
            raise DomainError(f"format must be csv or json, got {fmt!r}")
        if not 6 <= precision <= 17:
            raise DomainError(f"precision must be within [6, 17], got {precision}")
        self.format = fmt
        self.precision = precision
        self.destination = destination

    def num(self, x):
        return f"{x:.{self.precision}g}"


def render(out: OutputSpec, columns, rows, meta, notes=()):
    """Serialize a table to text. Floats use ``out.precision`` significant digits."""
    if out.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([out.num(v) if isinstance(v, float) else v for v in row])
        for note in notes:
            buf.write(f"# {note}\n")
        return buf.getvalue()
    doc = {
        "meta": meta,
        "rows": [
            {c: (float(out.num(v)) if isinstance(v, float) else v) for c, v in zip(columns, row)}
            for row in rows
        ],
    }
    if notes:
        doc["notes"] = list(notes)
    return json.dumps(doc, indent=2) + "\n"


def emit(out: OutputSpec, text: str) -> int:
    try:
        if out.destination == "-":
            sys.stdout.write(text)
            sys.stdout.flush()
        else:
            with open(out.destination, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"sinevm: cannot write output: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def cmd_mode_table(k_list, lambda_list, out: OutputSpec) -> int:
    rows = mode_rows(k_list, lambda_list)
    notes = mode_table_notes(rows)
    text = render(
        out,
        ["k", "lambda", "mode", "mode_residual"],
        [(r.k, r.lam, r.mode, r.residual) for r in rows],
        {"command": "mode-table", "k": list(k_list), "lambda": list(lambda_list)},
        notes,
    )
    return emit(out, text)


def cmd_grid(kind: str, params: SvmParams, n_points: int, out: OutputSpec) -> int:
    rows = grid_rows(kind, params, n_points)
    meta = {"command": "grid", "kind": kind, "k": params.k, "lambda": params.lam, "points": n_points}
    return emit(out, render(out, ["theta", kind], rows, meta))


def cmd_verify(params: SvmParams, tol: float, out: OutputSpec) -> int:
    results = checks.run_all(params, tol)
    rows = [(r.name, r.max_abs_err, r.tol, "true" if r.passed else "false", r.note) for r in results]
    meta = {"command": "verify", "k": params.k, "lambda": params.lam, "tol": tol}
    status = emit(out, render(out, ["check", "max_abs_err", "tol", "passed", "note"], rows, meta))
    if status != EXIT_OK:
        return status
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def cmd_sample(params: SvmParams, n: int, seed: int, out: OutputSpec) -> int:
    draws = sample_batch(params, n, RandomStream(seed))
    meta = {"command": "sample", "k": params.k, "lambda": params.lam, "n": n, "seed": seed}
    return emit(out, render(out, ["theta"], [(float(x),) for x in draws], meta))


def _float_list(text):
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _uint64(text):
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--precision", type=int, default=17, help="significant digits (6-17)")
    common.add_argument("--out", default="-", help="output path, '-' for stdout")

    dist = argparse.ArgumentParser(add_help=False)
    dist.add_argument("--k", type=float, default=1.0, help="concentration (>= 0)")
    dist.add_argument("--lambda", dest="lam", type=float, default=0.0, help="skewness in [-1, 1]")

    parser = argparse.ArgumentParser(prog="sinevm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mode-table", parents=[common], help="modes over a k x lambda grid")
    p.add_argument("--k-list", type=_float_list, default=DEFAULT_K_LIST)
    p.add_argument("--lambda-list", type=_float_list, default=DEFAULT_LAMBDA_LIST)

    p = sub.add_parser("grid", parents=[common, dist], help="pdf or cdf on a uniform grid")
    p.add_argument("--kind", choices=("pdf", "cdf"), default="pdf")
    p.add_argument("--points", type=int, default=721)

    p = sub.add_parser("verify", parents=[common, dist], help="run the invariant suite")
    p.add_argument("--tol", type=float, default=1e-8)

    p = sub.add_parser("sample", parents=[common, dist], help="draw random variates")
    p.add_argument("--n", "--points", dest="n", type=int, default=1000)
    p.add_argument("--seed", type=_uint64, default=0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        out = OutputSpec(args.format, args.precision, args.out)
        if args.command == "mode-table":
            return cmd_mode_table(args.k_list, args.lambda_list, out)
        params = SvmParams(args.k, args.lam)
        if args.command == "grid":
            return cmd_grid(args.kind, params, args.points, out)
        if args.command == "verify":
            return cmd_verify(params, args.tol, out)
        return cmd_sample(params, args.n, args.seed, out)
    except ValueError as exc:
        print(f"sinevm: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
