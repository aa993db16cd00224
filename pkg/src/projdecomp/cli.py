"""Command-line interface.

Subcommands: ``decompose``, ``check``, ``compare``, ``gen`` and
``support``. Summaries go to stdout, diagnostics to stderr.

Exit codes: 0 success, 1 bad input, bad flags or domain error, 2 the
computation ran but did not meet its target (decomposition stalled or hit
the iteration cap; ``check`` found a value outside tolerance).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .baselines import log_z_transform, to_polar, z_transform
from .datagen import GridSpec, RadialGridSpec, mixed_sign_dataset, radial_grid_circles, rect_grid_circles
from .equivalence import expected_scale_matrix, relative_ratio_defect
from .errors import InfeasibleZeroLineError, ProjDecompError
from .matrixio import FORMATS, parse_matrix, write_csv, write_matrix
from .results import ResultDocument
from .solver import Gauge, SolverConfig, Status, decompose, residual
from .support import check_support
from .svg import write_svg_scatter

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNMET = 2

_GAUGES = {"balanced": Gauge.BALANCED, "unit-concat": Gauge.UNIT_CONCAT, "none": Gauge.NONE}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _describe_zero_lines(exc: InfeasibleZeroLineError) -> str:
    # 1-based, as a spreadsheet user would count
    parts = []
    if exc.zero_rows:
        parts.append("all-zero row " + ", ".join(str(i + 1) for i in exc.zero_rows))
    if exc.zero_cols:
        parts.append("all-zero column " + ", ".join(str(j + 1) for j in exc.zero_cols))
    return "cannot decompose: " + "; ".join(parts)


def cmd_decompose(args) -> int:
    A = parse_matrix(args.input, args.format)
    cfg = SolverConfig(tol=args.tol, max_iter=args.max_iter, gauge=_GAUGES[args.gauge])
    d = decompose(A, cfg)
    if args.out_w:
        write_matrix(d.W, args.out_w, "matrixmarket" if args.out_w.endswith((".mtx", ".mm")) else "csv")
    if args.out:
        w_ref = None
        if args.out_w:
            w_ref = os.path.relpath(os.path.abspath(args.out_w), os.path.dirname(os.path.abspath(args.out)))
        ResultDocument.from_decomposition(d, w_path=w_ref, inline_w=w_ref is None).dump(args.out)
    m, n = A.shape
    r = d.report
    print(
        f"{m}x{n} sigma={d.sigma!r} iterations={r.iterations} "
        f"residual={_fmt(r.residual)} status={r.status.value}"
    )
    if r.status is not Status.CONVERGED:
        print(f"warning: decomposition did not converge ({r.status.value})", file=sys.stderr)
        return EXIT_UNMET
    return EXIT_OK


def _parse_ratio_mode(spec: str):
    if spec in ("exhaustive", "auto"):
        return spec, 0, 0
    parts = spec.split(":")
    if parts[0] == "sampled" and len(parts) == 3:
        try:
            return "sampled", int(parts[1]), int(parts[2])
        except ValueError:
            pass
    raise argparse.ArgumentTypeError(f"bad ratio mode {spec!r}; use exhaustive, auto or sampled:K:SEED")


def cmd_check(args) -> int:
    A = parse_matrix(args.input, args.format)
    if args.w.endswith(".json"):
        W = ResultDocument.load(args.w).load_w()
    else:
        W = parse_matrix(args.w, args.format)
    if A.shape != W.shape:
        print(f"error: shape mismatch {A.shape} vs {W.shape}", file=sys.stderr)
        return EXIT_ERROR
    mode, k, seed = args.ratio_mode
    m, n = A.shape
    if mode == "auto":
        mode, k, seed = ("exhaustive", 0, 0) if (m * n) ** 2 <= 4e7 else ("sampled", 100_000, 0)
    res = residual(W)
    if m >= 2 and n >= 2:
        ratio = relative_ratio_defect(A, W, mode, k=k or 100_000, seed=seed)
    else:
        ratio = 0.0
    es_dev = float(np.max(np.abs(expected_scale_matrix(W) - 1.0)))
    checks = [("residual", res), ("ratio_defect", ratio), ("expected_scale_dev", es_dev)]
    ok = True
    for name, value in checks:
        good = value <= args.tol
        ok &= good
        print(f"{name}={_fmt(value)} {'ok' if good else 'FAIL'}")
    return EXIT_OK if ok else EXIT_UNMET


def cmd_compare(args) -> int:
    A = parse_matrix(args.input, args.format)
    stem = os.path.splitext(args.out)[0]
    if args.method == "projective":
        d = decompose(A, SolverConfig(tol=args.tol))
        out = d.W.toarray()
        ResultDocument.from_decomposition(d).dump(stem + ".params.json")
        status = d.report.status
    else:
        fn = z_transform if args.method == "z" else log_z_transform
        out, params = fn(A)
        with open(stem + ".params.json", "w") as fh:
            json.dump({"method": args.method, **params.to_dict()}, fh, indent=2)
        status = Status.CONVERGED

    header = None
    if args.polar:
        polar, origin = to_polar(out)
        if origin.any():
            print(f"warning: {int(origin.sum())} row(s) at the origin; angle set to 0", file=sys.stderr)
        out = np.column_stack([out, polar])
        header = ["x", "y", "angle", "radius"]
    write_csv(out, args.out, header=header, comments=[f"method={args.method} input={args.input}"])
    if args.svg:
        write_svg_scatter(out[:, 2:4] if args.polar else out, args.svg)
    print(f"{A.shape[0]}x{A.shape[1]} method={args.method} wrote {args.out}")
    return EXIT_OK if status is Status.CONVERGED else EXIT_UNMET


def cmd_gen(args) -> int:
    if args.figure == 1:
        spec = GridSpec(seed=args.seed)
        data = rect_grid_circles(spec)
    elif args.figure == 3:
        spec = RadialGridSpec(seed=args.seed)
        data = radial_grid_circles(spec)
    else:
        spec = GridSpec(seed=args.seed)
        data = mixed_sign_dataset(spec)
    comments = [f"figure={args.figure} seed={args.seed} rng=PCG64", "spec=" + json.dumps(spec.to_dict())]
    write_csv(data, args.out, comments=comments)
    if args.svg:
        write_svg_scatter(data, args.svg)
    print(f"figure {args.figure}: {data.shape[0]}x{data.shape[1]} -> {args.out}")
    return EXIT_OK


def cmd_support(args) -> int:
    diag = check_support(parse_matrix(args.input, args.format))
    line = diag.classification.value
    if diag.witness is not None:
        line += f" witness=({diag.witness[0] + 1},{diag.witness[1] + 1})"
    print(line)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="projdecomp", description="Projective decomposition A = sigma D_alpha W D_beta.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_format(sp):
        sp.add_argument("--format", choices=FORMATS, default=None, help="input format (default: by extension)")

    sp = sub.add_parser("decompose", help="compute the scale-invariant form of a matrix")
    sp.add_argument("input")
    add_format(sp)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--max-iter", type=int, default=10000)
    sp.add_argument("--gauge", choices=sorted(_GAUGES), default="balanced")
    sp.add_argument("--out", help="result document (JSON)")
    sp.add_argument("--out-w", help="write W to this CSV or .mtx file")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("check", help="verify W against A: unit RMS, ratios, expected scale")
    sp.add_argument("input")
    sp.add_argument("w", help="W matrix file or result document (.json)")
    add_format(sp)
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.add_argument("--ratio-mode", type=_parse_ratio_mode, default=("auto", 0, 0))
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("compare", help="normalize with projective decomposition, z or log+z")
    sp.add_argument("input")
    add_format(sp)
    sp.add_argument("--method", choices=("projective", "z", "logz"), default="projective")
    sp.add_argument("--polar", action="store_true", help="append angle and RMS radius columns")
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--out", required=True)
    sp.add_argument("--svg")
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("gen", help="generate the example datasets")
    sp.add_argument("--figure", type=int, choices=(1, 3, 5), required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", required=True)
    sp.add_argument("--svg")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("support", help="total-support diagnosis of a square pattern")
    sp.add_argument("input")
    add_format(sp)
    sp.set_defaults(func=cmd_support)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleZeroLineError as exc:
        print(f"error: {_describe_zero_lines(exc)}", file=sys.stderr)
    except ProjDecompError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR
