"""Command-line front end.

Subcommands: noiseless, dephasing, dual, dc (single-point queries), figure
(CSV sweeps) and verify (JSON check reports).  Output is deterministic for a
fixed seed; CSV carries 6 decimals, JSON full precision.  Exit codes:
0 success, 2 validation error, 3 optimizer infeasibility.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import dense_coding, dephasing, dual, figures, noiseless, optimize, verify
from .errors import CapconError, InfeasibleProblem

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_INFEASIBLE = 3


def _default_seed() -> int:
    return int(os.environ.get("CAPCON_SEED", "42"))


def _add_common(parser):
    parser.add_argument("--seed", type=int, default=_default_seed(), help="optimizer seed")
    parser.add_argument("--out", default=None, help="output path (default stdout)")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--jobs", type=int, default=1, help="worker pool size for sweeps")


def _parse_dim(text: str) -> float:
    if text == "inf":
        return math.inf
    return int(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="capcon",
        description="Energy- and purity-constrained classical capacities of "
        "finite-dimensional quantum channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("noiseless", help="noiseless-channel capacity")
    p.add_argument("--d", type=_parse_dim, required=True, help="dimension (or 'inf')")
    p.add_argument("--E", type=float, required=True, help="energy bound")
    p.add_argument("--constraint", choices=("average", "strict"), default="average")
    _add_common(p)

    p = sub.add_parser("dephasing", help="qubit dephasing-channel capacity")
    p.add_argument("--lambda", dest="lam", type=float, required=True, help="noise parameter")
    p.add_argument("--E", type=float, required=True)
    p.add_argument("--constraint", choices=("average", "strict"), default="average")
    p.add_argument(
        "--probabilities", choices=("equiprobable", "optimized"), default="optimized"
    )
    _add_common(p)

    p = sub.add_parser("dual", help="joint energy + purity constrained capacity")
    p.add_argument("--E", type=float, required=True)
    p.add_argument("--L", type=float, required=True, help="purity bound in [1/2, 1]")
    p.add_argument("--channel", choices=("noiseless", "dephasing"), default="noiseless")
    p.add_argument(
        "--probabilities", choices=("equiprobable", "optimized"), default="optimized"
    )
    _add_common(p)

    p = sub.add_parser("dc", help="dense-coding capacity")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--E", type=float, required=True)
    p.add_argument("--channel", choices=("noiseless", "dephasing"), default="noiseless")
    p.add_argument("--constraint", choices=("average", "strict"), default="average")
    p.add_argument(
        "--probabilities", choices=("equiprobable", "optimized"), default="optimized"
    )
    _add_common(p)

    p = sub.add_parser("figure", help="regenerate one figure's data")
    p.add_argument("name", choices=figures.FIGURE_IDS)
    p.add_argument("--resolution", type=int, default=9, help="points along the x grid")
    _add_common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=verify.SUITES, default="all")
    _add_common(p)
    return parser


def _emit(text: str, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _format_csv(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(f"{v:.6f}" for v in row))
    return "\n".join(lines) + "\n"


def _emit_value(result, args):
    if args.format == "json":
        payload = {"value": result.value}
        if result.params:
            payload["params"] = {
                k: v for k, v in result.params.items() if isinstance(v, (int, float, tuple))
            }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _emit(f"{result.value:.6f}\n", args.out)


def _dc_config(args) -> optimize.OptimizerConfig:
    return optimize.OptimizerConfig(
        seed=args.seed,
        max_evals=dense_coding._DC_MAX_EVALS,
        refine_iters=dense_coding._DC_REFINE_ITERS,
    )


def _run_noiseless(args) -> int:
    if args.d == math.inf:
        value = noiseless.infinite_dim_capacity(args.E)
        _emit_value_like(value, args)
        return EXIT_OK
    _emit_value(noiseless.noiseless_capacity(int(args.d), args.E, args.constraint), args)
    return EXIT_OK


def _emit_value_like(value: float, args):
    if args.format == "json":
        _emit(json.dumps({"value": value}, indent=2) + "\n", args.out)
    else:
        _emit(f"{value:.6f}\n", args.out)


def _run_dephasing(args) -> int:
    result = dephasing.capacity(args.lam, args.E, args.constraint, args.probabilities)
    _emit_value(result, args)
    return EXIT_OK


def _run_dual(args) -> int:
    if args.channel == "noiseless":
        result = dual.dual_noiseless_capacity(args.E, args.L)
    elif args.probabilities == "equiprobable":
        result = dual.dual_dephasing_equiprob_capacity(args.E, args.L)
    else:
        result = dual.dual_dephasing_optimal_capacity(args.E, args.L)
    _emit_value(result, args)
    return EXIT_OK


def _run_dc(args) -> int:
    if args.channel == "dephasing":
        if args.d != 2:
            raise CapconError("dephasing dense coding is implemented for d = 2")
        result = dense_coding.dc_dephasing_capacity(
            args.E, args.constraint, args.probabilities, _dc_config(args)
        )
    elif args.constraint == "average" and args.probabilities == "optimized":
        result = dense_coding.ec_dc_capacity(args.d, args.E)
    else:
        if args.d != 2:
            raise CapconError(
                "strict/equiprobable dense-coding searches are implemented for d = 2"
            )
        result = dense_coding.dc_noiseless_numeric(
            args.E, args.constraint, args.probabilities, _dc_config(args)
        )
    _emit_value(result, args)
    return EXIT_OK


def _run_figure(args) -> int:
    header, rows = figures.figure_table(
        args.name, resolution=args.resolution, seed=args.seed, jobs=args.jobs
    )
    if args.format == "json":
        payload = {"figure": args.name, "header": header, "rows": rows}
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _emit(_format_csv(header, rows), args.out)
    return EXIT_OK


def _run_verify(args) -> int:
    checks = verify.run_suite(args.suite, seed=args.seed)
    _emit(json.dumps(checks, indent=2) + "\n", args.out)
    return EXIT_OK if all(c["pass"] for c in checks) else 1


_RUNNERS = {
    "noiseless": _run_noiseless,
    "dephasing": _run_dephasing,
    "dual": _run_dual,
    "dc": _run_dc,
    "figure": _run_figure,
    "verify": _run_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _RUNNERS[args.command](args)
    except InfeasibleProblem as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (CapconError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
