"""Command-line benchmark harness.

Subcommands: `run` executes a single plan, `sweep` a parameter sweep, and
`compare` pits fixed vs two_step vs three_step on one plan.  Exit codes:
0 success, 1 config error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

from .bench import (ConfigError, SweepSpec, emit_csv, emit_plot, parse_config,
                    run_sweep)
from .pipeline import METHODS, run_plan, save_run_result


def _add_common(p):
    p.add_argument("--config", required=True, help="TOML experiment config")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--trials", type=int, default=None, help="override sweep trials")
    p.add_argument("--seed", type=int, default=None, help="override base seed")
    p.add_argument("--jobs", type=int, default=None,
                   help="worker processes (default $TOMOLIFT_JOBS or 1)")
    p.add_argument("--plot", action="store_true", help="write an SVG plot")
    p.add_argument("--oracle", action="store_true",
                   help="exact-frequency mode (no sampling noise)")
    p.add_argument("--eq10-alt", action="store_true",
                   help="alternative pairing of the three-step frequency blend")


def build_parser():
    parser = argparse.ArgumentParser(prog="tomolift",
                                     description="Adaptive tomography benchmarks")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (("run", "single plan"), ("sweep", "parameter sweep"),
                        ("compare", "fixed vs two_step vs three_step")):
        p = sub.add_parser(name, help=help_)
        _add_common(p)
    return parser


def _apply_overrides(plan, args):
    if args.seed is not None:
        plan = replace(plan, seed=args.seed)
    if args.oracle:
        plan = replace(plan, oracle=True)
    if args.eq10_alt:
        plan = replace(plan, eq10_alt=True)
    return plan


def _jobs(args) -> int:
    if args.jobs is not None:
        return max(1, args.jobs)
    return max(1, int(os.environ.get("TOMOLIFT_JOBS", "1")))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        plan, sweep = parse_config(args.config)
        plan = _apply_overrides(plan, args)
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    os.makedirs(args.out, exist_ok=True)
    try:
        if args.command == "run":
            result = run_plan(plan)
            summary = save_run_result(result, args.out)
            print(f"mse={result.mse_final!r} "
                  f"frobenius_sq={result.frobenius_sq_final!r} -> {summary}")
            return 0
        if args.command == "compare":
            if int(plan.N * plan.R2) < 1:
                print("config error: compare needs a plan R2 with a nonzero "
                      "round-3 budget for the three-step arm", file=sys.stderr)
                return 1
            if sweep is None:
                sweep = SweepSpec(variable="R", values=[plan.R],
                                  trials=args.trials or 1)
            sweep.methods = list(METHODS)
        if sweep is None:
            print("config error: sweep/compare need a [sweep] section",
                  file=sys.stderr)
            return 1
        if args.trials is not None:
            sweep.trials = args.trials
        rows = run_sweep(plan, sweep, base_seed=plan.seed, jobs=_jobs(args))
        csv_path = os.path.join(args.out, f"{args.command}_results.csv")
        emit_csv(rows, csv_path)
        print(f"wrote {csv_path}")
        if args.plot:
            plot_path = os.path.join(args.out, f"{args.command}_results.svg")
            emit_plot(rows, plot_path)
            print(f"wrote {plot_path}")
        return 0
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
