#!/usr/bin/env python3
"""MSE vs copy budget for fixed tomography of the two-qubit cat state.

Runs the configs/cat2_n_sweep.toml sweep and reports the log-log regression
slope, which should be close to -1 (shot-noise-limited scaling).
"""

import argparse
import os

import numpy as np

from tomolift.bench import emit_csv, emit_plot, parse_config, run_sweep

HERE = os.path.dirname(os.path.abspath(__file__))
CONFIG = os.path.join(HERE, "..", "configs", "cat2_n_sweep.toml")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="n_scaling_out")
    parser.add_argument("--trials", type=int, default=None)
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()

    plan, sweep = parse_config(CONFIG)
    if args.trials:
        sweep.trials = args.trials
    rows = run_sweep(plan, sweep, jobs=args.jobs)
    os.makedirs(args.out, exist_ok=True)
    emit_csv(rows, os.path.join(args.out, "n_scaling.csv"))
    emit_plot(rows, os.path.join(args.out, "n_scaling.svg"))

    xs = np.log10([r.sweep_value for r in rows])
    ys = np.log10([r.mean_mse for r in rows])
    slope, intercept = np.polyfit(xs, ys, 1)
    resid = ys - (slope * xs + intercept)
    r2 = 1 - resid.var() / ys.var()
    print(f"log-log slope = {slope:.3f}, R^2 = {r2:.4f}")
    for r in rows:
        print(f"N={int(r.sweep_value):>7d}  mean MSE = {r.mean_mse:.3e} "
              f"+- {r.stderr_mse:.1e}")


if __name__ == "__main__":
    main()
