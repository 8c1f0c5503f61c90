#!/usr/bin/env python3
"""R sweep of fixed vs two-step adaptive tomography on the published random
state (configs/random_state.mat), reporting the optimal R."""

import argparse
import os

from tomolift.bench import emit_csv, emit_plot, parse_config, run_sweep

HERE = os.path.dirname(os.path.abspath(__file__))
CONFIG = os.path.join(HERE, "..", "configs", "random_r_sweep.toml")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="random_r_sweep_out")
    parser.add_argument("--trials", type=int, default=None)
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()

    plan, sweep = parse_config(CONFIG)
    if args.trials:
        sweep.trials = args.trials
    rows = run_sweep(plan, sweep, jobs=args.jobs)
    os.makedirs(args.out, exist_ok=True)
    emit_csv(rows, os.path.join(args.out, "random_r_sweep.csv"))
    emit_plot(rows, os.path.join(args.out, "random_r_sweep.svg"))

    adaptive = [r for r in rows if r.method == "two_step"]
    best = min(adaptive, key=lambda r: r.mean_mse)
    for r in rows:
        print(f"{r.method:8s} R={r.sweep_value:.1f} "
              f"mean MSE = {r.mean_mse:.3e} +- {r.stderr_mse:.1e}")
    print(f"optimal R for the adaptive method: {best.sweep_value:.1f}")


if __name__ == "__main__":
    main()
