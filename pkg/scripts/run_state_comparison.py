#!/usr/bin/env python3
"""Fixed vs two-step adaptive tomography across R for named sparse states.

Covers the cat-2 headline comparison (N = 90000) and the W-3 sweep
(N = 270000).  Writes one CSV/SVG pair per state.
"""

import argparse
import os

from tomolift.bench import SweepSpec, emit_csv, emit_plot, run_sweep
from tomolift.pipeline import ExperimentPlan, StateSpec

R_GRID = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]
CASES = {
    "cat2": dict(n=2, state=StateSpec("cat"), N=90000),
    "noon2": dict(n=2, state=StateSpec("noon"), N=90000),
    "w3": dict(n=3, state=StateSpec("w"), N=270000),
}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="state_comparison_out")
    parser.add_argument("--trials", type=int, default=20)
    parser.add_argument("--states", nargs="+", default=["cat2", "w3"],
                        choices=sorted(CASES))
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    os.makedirs(args.out, exist_ok=True)

    for name in args.states:
        plan = ExperimentPlan(seed=args.seed, **CASES[name])
        sweep = SweepSpec(variable="R", values=R_GRID, trials=args.trials,
                          methods=["fixed", "two_step"])
        rows = run_sweep(plan, sweep, jobs=args.jobs)
        emit_csv(rows, os.path.join(args.out, f"{name}_r_sweep.csv"))
        emit_plot(rows, os.path.join(args.out, f"{name}_r_sweep.svg"))
        for r in rows:
            print(f"{name} {r.method:8s} R={r.sweep_value:.1f} "
                  f"mean MSE = {r.mean_mse:.3e} +- {r.stderr_mse:.1e}")


if __name__ == "__main__":
    main()
