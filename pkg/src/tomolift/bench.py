"""Benchmark harness: config parsing, seeded trial batches, aggregation, output.

Reproducibility contract: the emitted CSV is a pure function of (config, base
seed).  Every trial gets its own seed derived from
``SeedSequence([base_seed, sweep_index, trial_index])``, rows are aggregated
after a deterministic sort, and means use exact compensated summation, so
serial and parallel execution produce byte-identical tables.
"""

from __future__ import annotations

import csv
import math
import os
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .estimator import SolverConfig
from .pipeline import METHODS, ExperimentPlan, StateSpec, run_plan
from .selection import SelectionConfig

SWEEP_VARIABLES = ("N", "R", "R2")


class ConfigError(ValueError):
    pass


@dataclass
class SweepSpec:
    variable: str                  # N | R | R2
    values: list
    trials: int
    methods: list = field(default_factory=list)

    def validate(self, plan: ExperimentPlan):
        if self.variable not in SWEEP_VARIABLES:
            raise ConfigError(f"sweep variable must be one of {SWEEP_VARIABLES}")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not self.values:
            raise ConfigError("sweep needs at least one value")
        for m in self.methods:
            if m not in METHODS:
                raise ConfigError(f"unknown method {m!r}")
        for v in self.values:
            _plan_at(plan, self.variable, v).validate()
        return self


@dataclass
class AggregateRow:
    sweep_variable: str
    sweep_value: float
    method: str
    mean_mse: float
    stderr_mse: float
    trials: int
    mean_iterations: float
    failures: int = 0
    degenerate_stderr: bool = False   # single-trial rows report stderr 0


def trial_seed(base_seed: int, sweep_index: int, trial_index: int) -> int:
    ss = np.random.SeedSequence([int(base_seed), int(sweep_index), int(trial_index)])
    return int(ss.generate_state(1, np.uint64)[0])


def _plan_at(plan: ExperimentPlan, variable: str, value) -> ExperimentPlan:
    if variable == "N":
        return replace(plan, N=int(value))
    if variable == "R":
        return replace(plan, R=float(value))
    return replace(plan, R2=float(value))


def _run_trial(args):
    plan, variable, value, method, base_seed, sweep_index, trial_index = args
    p = replace(_plan_at(plan, variable, value), method=method,
                seed=trial_seed(base_seed, sweep_index, trial_index))
    try:
        result = run_plan(p)
    except Exception as exc:  # recorded per-row, excluded from means
        return (sweep_index, trial_index, method, None, None, repr(exc))
    iters = float(np.mean([d.iterations for d in result.diagnostics]))
    return (sweep_index, trial_index, method, result.mse_final, iters, None)


def run_sweep(plan: ExperimentPlan, sweep: SweepSpec, base_seed: int | None = None,
              jobs: int = 1) -> list[AggregateRow]:
    """Execute trials for every (sweep value, method) pair and aggregate."""
    sweep.validate(plan)
    base_seed = plan.seed if base_seed is None else base_seed
    methods = sweep.methods or [plan.method]
    tasks = [(plan, sweep.variable, value, method, base_seed, si, ti)
             for si, value in enumerate(sweep.values)
             for method in methods
             for ti in range(sweep.trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_trial, tasks, chunksize=1))
    else:
        outcomes = [_run_trial(t) for t in tasks]
    # deterministic aggregation order regardless of execution order
    by_cell: dict = {}
    for task, out in zip(tasks, outcomes):
        si, method = task[5], task[3]
        by_cell.setdefault((si, method), []).append((out[1], out))
    rows = []
    for si, value in enumerate(sweep.values):
        for method in methods:
            cell = sorted(by_cell[(si, method)])
            mses = [o[3] for _, o in cell if o[5] is None]
            iters = [o[4] for _, o in cell if o[5] is None]
            failures = sum(1 for _, o in cell if o[5] is not None)
            if failures:
                print(f"warning: {failures} failed trial(s) at "
                      f"{sweep.variable}={value} method={method}")
            mean = math.fsum(mses) / len(mses) if mses else math.nan
            if len(mses) > 1:
                var = math.fsum((x - mean) ** 2 for x in mses) / (len(mses) - 1)
                stderr = math.sqrt(var / len(mses))
                degenerate = False
            else:
                stderr = 0.0
                degenerate = True
            rows.append(AggregateRow(
                sweep_variable=sweep.variable, sweep_value=float(value),
                method=method, mean_mse=mean, stderr_mse=stderr,
                trials=len(mses), mean_iterations=(math.fsum(iters) / len(iters)
                                                   if iters else math.nan),
                failures=failures, degenerate_stderr=degenerate))
    return rows


def emit_csv(rows: list[AggregateRow], path) -> None:
    if not rows:
        raise ValueError("no rows to emit")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["sweep_variable", "sweep_value", "method", "mean_mse",
                    "stderr_mse", "trials", "mean_iterations"])
        for r in rows:
            w.writerow([r.sweep_variable, repr(r.sweep_value), r.method,
                        repr(r.mean_mse), repr(r.stderr_mse), r.trials,
                        repr(r.mean_iterations)])


def emit_plot(rows: list[AggregateRow], path) -> None:
    """Static SVG of mean MSE vs sweep value, one line per method."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    variable = rows[0].sweep_variable
    for method in sorted({r.method for r in rows}):
        sel = [r for r in rows if r.method == method]
        xs = [r.sweep_value for r in sel]
        ys = [r.mean_mse for r in sel]
        es = [r.stderr_mse for r in sel]
        ax.errorbar(xs, ys, yerr=es, marker="o", capsize=3, label=method)
    ax.set_xlabel(variable)
    ax.set_ylabel("mean MSE")
    ax.set_yscale("log")
    if variable == "N":
        ax.set_xscale("log")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def parse_config(path) -> tuple[ExperimentPlan, SweepSpec | None]:
    """Load and validate a TOML experiment config."""
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    with open(path, "rb") as fh:
        try:
            raw = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"{path}: invalid TOML: {exc}") from exc
    if "plan" not in raw:
        raise ConfigError(f"{path}: missing [plan] section")
    p = raw["plan"]
    for key in ("n", "state", "N"):
        if key not in p:
            raise ConfigError(f"{path}: [plan] is missing required key {key!r}")
    state = _parse_state(p, path)
    solver = SolverConfig(**raw.get("solver", {}))
    selection = SelectionConfig(**raw.get("selection", {}))
    plan = ExperimentPlan(
        n=int(p["n"]), state=state, N=int(p["N"]), R=float(p.get("R", 0.5)),
        R2=float(p.get("R2", 0.0)), seed=int(p.get("seed", 0)),
        method=p.get("method", "two_step"), solver=solver, selection=selection,
        oracle=bool(p.get("oracle", False)), eq10_alt=bool(p.get("eq10_alt", False)))
    try:
        plan.validate()
    except ValueError as exc:
        raise ConfigError(f"{path}: invalid plan: {exc}") from exc
    sweep = None
    if "sweep" in raw:
        s = raw["sweep"]
        if "variable" not in s:
            raise ConfigError(f"{path}: [sweep] needs a 'variable' key")
        if "values" in s:
            values = list(s["values"])
        elif {"start", "stop", "count"} <= set(s):
            values = list(np.linspace(float(s["start"]), float(s["stop"]),
                                      int(s["count"])))
        else:
            raise ConfigError(f"{path}: [sweep] needs 'values' or start/stop/count")
        sweep = SweepSpec(variable=str(s["variable"]), values=values,
                          trials=int(s.get("trials", 1)),
                          methods=list(s.get("methods", [])))
        try:
            sweep.validate(plan)
        except ValueError as exc:
            raise ConfigError(f"{path}: invalid sweep: {exc}") from exc
    return plan, sweep


def _parse_state(p, path) -> StateSpec:
    name = p["state"]
    if name in ("cat", "noon", "w", "mixed"):
        return StateSpec(name)
    if name == "random":
        if "state_rank" not in p or "state_seed" not in p:
            raise ConfigError(f"{path}: random state needs state_rank and state_seed")
        return StateSpec("random", rank=int(p["state_rank"]), seed=int(p["state_seed"]))
    if name == "file":
        if "state_path" not in p:
            raise ConfigError(f"{path}: file state needs state_path")
        state_path = p["state_path"]
        if not os.path.isabs(state_path):
            state_path = os.path.join(os.path.dirname(os.path.abspath(path)), state_path)
        return StateSpec("file", path=state_path)
    raise ConfigError(f"{path}: unknown state name {name!r}")
