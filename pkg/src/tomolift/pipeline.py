"""Tomography pipelines: fixed single-round, two-step adaptive, three-step adaptive.

An adaptive run alternates measuring, estimating and reallocating: a uniform
first round yields a rough estimate, its L1 decomposition over the projector
dictionary decides where the remaining copies go, and later-round frequencies
are blended with the earlier ones (boosted by 3^n * N_mu / sum(N_mu) on
heavily sampled settings) before the final estimate.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field, replace

import numpy as np

from . import states
from .estimator import EstimationProblem, SolverConfig, estimate_density_matrix
from .metrics import frobenius_sq, mse
from .pauli import born_probabilities, dictionary_matrix, enumerate_settings
from .sampling import FrequencyTable, exact_frequency_table, measure_round
from .selection import SelectionConfig, allocate_copies, decompose_l1, setting_weights

METHODS = ("fixed", "two_step", "three_step")


@dataclass(frozen=True)
class StateSpec:
    """Named generator plus parameters, or a matrix file path."""

    name: str                 # cat | noon | w | mixed | random | file
    rank: int | None = None   # random only
    seed: int | None = None   # random only
    path: str | None = None   # file only

    def build(self, n: int) -> np.ndarray:
        if self.name == "cat":
            return states.make_cat_state(n)
        if self.name == "noon":
            return states.make_noon_state(n)
        if self.name == "w":
            return states.make_w_state(n)
        if self.name == "mixed":
            return states.maximally_mixed(n)
        if self.name == "random":
            if self.rank is None or self.seed is None:
                raise ValueError("random state needs rank and seed")
            return states.random_density_matrix(n, self.rank, self.seed)
        if self.name == "file":
            if not self.path:
                raise ValueError("file state needs a path")
            rho = states.load_state_file(self.path)
            if rho.shape[0] != 2**n:
                raise ValueError(f"{self.path}: dim {rho.shape[0]} does not match n={n}")
            return rho
        raise ValueError(f"unknown state name {self.name!r}")

    def label(self) -> str:
        if self.name == "random":
            return f"random(rank={self.rank},seed={self.seed})"
        if self.name == "file":
            return f"file({self.path})"
        return self.name


@dataclass
class ExperimentPlan:
    n: int
    state: StateSpec
    N: int
    R: float = 0.5
    R2: float = 0.0
    seed: int = 0
    method: str = "two_step"
    solver: SolverConfig = field(default_factory=SolverConfig)
    selection: SelectionConfig = field(default_factory=SelectionConfig)
    oracle: bool = False       # exact Born frequencies instead of sampling
    eq10_alt: bool = False     # alternative pairing of the three-step blend

    def validate(self):
        settings = 3**self.n
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.N < settings:
            raise ValueError(f"N={self.N} below the setting count {settings}")
        if not 0.0 < self.R < 1.0:
            raise ValueError(f"R must lie in (0,1), got {self.R}")
        if not 0.0 <= self.R2 < 1.0 or self.R + self.R2 >= 1.0:
            raise ValueError(f"need 0 <= R2 and R + R2 < 1, got R={self.R} R2={self.R2}")
        if self.method != "fixed" and int(self.N * self.R) < settings:
            raise ValueError(
                f"round 1 budget floor(N*R)={int(self.N * self.R)} cannot cover "
                f"all {settings} settings")
        if self.method == "three_step" and int(self.N * self.R2) < 1:
            raise ValueError(
                f"round 3 budget floor(N*R2)={int(self.N * self.R2)} is empty")
        return self


@dataclass
class RunResult:
    plan: ExperimentPlan
    rho_true: np.ndarray
    rho_stages: dict            # rho_E0 / rho_E1 when applicable, always rho_E
    frequencies: dict           # variant tag -> FrequencyTable
    allocations: dict           # round name -> integer allocation vector
    mse_final: float
    frobenius_sq_final: float
    mse_stages: dict
    diagnostics: list
    wall_time: float

    @property
    def rho_estimate(self) -> np.ndarray:
        return self.rho_stages["rho_E"]


def uniform_allocation(budget: int, n_settings: int) -> np.ndarray:
    """floor(budget / settings) everywhere, remainder one-per-setting in order."""
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    base, extra = divmod(int(budget), n_settings)
    alloc = np.full(n_settings, base, dtype=np.int64)
    alloc[:extra] += 1
    return alloc


def combine_two_step(f1: FrequencyTable, f2: FrequencyTable, r: float,
                     allocation: np.ndarray) -> FrequencyTable:
    """f3 = R*f1 + (1-R)*f2 * 3^n N_mu / sum(N_mu), entrywise."""
    allocation = np.asarray(allocation, dtype=float)
    total = allocation.sum()
    if total <= 0:
        raise ValueError("allocation must have positive total")
    boost = allocation.size * allocation / total
    values = r * f1.values + (1.0 - r) * f2.values * boost[:, None]
    return FrequencyTable(values=values, variant="f3")


def combine_three_step(f1: FrequencyTable, f2: FrequencyTable, f4: FrequencyTable,
                       r: float, r2: float, allocation: np.ndarray) -> FrequencyTable:
    """f5 = R*f1 + R2*f2*boost + (1-R-R2)*f4*boost with the round-3 allocation."""
    if r + r2 >= 1.0:
        raise ValueError(f"need R + R2 < 1, got {r} + {r2}")
    allocation = np.asarray(allocation, dtype=float)
    total = allocation.sum()
    if total <= 0:
        raise ValueError("allocation must have positive total")
    boost = allocation.size * allocation / total
    values = (r * f1.values
              + r2 * f2.values * boost[:, None]
              + (1.0 - r - r2) * f4.values * boost[:, None])
    return FrequencyTable(values=values, variant="f5")


def _round_frequencies(plan, rho_true, allocation, round_index):
    if plan.oracle:
        return exact_frequency_table(rho_true, allocation)
    _, freq = measure_round(rho_true, allocation, plan.seed, round_index)
    return freq


def _estimate(plan, freq: FrequencyTable):
    problem = EstimationProblem(projectors=dictionary_matrix(plan.n),
                                frequencies=freq.flat())
    return estimate_density_matrix(problem, plan.solver)


def _select_allocation(plan, rho_estimate, budget):
    s = decompose_l1(rho_estimate, dictionary_matrix(plan.n), plan.selection)
    weights = setting_weights(s, 3**plan.n)
    return allocate_copies(weights, budget), s, weights


def _exact_table(rho, n) -> FrequencyTable:
    values = np.array([born_probabilities(rho, s) for s in enumerate_settings(n)])
    return FrequencyTable(values=values, variant="f4")


def run_fixed(plan: ExperimentPlan) -> RunResult:
    """One uniform round over all settings, estimated directly from f1."""
    plan.validate()
    rho_true = plan.state.build(plan.n)
    start = time.perf_counter()
    alloc = uniform_allocation(plan.N, 3**plan.n)
    f1 = _round_frequencies(plan, rho_true, alloc, round_index=1)
    rho_e, diag = _estimate(plan, f1)
    return _result(plan, rho_true, {"rho_E": rho_e}, {"f1": f1},
                   {"round1": alloc}, [diag], start)


def run_two_step(plan: ExperimentPlan) -> RunResult:
    plan.validate()
    rho_true = plan.state.build(plan.n)
    start = time.perf_counter()
    n_round1 = int(plan.N * plan.R)
    alloc1 = uniform_allocation(n_round1, 3**plan.n)
    f1 = _round_frequencies(plan, rho_true, alloc1, round_index=1)
    rho_e0, diag0 = _estimate(plan, f1)
    alloc2, _, _ = _select_allocation(plan, rho_e0, plan.N - n_round1)
    f2 = _round_frequencies(plan, rho_true, alloc2, round_index=2)
    f3 = combine_two_step(f1, f2, plan.R, alloc2)
    rho_e, diag = _estimate(plan, f3)
    return _result(plan, rho_true, {"rho_E0": rho_e0, "rho_E": rho_e},
                   {"f1": f1, "f2": f2, "f3": f3},
                   {"round1": alloc1, "round2": alloc2}, [diag0, diag], start)


def run_three_step(plan: ExperimentPlan) -> RunResult:
    """Two-step flow plus a third round reallocated from the refined estimate.

    The final blend weights the round-3 measured frequencies by R2 and the
    analytic Born table of the intermediate estimate by 1-R-R2, both boosted
    by the round-3 allocation; round-2 information enters through that
    intermediate estimate.  With eq10_alt the blend instead reuses the
    round-2 data and allocation (round 3 is still measured, its copies
    consumed, but its data unused).
    """
    plan.validate()
    rho_true = plan.state.build(plan.n)
    start = time.perf_counter()
    n_round1 = int(plan.N * plan.R)
    n_round3 = int(plan.N * plan.R2)
    n_round2 = plan.N - n_round1 - n_round3

    alloc1 = uniform_allocation(n_round1, 3**plan.n)
    f1 = _round_frequencies(plan, rho_true, alloc1, round_index=1)
    rho_e0, diag0 = _estimate(plan, f1)

    alloc2, _, _ = _select_allocation(plan, rho_e0, n_round2)
    f2 = _round_frequencies(plan, rho_true, alloc2, round_index=2)
    # Round-1 share of the copies consumed so far weights the interim blend.
    r_eff = plan.R / (plan.R + (1.0 - plan.R - plan.R2))
    f3 = combine_two_step(f1, f2, r_eff, alloc2)
    rho_e1, diag1 = _estimate(plan, f3)

    alloc3, _, _ = _select_allocation(plan, rho_e1, n_round3)
    f2_round3 = _round_frequencies(plan, rho_true, alloc3, round_index=3)
    f4 = _exact_table(rho_e1, plan.n)
    if plan.eq10_alt:
        f5 = combine_three_step(f1, f2, f4, plan.R, plan.R2, alloc2)
    else:
        f5 = combine_three_step(f1, f2_round3, f4, plan.R, plan.R2, alloc3)
    rho_e, diag = _estimate(plan, f5)
    return _result(plan, rho_true,
                   {"rho_E0": rho_e0, "rho_E1": rho_e1, "rho_E": rho_e},
                   {"f1": f1, "f2": f2, "f3": f3, "f2_round3": f2_round3,
                    "f4": f4, "f5": f5},
                   {"round1": alloc1, "round2": alloc2, "round3": alloc3},
                   [diag0, diag1, diag], start)


def run_plan(plan: ExperimentPlan) -> RunResult:
    runner = {"fixed": run_fixed, "two_step": run_two_step,
              "three_step": run_three_step}[plan.method]
    return runner(plan)


def _result(plan, rho_true, rho_stages, frequencies, allocations, diagnostics, start):
    for name, rho in rho_stages.items():
        states.check_density_matrix(rho, name=name)
    mse_stages = {name: mse(rho, rho_true) for name, rho in rho_stages.items()}
    return RunResult(
        plan=plan, rho_true=rho_true, rho_stages=rho_stages,
        frequencies=frequencies, allocations=allocations,
        mse_final=mse_stages["rho_E"],
        frobenius_sq_final=frobenius_sq(rho_stages["rho_E"], rho_true),
        mse_stages=mse_stages, diagnostics=diagnostics,
        wall_time=time.perf_counter() - start)


def save_run_result(result: RunResult, out_dir) -> str:
    """Write a key-value summary plus every stage matrix in the text format."""
    os.makedirs(out_dir, exist_ok=True)
    plan = result.plan
    lines = [
        f"method: {plan.method}",
        f"n: {plan.n}",
        f"state: {plan.state.label()}",
        f"N: {plan.N}",
        f"R: {plan.R!r}",
        f"R2: {plan.R2!r}",
        f"seed: {plan.seed}",
        f"oracle: {plan.oracle}",
        f"mse_final: {result.mse_final!r}",
        f"frobenius_sq_final: {result.frobenius_sq_final!r}",
        f"wall_time_s: {result.wall_time!r}",
    ]
    for name, value in sorted(result.mse_stages.items()):
        lines.append(f"mse_{name}: {value!r}")
    for rnd, alloc in sorted(result.allocations.items()):
        lines.append(f"allocation_{rnd}: " + " ".join(str(int(x)) for x in alloc))
    for i, diag in enumerate(result.diagnostics):
        lines.append(f"solver{i}_iterations: {diag.iterations}")
        lines.append(f"solver{i}_objective: {diag.objective!r}")
        lines.append(f"solver{i}_converged: {diag.converged}")
    summary = os.path.join(out_dir, "result.txt")
    with open(summary, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    for name, rho in result.rho_stages.items():
        states.save_state_file(rho, os.path.join(out_dir, f"{name}.mat"))
    states.save_state_file(result.rho_true, os.path.join(out_dir, "rho_T.mat"))
    return summary


def with_method(plan: ExperimentPlan, method: str) -> ExperimentPlan:
    return replace(plan, method=method)
