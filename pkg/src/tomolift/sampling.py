"""Finite-shot measurement simulation: multinomial counts and relative frequencies.

Randomness discipline: every (trial, round, setting) triple gets an
independent substream derived from the base seed through
``numpy.random.SeedSequence([base_seed, round_index, setting_index])`` (the
trial index is already folded into the per-run base seed by the benchmark
layer), so distinct settings and rounds may be sampled concurrently without
sharing generator state.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .pauli import PauliSetting, born_probabilities, enumerate_settings


@dataclass
class CountTable:
    """Per-(setting, outcome) integer counts plus shots per setting."""

    counts: np.ndarray  # (3^n, 2^n) int64
    shots: np.ndarray   # (3^n,) int64


@dataclass
class FrequencyTable:
    """Per-(setting, outcome) real values; the variant tag tracks provenance.

    f1/f2 are measured relative frequencies (rows of unmeasured settings are
    all zero), f3/f5 are boosted combinations whose rows may sum past 1, and
    f4 holds exact Born probabilities of an intermediate estimate.
    """

    values: np.ndarray  # (3^n, 2^n) float64
    variant: str = "f1"

    def flat(self) -> np.ndarray:
        return self.values.ravel()


def substream(base_seed: int, round_index: int, setting_index: int) -> np.random.Generator:
    ss = np.random.SeedSequence([int(base_seed), int(round_index), int(setting_index)])
    return np.random.default_rng(ss)


def simulate_counts(rho: np.ndarray, setting: PauliSetting, shots: int,
                    rng: np.random.Generator) -> np.ndarray:
    """Multinomial draw of `shots` outcomes from the Born probabilities."""
    if shots < 0:
        raise ValueError(f"shots must be >= 0, got {shots}")
    p = born_probabilities(rho, setting)
    if shots == 0:
        return np.zeros(p.size, dtype=np.int64)
    # rng.multinomial uses the conditional sequential-binomial method.
    return rng.multinomial(int(shots), p / p.sum()).astype(np.int64)


def measure_round(rho: np.ndarray, allocation: np.ndarray, base_seed: int,
                  round_index: int = 0) -> tuple[CountTable, FrequencyTable]:
    """Measure every setting with its allocated shots; zero shots give zero rows."""
    allocation = np.asarray(allocation, dtype=np.int64)
    if (allocation < 0).any():
        raise ValueError("allocation entries must be nonnegative")
    n = int(np.round(np.log(allocation.size) / np.log(3)))
    settings = enumerate_settings(n)
    if len(settings) != allocation.size:
        raise ValueError(f"allocation length {allocation.size} is not a power of 3")
    counts = np.zeros((len(settings), 2**n), dtype=np.int64)
    freq = np.zeros((len(settings), 2**n))
    for i, setting in enumerate(settings):
        shots = int(allocation[i])
        rng = substream(base_seed, round_index, setting.index)
        counts[i] = simulate_counts(rho, setting, shots, rng)
        if shots > 0:
            freq[i] = counts[i] / shots
    return CountTable(counts=counts, shots=allocation.copy()), FrequencyTable(values=freq)


def exact_frequency_table(rho: np.ndarray, allocation: np.ndarray) -> FrequencyTable:
    """Oracle-mode stand-in for measure_round: exact Born rows where shots > 0."""
    allocation = np.asarray(allocation, dtype=np.int64)
    n = int(np.round(np.log(allocation.size) / np.log(3)))
    settings = enumerate_settings(n)
    freq = np.zeros((len(settings), 2**n))
    for i, setting in enumerate(settings):
        if allocation[i] > 0:
            freq[i] = born_probabilities(rho, setting)
    return FrequencyTable(values=freq)


def dump_count_table(path, table: CountTable, trial: int = 0, round_index: int = 0) -> None:
    """Append-style CSV dump with columns (trial, round, setting, outcome, count, shots)."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["trial", "round", "setting_index", "outcome_index", "count", "shots"])
        for i in range(table.counts.shape[0]):
            for j in range(table.counts.shape[1]):
                w.writerow([trial, round_index, i + 1, j + 1,
                            int(table.counts[i, j]), int(table.shots[i])])
