"""Measurement-setting selection: L1-minimal dictionary decomposition and
conversion of per-setting coefficient mass into an integer copy allocation."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .estimator import operator_norm


class SelectionError(RuntimeError):
    def __init__(self, message, best_residual=None):
        super().__init__(message)
        self.best_residual = best_residual


@dataclass
class SelectionConfig:
    epsilon: float = 1e-5        # Frobenius residual bound on the reconstruction
    max_iterations: int = 3000   # inner iterations per penalty stage
    max_stages: int = 40         # penalty halvings before giving up
    inner_tolerance: float = 1e-14

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")


def _synthesize(qmat: np.ndarray, s: np.ndarray) -> np.ndarray:
    """sum_i s_i q_i q_i* as a dense Hermitian matrix."""
    return (qmat.T * s) @ qmat.conj()


def _correlate(qmat: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Adjoint of _synthesize: real part of q_i* h q_i per dictionary element."""
    x = qmat.conj() @ h
    return np.einsum("ij,ij->i", x, qmat).real


def decompose_l1(rho: np.ndarray, qmat: np.ndarray,
                 config: SelectionConfig | None = None) -> np.ndarray:
    """Small-L1 coefficient vector s with ||sum_i s_i q_i q_i* - rho||_F <= epsilon.

    Works on the penalized form min lam*||s||_1 + 0.5*||sum s_i M_i - rho||_F^2
    with an accelerated proximal-gradient inner loop, halving lam (homotopy,
    warm-started) until the residual bound holds.
    """
    config = config or SelectionConfig()
    lip = operator_norm(qmat) ** 2
    step = 1.0 / lip
    s = np.zeros(qmat.shape[0])
    lam = float(np.abs(_correlate(qmat, rho)).max())
    best_residual = np.inf
    best_s = s
    for _ in range(config.max_stages):
        s = _fista_stage(rho, qmat, s, lam, step, config)
        residual = float(np.linalg.norm(_synthesize(qmat, s) - rho))
        if residual < best_residual:
            best_residual, best_s = residual, s
        if residual <= config.epsilon:
            return s
        lam /= 2.0
    raise SelectionError(
        f"residual bound {config.epsilon} unreachable; best residual {best_residual:.3e}",
        best_residual=best_residual,
    )


def _fista_stage(rho, qmat, s0, lam, step, config):
    s = s0.copy()
    z = s0.copy()
    t = 1.0
    prev_obj = np.inf
    for k in range(config.max_iterations):
        resid = _synthesize(qmat, z) - rho
        grad = _correlate(qmat, resid)
        u = z - step * grad
        s_next = np.sign(u) * np.maximum(np.abs(u) - step * lam, 0.0)
        t_next = (1.0 + np.sqrt(1.0 + 4.0 * t * t)) / 2.0
        z = s_next + ((t - 1.0) / t_next) * (s_next - s)
        s, t = s_next, t_next
        if k % 25 == 0:
            r = _synthesize(qmat, s) - rho
            obj = lam * np.abs(s).sum() + 0.5 * np.linalg.norm(r) ** 2
            if prev_obj - obj < config.inner_tolerance * max(1.0, abs(obj)):
                break
            prev_obj = obj
    return s


def setting_weights(s: np.ndarray, n_settings: int) -> list[Fraction]:
    """Per-setting share of absolute coefficient mass, as exact rationals.

    Absolute values are taken before summing: the dictionary of rank-1
    projectors needs signed coefficients in general, and a raw signed sum
    could produce negative shares.
    """
    s = np.asarray(s, dtype=float)
    if s.size % n_settings:
        raise ValueError(f"coefficient length {s.size} not divisible by {n_settings}")
    per = np.abs(s).reshape(n_settings, -1).sum(axis=1)
    masses = [Fraction(float(x)) for x in per]
    total = sum(masses)
    if total == 0:
        raise ValueError("all-zero coefficient vector has no setting weights")
    return [m / total for m in masses]


def allocate_copies(weights, budget: int) -> np.ndarray:
    """Largest-remainder apportionment of `budget` copies across settings.

    Exact rational arithmetic keeps the total equal to the budget; remainder
    ties break toward the lower setting index.
    """
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    w = [Fraction(x) if not isinstance(x, Fraction) else x for x in weights]
    if any(x < 0 for x in w):
        raise ValueError("weights must be nonnegative")
    total = sum(w)
    if total == 0:
        if budget:
            raise ValueError("cannot allocate a positive budget over zero weights")
        return np.zeros(len(w), dtype=np.int64)
    shares = [x / total * budget for x in w]
    counts = np.array([int(x) for x in shares], dtype=np.int64)  # floor for x >= 0
    leftover = budget - int(counts.sum())
    order = sorted(range(len(w)), key=lambda i: (-(shares[i] - counts[i]), i))
    for i in order[:leftover]:
        counts[i] += 1
    return counts


def dump_selection(path, s: np.ndarray, weights, allocation) -> None:
    """CSV with one row per setting: coefficient mass, weight share, copies."""
    n_settings = len(allocation)
    per = np.abs(np.asarray(s)).reshape(n_settings, -1).sum(axis=1)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["setting_index", "coefficient_mass", "weight", "copies"])
        for i in range(n_settings):
            w.writerow([i + 1, repr(float(per[i])), repr(float(weights[i])),
                        int(allocation[i])])
