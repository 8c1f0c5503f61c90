"""Error metrics between density matrices."""

from __future__ import annotations

import numpy as np


def _check_shapes(a: np.ndarray, b: np.ndarray):
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")


def frobenius_sq(a: np.ndarray, b: np.ndarray) -> float:
    """Raw squared Frobenius distance, reported alongside the per-entry MSE."""
    _check_shapes(a, b)
    return float(np.abs(a - b).ravel() @ np.abs(a - b).ravel())


def mse(a: np.ndarray, b: np.ndarray) -> float:
    """Per-entry mean squared deviation: ||a - b||_F^2 / d^2."""
    _check_shapes(a, b)
    return frobenius_sq(a, b) / a.size


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Half the sum of absolute eigenvalues of the (Hermitian) difference."""
    _check_shapes(a, b)
    delta = a - b
    delta = (delta + delta.conj().T) / 2
    return 0.5 * float(np.abs(np.linalg.eigvalsh(delta)).sum())
