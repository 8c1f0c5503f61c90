"""Pauli measurement settings and rank-1 projectors in lifted vector form.

A measurement setting assigns one Pauli axis (X, Y or Z) to each qubit, so an
n-qubit system has 3^n settings with 2^n outcomes each.  Every outcome
projector M is rank one and is stored only through its lifted vector Q with
M = Q Q*, which needs O(2^n) memory instead of O(4^n).  Full matrices are
materialized only in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

AXES = "XYZ"
MAX_QUBITS = 5

_SQ2 = 1.0 / np.sqrt(2.0)

# Columns are the +1 and -1 eigenvectors of each single-qubit Pauli operator.
_EIGVECS = {
    "X": np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex),
    "Y": np.array([[_SQ2, _SQ2], [1j * _SQ2, -1j * _SQ2]], dtype=complex),
    "Z": np.array([[1.0, 0.0], [0.0, 1.0]], dtype=complex),
}


def check_qubit_count(n):
    if not isinstance(n, (int, np.integer)) or not 1 <= int(n) <= MAX_QUBITS:
        raise ValueError(f"qubit count must be an integer in [1, {MAX_QUBITS}], got {n!r}")
    return int(n)


@dataclass(frozen=True)
class PauliSetting:
    """One axis per qubit plus its 1-based position in the lexicographic enumeration."""

    axes: str
    index: int

    def __post_init__(self):
        if not self.axes or any(a not in AXES for a in self.axes):
            raise ValueError(f"axes must be a nonempty word over {AXES!r}, got {self.axes!r}")

    @property
    def n(self) -> int:
        return len(self.axes)


@dataclass(frozen=True)
class ProjectorBasis:
    """Rank-1 measurement projector M = q q* kept as its lifted vector q."""

    setting: PauliSetting
    outcome: int
    q: np.ndarray

    def matrix(self) -> np.ndarray:
        """Materialize the 2^n x 2^n projector (test/diagnostic use only)."""
        return np.outer(self.q, self.q.conj())


def enumerate_settings(n) -> list[PauliSetting]:
    """All 3^n settings in lexicographic order over (X, Y, Z), indexed from 1."""
    n = check_qubit_count(n)
    words = [""]
    for _ in range(n):
        words = [w + a for w in words for a in AXES]
    return [PauliSetting(axes=w, index=i + 1) for i, w in enumerate(words)]


@lru_cache(maxsize=512)
def _basis_matrix(axes: str) -> np.ndarray:
    """Unitary whose columns are the tensor-product eigenvectors of a setting.

    Column nu-1 is the lifted vector of outcome nu; outcome bits (first qubit
    most significant) select the +1 eigenvector for bit 0 and the -1
    eigenvector for bit 1.
    """
    v = _EIGVECS[axes[0]]
    for a in axes[1:]:
        v = np.kron(v, _EIGVECS[a])
    v.setflags(write=False)
    return v


def projector(setting: PauliSetting, outcome: int) -> ProjectorBasis:
    """Lifted projector for a (setting, outcome) pair; outcome is 1-based."""
    dim = 2 ** setting.n
    if not 1 <= outcome <= dim:
        raise ValueError(f"outcome must be in [1, {dim}], got {outcome}")
    q = _basis_matrix(setting.axes)[:, outcome - 1].copy()
    return ProjectorBasis(setting=setting, outcome=outcome, q=q)


def setting_projectors(setting: PauliSetting) -> list[ProjectorBasis]:
    return [projector(setting, nu) for nu in range(1, 2 ** setting.n + 1)]


def full_dictionary(n) -> list[ProjectorBasis]:
    """All 3^n * 2^n projectors, setting-major then outcome order."""
    return [p for s in enumerate_settings(n) for p in setting_projectors(s)]


def lifted_matrix(projectors) -> np.ndarray:
    """Stack lifted vectors into an (m, 2^n) array, one projector per row."""
    return np.array([p.q for p in projectors])


@lru_cache(maxsize=16)
def dictionary_matrix(n) -> np.ndarray:
    """Stacked lifted vectors of the full dictionary, cached per qubit count."""
    q = lifted_matrix(full_dictionary(n))
    q.setflags(write=False)
    return q


def born_probabilities(rho: np.ndarray, setting: PauliSetting) -> np.ndarray:
    """Outcome probabilities p_nu = q_nu* rho q_nu, clamped to [0, 1].

    Works entirely through the lifted vectors; the projector matrices are
    never formed.
    """
    dim = 2 ** setting.n
    if rho.shape != (dim, dim):
        raise ValueError(f"state has shape {rho.shape}, setting expects {(dim, dim)}")
    v = _basis_matrix(setting.axes)
    p = np.einsum("iv,ij,jv->v", v.conj(), rho, v).real
    if p.min() < -1e-12 or p.max() > 1 + 1e-12:
        raise ValueError(f"probabilities outside [0,1] beyond tolerance: {p}")
    return np.clip(p, 0.0, 1.0)
