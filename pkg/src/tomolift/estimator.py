"""Convex density-matrix estimation from measured frequencies.

Solves min_rho sum_i w_i |q_i* rho q_i - f_i| over the set of Hermitian,
positive-semidefinite, unit-trace matrices by a primal-dual splitting
iteration: the dual step is a clip (the proximal map of the conjugate of the
weighted L1 data term), the primal step projects onto the PSD/trace-one set
through an eigendecomposition and a simplex projection of the spectrum.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np


@dataclass
class SolverConfig:
    max_iterations: int = 5000
    convergence_tolerance: float = 1e-10
    step_size: float = 1.0
    penalty_parameter: float = 1.0   # primal/dual step ratio
    patience: int = 500              # iterations without best-objective progress
    record_trace: bool = False

    def __post_init__(self):
        if min(self.max_iterations, self.convergence_tolerance,
               self.step_size, self.penalty_parameter) <= 0:
            raise ValueError("solver parameters must be positive")


@dataclass
class EstimationProblem:
    """Index-aligned projectors and target frequencies, optionally weighted."""

    projectors: object              # list[ProjectorBasis] or stacked (m, d) lifted vectors
    frequencies: np.ndarray
    weights: np.ndarray | None = None

    def lifted(self) -> np.ndarray:
        if isinstance(self.projectors, np.ndarray):
            return self.projectors
        return np.array([p.q for p in self.projectors])


@dataclass
class EigenDecomposition:
    eigenvalues: np.ndarray   # ascending
    eigenvectors: np.ndarray  # unitary, columns aligned with eigenvalues


@dataclass
class SolveDiagnostics:
    iterations: int
    objective: float
    converged: bool
    trace: list = field(default_factory=list)  # (iteration, best objective, feasibility gap)


def hermitian_eig(h: np.ndarray) -> EigenDecomposition:
    """Spectral decomposition with a fixed eigenvector phase convention.

    The input is symmetrized, eigenvalues come back ascending, and each
    eigenvector is rotated so its largest-magnitude component is real
    positive, making the output deterministic up to degenerate subspaces.
    """
    h = np.asarray(h, dtype=complex)
    if not np.all(np.isfinite(h.view(float))):
        raise ValueError("matrix has non-finite entries")
    h = (h + h.conj().T) / 2
    vals, vecs = np.linalg.eigh(h)
    idx = np.abs(vecs).argmax(axis=0)
    pivots = vecs[idx, np.arange(vecs.shape[1])]
    phases = pivots / np.abs(pivots)
    return EigenDecomposition(eigenvalues=vals, eigenvectors=vecs / phases)


def project_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto {w >= 0, sum w = 1} by sort and threshold."""
    v = np.asarray(v, dtype=float)
    if v.size == 0:
        raise ValueError("cannot project an empty vector")
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    j = np.arange(1, v.size + 1)
    rho = np.nonzero(u - css / j > 0)[0][-1]
    theta = css[rho] / (rho + 1.0)
    return np.maximum(v - theta, 0.0)


def project_psd_trace_one(h: np.ndarray) -> np.ndarray:
    """Nearest (Frobenius) Hermitian PSD unit-trace matrix: project the spectrum."""
    dec = hermitian_eig(h)
    lam = project_simplex(dec.eigenvalues)
    v = dec.eigenvectors
    return (v * lam) @ v.conj().T


def forward_map(rho: np.ndarray, projectors) -> np.ndarray:
    """Vector of q_i* rho q_i over the projector list, via two mat-vec passes."""
    qmat = projectors if isinstance(projectors, np.ndarray) else np.array([p.q for p in projectors])
    if qmat.shape[1] != rho.shape[0]:
        raise ValueError(f"dimension mismatch: projectors dim {qmat.shape[1]}, state {rho.shape}")
    x = qmat.conj() @ rho
    return np.einsum("ij,ij->i", x, qmat).real


def _adjoint_map(qmat: np.ndarray, y: np.ndarray) -> np.ndarray:
    return (qmat.T * y) @ qmat.conj()


def operator_norm(qmat: np.ndarray, iterations: int = 40, seed: int = 0) -> float:
    """Power iteration on rho -> A*(A rho) over Hermitian matrices."""
    d = qmat.shape[1]
    rng = np.random.default_rng(seed)
    h = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    h = (h + h.conj().T) / 2
    lam = 1.0
    for _ in range(iterations):
        h = _adjoint_map(qmat, forward_map(h, qmat))
        lam = np.linalg.norm(h)
        h = h / lam
    return float(np.sqrt(lam))


def estimate_density_matrix(problem: EstimationProblem,
                            config: SolverConfig | None = None):
    """Run the primal-dual solver; returns (best iterate, diagnostics).

    The returned matrix is always feasible (PSD, unit trace) because primal
    iterates are projections; the iterate with the lowest data objective seen
    so far is kept and reported.
    """
    config = config or SolverConfig()
    qmat = problem.lifted()
    f = np.asarray(problem.frequencies, dtype=float).ravel()
    if qmat.shape[0] != f.size:
        raise ValueError(f"{qmat.shape[0]} projectors vs {f.size} frequencies")
    w = np.ones(f.size) if problem.weights is None else np.asarray(problem.weights, dtype=float)
    if (w < 0).any():
        raise ValueError("weights must be nonnegative")
    d = qmat.shape[1]

    norm_a = operator_norm(qmat)
    tau = 0.95 * config.step_size * config.penalty_parameter / norm_a
    sigma = 0.95 * config.step_size / (config.penalty_parameter * norm_a)

    rho = np.eye(d, dtype=complex) / d
    y = np.zeros(f.size)
    a_cur = forward_map(rho, qmat)
    a_bar = a_cur

    best_obj = float(w @ np.abs(a_cur - f))
    best_rho = rho.copy()
    last_improve = 0
    converged = False
    trace = []
    it = 0
    for it in range(1, config.max_iterations + 1):
        # dual ascent on the L1 conjugate: clip into [-w, w]
        y = np.clip(y + sigma * (a_bar - f), -w, w)
        rho_next = project_psd_trace_one(rho - tau * _adjoint_map(qmat, y))
        a_next = forward_map(rho_next, qmat)
        obj = float(w @ np.abs(a_next - f))
        if obj < best_obj:
            if obj < best_obj - config.convergence_tolerance:
                last_improve = it
            best_obj = obj
            best_rho = rho_next
        a_bar = 2 * a_next - a_cur  # overrelaxed dual input A(2 rho_next - rho)
        rho, a_cur = rho_next, a_next
        if config.record_trace and (it % 10 == 0 or it == 1):
            trace.append((it, best_obj, 0.0))
        if it - last_improve >= config.patience:
            converged = True
            break
    return best_rho, SolveDiagnostics(iterations=it, objective=best_obj,
                                      converged=converged, trace=trace)


def dump_diagnostics(path, diag: SolveDiagnostics) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["iteration", "objective", "feasibility_gap"])
        for row in diag.trace:
            w.writerow(list(row))
