"""Test-state generators, density-matrix validation, and matrix file I/O."""

from __future__ import annotations

import numpy as np

from .pauli import check_qubit_count

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-9
EIGENVALUE_TOL = 1e-9


def check_density_matrix(rho: np.ndarray, name: str = "state") -> np.ndarray:
    """Validate Hermiticity, unit trace and positive semidefiniteness."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"{name}: expected a square matrix, got shape {rho.shape}")
    if not np.all(np.isfinite(rho.view(float))):
        raise ValueError(f"{name}: non-finite entries")
    herm_gap = np.abs(rho - rho.conj().T).max()
    if herm_gap > HERMITICITY_TOL:
        raise ValueError(f"{name}: not Hermitian (gap {herm_gap:.3e})")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise ValueError(f"{name}: trace {tr!r} differs from 1 beyond {TRACE_TOL}")
    lo = np.linalg.eigvalsh((rho + rho.conj().T) / 2).min()
    if lo < -EIGENVALUE_TOL:
        raise ValueError(f"{name}: smallest eigenvalue {lo:.3e} below -{EIGENVALUE_TOL}")
    return rho


def pure_state_density(amplitudes: np.ndarray) -> np.ndarray:
    psi = np.asarray(amplitudes, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def make_cat_state(n) -> np.ndarray:
    """(|0...0> + |1...1>)/sqrt(2) as a density matrix."""
    n = check_qubit_count(n)
    psi = np.zeros(2**n, dtype=complex)
    psi[0] = psi[-1] = 1.0
    return pure_state_density(psi)


def make_noon_state(n) -> np.ndarray:
    """Half-split excitation superposition; for n=2 this is (|01>+|10>)/sqrt(2).

    The excited register is the last n//2 qubits, mirrored in the second
    branch.
    """
    n = check_qubit_count(n)
    if n < 2:
        raise ValueError("NOON state needs at least 2 qubits")
    k = n // 2
    a = (1 << k) - 1          # |0...0 1...1>
    b = (2**n - 1) ^ a        # |1...1 0...0>
    psi = np.zeros(2**n, dtype=complex)
    psi[a] = psi[b] = 1.0
    return pure_state_density(psi)


def make_w_state(n) -> np.ndarray:
    """Equal superposition of all single-excitation basis states."""
    n = check_qubit_count(n)
    if n < 2:
        raise ValueError("W state needs at least 2 qubits")
    psi = np.zeros(2**n, dtype=complex)
    for k in range(n):
        psi[1 << k] = 1.0
    return pure_state_density(psi)


def maximally_mixed(n) -> np.ndarray:
    n = check_qubit_count(n)
    d = 2**n
    return np.eye(d, dtype=complex) / d


def random_density_matrix(n, rank: int, seed: int) -> np.ndarray:
    """Normalized Ginibre construction A A* / Tr(A A*), deterministic per seed."""
    n = check_qubit_count(n)
    d = 2**n
    if not 1 <= rank <= d:
        raise ValueError(f"rank must be in [1, {d}], got {rank}")
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def purity(rho: np.ndarray) -> float:
    return float(np.trace(rho @ rho).real)


def _format_complex(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}i"


def save_state_file(rho: np.ndarray, path) -> None:
    """Write the plain-text matrix format: 'dim d' header then d rows of a+bi."""
    rho = np.asarray(rho, dtype=complex)
    d = rho.shape[0]
    lines = [f"dim {d}"]
    for row in rho:
        lines.append(" ".join(_format_complex(z) for z in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_state_file(path) -> np.ndarray:
    """Parse the matrix file format and validate density-matrix invariants."""
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or not lines[0].startswith("dim "):
        raise ValueError(f"{path}: first line must be 'dim d'")
    try:
        d = int(lines[0].split()[1])
    except (IndexError, ValueError) as exc:
        raise ValueError(f"{path}: malformed dim header {lines[0]!r}") from exc
    if len(lines) != d + 1:
        raise ValueError(f"{path}: expected {d} matrix rows, found {len(lines) - 1}")
    rho = np.empty((d, d), dtype=complex)
    for i, line in enumerate(lines[1:]):
        toks = line.split()
        if len(toks) != d:
            raise ValueError(f"{path}: row {i + 1} has {len(toks)} entries, expected {d}")
        for j, tok in enumerate(toks):
            try:
                rho[i, j] = complex(tok.replace("i", "j"))
            except ValueError as exc:
                raise ValueError(f"{path}: bad complex entry {tok!r} at ({i + 1},{j + 1})") from exc
    return check_density_matrix(rho, name=str(path))
