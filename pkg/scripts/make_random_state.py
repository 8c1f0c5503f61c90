#!/usr/bin/env python3
"""Generate the published benchmark state in configs/random_state.mat.

The state is a seeded random two-qubit Clifford-circuit pure state mixed with
a small depolarizing admixture.  The circuit seed, depth and mixing weight are
pinned so the file is reproducible from this script alone; regenerating must
leave the checked-in file unchanged.
"""

import argparse
import os

import numpy as np

from tomolift import states

CIRCUIT_SEED = 3
CIRCUIT_DEPTH = 30
MIXING = 0.0003

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_S = np.diag([1, 1j]).astype(complex)
_CNOT01 = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
                   dtype=complex)
_CNOT10 = np.array([[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]],
                   dtype=complex)


def _one_qubit(gate, qubit):
    ops = [np.eye(2, dtype=complex), np.eye(2, dtype=complex)]
    ops[qubit] = gate
    return np.kron(ops[0], ops[1])


def random_circuit_state(seed=CIRCUIT_SEED, depth=CIRCUIT_DEPTH):
    """Pure two-qubit state from a seeded random H/S/CNOT circuit on |00>."""
    rng = np.random.default_rng(seed)
    psi = np.zeros(4, dtype=complex)
    psi[0] = 1.0
    for _ in range(depth):
        kind = rng.integers(3)
        if kind == 0:
            psi = _one_qubit(_H, int(rng.integers(2))) @ psi
        elif kind == 1:
            psi = _one_qubit(_S, int(rng.integers(2))) @ psi
        else:
            a, b = rng.permutation(2)[:2]
            psi = (_CNOT01 if (a, b) == (0, 1) else _CNOT10) @ psi
    return np.outer(psi, psi.conj())


def build_state(mixing=MIXING):
    rho = random_circuit_state()
    return (1.0 - mixing) * rho + mixing * np.eye(4) / 4


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    default_out = os.path.join(os.path.dirname(os.path.dirname(
        os.path.abspath(__file__))), "configs", "random_state.mat")
    parser.add_argument("--out", default=default_out)
    args = parser.parse_args()
    rho = build_state()
    states.check_density_matrix(rho)
    states.save_state_file(rho, args.out)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
