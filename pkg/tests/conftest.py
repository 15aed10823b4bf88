"""Shared oracles and helpers used across the test modules.

Everything here is deliberately independent of the library internals:
the transform oracle is a dense matrix product, the overlap oracle is a
plain loop, and the split-sum oracle recomputes partial contractions
from scratch. Tests compare the fast implementations against these.
"""

import numpy as np

from shorent.statevector import StateVector


def dft_matrix(L: int) -> np.ndarray:
    """Dense 2^L x 2^L transform matrix with the e^{+2*pi*i*a*c/q} kernel."""
    q = 1 << L
    grid = np.outer(np.arange(q), np.arange(q))
    return np.exp(2j * np.pi * grid / q) / np.sqrt(q)


def naive_overlap(state: StateVector, ansatz) -> complex:
    """Loop form of <state|product ansatz>, one basis index at a time."""
    vectors = ansatz.qubit_vectors()
    L = state.num_qubits
    total = 0.0 + 0.0j
    for j in range(1 << L):
        term = np.conj(state.amplitudes[j])
        for k in range(1, L + 1):
            bit = (j >> (L - k)) & 1
            term *= vectors[k - 1][bit]
        total += term
    return total


def split_sums_direct(state: StateVector, ansatz, k: int) -> tuple[complex, complex]:
    """Recompute the two qubit-k partial sums that the optimizer maintains.

    c is the overlap restricted to basis states with bit k = 0 and with
    qubit k's ansatz factor removed; d is the bit-1 counterpart.
    """
    vectors = ansatz.qubit_vectors()
    L = state.num_qubits
    c = 0.0 + 0.0j
    d = 0.0 + 0.0j
    for j in range(1 << L):
        term = np.conj(state.amplitudes[j])
        for kk in range(1, L + 1):
            if kk == k:
                continue
            bit = (j >> (L - kk)) & 1
            term *= vectors[kk - 1][bit]
        if (j >> (L - k)) & 1:
            d += term
        else:
            c += term
    return c, d


def random_unitary_2x2(rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def apply_single_qubit_unitary(state: StateVector, k: int, u: np.ndarray) -> StateVector:
    a = state.amplitudes.reshape(1 << (k - 1), 2, -1)
    b = np.einsum("ab,ibj->iaj", u, a)
    return StateVector(state.num_qubits, b.reshape(-1))


def permute_qubits(state: StateVector, perm) -> StateVector:
    """Reorder qubits so that new position i holds old qubit perm[i-1]."""
    L = state.num_qubits
    tensor = state.amplitudes.reshape((2,) * L)
    moved = tensor.transpose([p - 1 for p in perm])
    return StateVector(L, moved.reshape(-1))


def schmidt_pmax(state: StateVector) -> float:
    """Exact best product overlap for two qubits via the singular values."""
    assert state.num_qubits == 2
    m = state.amplitudes.reshape(2, 2)
    s = np.linalg.svd(m, compute_uv=False)
    return float(s[0] ** 2)
