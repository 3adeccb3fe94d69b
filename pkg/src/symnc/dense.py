"""Brute-force reference computations in the full 2^N qubit space.

These deliberately avoid the S-matrix machinery: Dicke states are built by
enumerating bit strings and Pauli strings by Kronecker products.  Used by the
test-suite and by ``symnc selfcheck`` to cross-check the Dicke-basis code.
Only sensible for small N (the default guard is N <= 10).
"""
from functools import reduce as _fold
from math import comb

import numpy as np

MAX_QUBITS = 10

PAULIS = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]]),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def _guard(n):
    if n > MAX_QUBITS:
        raise ValueError(f"dense 2^N reference limited to N <= {MAX_QUBITS}, got {n}")


def dicke_basis(n_qubits):
    """Columns are Dicke states |D_N^(k)> in the computational basis (qubit 1 = MSB)."""
    _guard(n_qubits)
    weights = np.array([bin(s).count("1") for s in range(2 ** n_qubits)])
    basis = np.zeros((2 ** n_qubits, n_qubits + 1))
    for k in range(n_qubits + 1):
        basis[weights == k, k] = 1.0 / np.sqrt(comb(n_qubits, k))
    return basis


def expand(state):
    """Dicke-basis vector or matrix -> computational-basis vector or matrix."""
    state = np.asarray(state, dtype=complex)
    b = dicke_basis(state.shape[0] - 1)
    if state.ndim == 1:
        return b @ state
    return b @ state @ b.T


def pauli_string(indices):
    return _fold(np.kron, (PAULIS[mu] for mu in indices))


def correlator(rho_full, indices):
    """tr(rho sigma_mu1 x ... x sigma_muN) for an ordered index tuple."""
    return complex(np.trace(rho_full @ pauli_string(indices)))


def partial_transpose_first(rho_full):
    n = rho_full.shape[0] // 2
    r = rho_full.reshape(2, n, 2, n)
    return r.transpose(2, 1, 0, 3).reshape(2 * n, 2 * n)


def partial_trace_last(rho_full, n_traced=1):
    dim = rho_full.shape[0]
    keep = dim // 2 ** n_traced
    r = rho_full.reshape(keep, 2 ** n_traced, keep, 2 ** n_traced)
    return np.einsum("aibi->ab", r)


def universal_not(n_qubits):
    """Unitary part U of the N-fold universal NOT, which acts as psi -> U conj(psi)."""
    _guard(n_qubits)
    single = PAULIS[3] @ PAULIS[1]
    return _fold(np.kron, [single] * n_qubits)
