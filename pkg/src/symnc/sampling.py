"""Seeded random symmetric states."""
from __future__ import annotations

import numpy as np

from .antistate import antistate


def random_pure(n_qubits: int, rng: np.random.Generator) -> np.ndarray:
    psi = rng.normal(size=n_qubits + 1) + 1j * rng.normal(size=n_qubits + 1)
    return psi / np.linalg.norm(psi)


def random_density(n_qubits: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Ginibre-distributed symmetric state of the given rank (full rank by default)."""
    d = n_qubits + 1
    r = d if rank is None else rank
    g = rng.normal(size=(d, r)) + 1j * rng.normal(size=(d, r))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_snc(
    n_qubits: int, rng: np.random.Generator, n_pairs: int | None = None
) -> np.ndarray:
    """Random state without N-partite correlations, N odd.

    Draws ``n_pairs`` (default all ``(N+1)/2``) random pure states, each made
    orthogonal to every earlier state and antistate, and mixes each with its
    antistate using Dirichlet weights that sum to 1/2.
    """
    if n_qubits % 2 == 0:
        raise ValueError("SNC states exist only for odd N")
    max_pairs = (n_qubits + 1) // 2
    k = max_pairs if n_pairs is None else n_pairs
    if not 1 <= k <= max_pairs:
        raise ValueError(f"n_pairs must be in 1..{max_pairs}")
    weights = 0.5 * rng.dirichlet(np.ones(k))
    taken: list[np.ndarray] = []
    rho = np.zeros((n_qubits + 1, n_qubits + 1), dtype=complex)
    for lam in weights:
        psi = rng.normal(size=n_qubits + 1) + 1j * rng.normal(size=n_qubits + 1)
        for _ in range(2):
            for v in taken:
                psi = psi - v * np.vdot(v, psi)
        psi /= np.linalg.norm(psi)
        bar = antistate(psi)
        taken += [psi, bar]
        rho += lam * (np.outer(psi, psi.conj()) + np.outer(bar, bar.conj()))
    return rho
