"""Universal-NOT, antistates and the spectral pairing of SNC states."""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import _kernels
from .nocorr import DEFAULT_TOL as SNC_TOL, snc_report
from .symrep import n_qubits_of, projector, to_tensor

CLUSTER_TOL = 1e-8
PURITY_BOUND = 0.5
LEADING_COEFF_TOL = 1e-12


class NotSNCError(ValueError):
    """State has nonvanishing N-partite correlations."""


class PairingError(ValueError):
    """An eigenspace could not be split into state/antistate pairs."""


class PurityBoundWarning(UserWarning):
    pass


def _unot_matrix(n_qubits: int) -> np.ndarray:
    # antistate(psi) = U @ conj(psi) with U[j, N-j] = (-1)^j
    u = np.zeros((n_qubits + 1, n_qubits + 1))
    for j in range(n_qubits + 1):
        u[j, n_qubits - j] = (-1.0) ** j
    return u


def antistate(psi: np.ndarray) -> np.ndarray:
    """Apply the universal NOT to every qubit of a symmetric pure state."""
    psi = np.asarray(psi, dtype=complex)
    n = n_qubits_of(psi)
    out = (-1.0) ** np.arange(n + 1) * psi[::-1].conj()
    norm = np.linalg.norm(out)
    return out / norm if norm > 0 else out


def unot_conjugate(rho: np.ndarray) -> np.ndarray:
    """``N^{xN} rho N^{xN}^dagger`` in the Dicke basis."""
    rho = np.asarray(rho, dtype=complex)
    u = _unot_matrix(n_qubits_of(rho))
    return u @ rho.conj() @ u.T


@dataclass(frozen=True)
class SpectralPairing:
    """``rho = sum_i weight_i (|psi_i><psi_i| + |psibar_i><psibar_i|)``."""

    n_qubits: int
    pairs: list[tuple[float, np.ndarray, np.ndarray]]

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for w, _, _ in self.pairs])

    def reconstruct(self) -> np.ndarray:
        d = self.n_qubits + 1
        rho = np.zeros((d, d), dtype=complex)
        for w, psi, bar in self.pairs:
            rho += w * (projector(psi) + projector(bar))
        return rho

    def max_overlap_error(self) -> float:
        """Largest |<u|v>| over distinct vectors of the pairing."""
        vecs = [v for _, psi, bar in self.pairs for v in (psi, bar)]
        if len(vecs) < 2:
            return 0.0
        gram = np.array(vecs).conj() @ np.array(vecs).T
        return float(np.abs(gram - np.diag(np.diag(gram))).max())

    def to_json(self) -> dict:
        def enc(v):
            return [[float(z.real), float(z.imag)] for z in v]

        return {
            "n_qubits": self.n_qubits,
            "repr": "pairing",
            "data": [
                {"weight": float(w), "psi": enc(psi), "psibar": enc(bar)}
                for w, psi, bar in self.pairs
            ],
        }


def _clusters(evals: np.ndarray, tol: float) -> list[list[int]]:
    groups = [[0]]
    for i in range(1, len(evals)):
        if evals[i] - evals[i - 1] <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def pair_decompose(
    rho: np.ndarray,
    tol: float = CLUSTER_TOL,
    snc_tol: float = SNC_TOL,
    keep_zero: bool = False,
) -> SpectralPairing:
    """Split the spectrum of an SNC state into state/antistate pairs.

    Each eigenvalue cluster (consecutive gaps <= ``tol``) is paired greedily:
    take an eigenvector, add its antistate, restrict to the orthogonal
    complement inside the cluster, repeat.  Pairs with zero weight are dropped
    unless ``keep_zero``.
    """
    rho = np.asarray(rho, dtype=complex)
    n = n_qubits_of(rho)
    report = snc_report(to_tensor(rho), snc_tol)
    if not report.is_snc:
        raise NotSNCError(report.reason)
    evals, evecs = np.linalg.eigh(rho)
    pairs = []
    for group in _clusters(evals, tol):
        if len(group) % 2:
            raise PairingError(
                f"eigenvalue cluster near {evals[group[0]]:.6g} has odd dimension {len(group)}"
            )
        lam = float(np.mean(evals[group]))
        basis = evecs[:, group]
        while basis.shape[1]:
            psi = basis[:, 0]
            bar = antistate(psi)
            inside = basis @ (basis.conj().T @ bar)
            if np.linalg.norm(inside) < 0.5:
                raise PairingError("antistate left the eigenspace; is tol too small?")
            rest = basis - np.outer(psi, psi.conj() @ basis)
            rest = rest - np.outer(inside, inside.conj() @ rest) / np.vdot(inside, inside).real
            u, _, _ = np.linalg.svd(rest, full_matrices=False)
            basis = u[:, : basis.shape[1] - 2]
            if lam > tol or keep_zero:
                pairs.append((lam, psi, bar))
    return SpectralPairing(n, pairs)


def purity_check(rho: np.ndarray) -> float:
    """Return tr(rho^2); warn if it exceeds the SNC bound of 1/2."""
    rho = np.asarray(rho)
    purity = float(np.real(np.vdot(rho, rho)))
    if purity > PURITY_BOUND + 1e-10:
        warnings.warn(
            f"purity {purity:.12g} exceeds 1/2; state cannot lack N-partite correlations",
            PurityBoundWarning,
            stacklevel=2,
        )
    return purity


# ---------------------------------------------------------------------------
# Majorana representation
# ---------------------------------------------------------------------------

def majorana_polynomial(psi: np.ndarray) -> np.ndarray:
    """Coefficients ``a_k = (-1)^k sqrt(C(N,k)) c_k``, lowest degree first."""
    psi = np.asarray(psi, dtype=complex)
    n = n_qubits_of(psi)
    sqrtb = np.sqrt(_kernels.binom_table(n)[n, : n + 1])
    return (-1.0) ** np.arange(n + 1) * sqrtb * psi


def majorana_roots(psi: np.ndarray) -> np.ndarray:
    """Majorana points of a pure symmetric state as an (N, 3) array of unit vectors.

    A root ``z`` maps to the point with ``theta = 2 arctan(1/|z|)`` and
    ``phi = -arg z``, so a product state ``|n>^{xN}`` gives N copies of ``n``.
    Roots lost to a degree drop (leading coefficients below 1e-12 relative)
    sit at infinity, i.e. the north pole.
    """
    coeffs = majorana_polynomial(psi)
    n = len(coeffs) - 1
    scale = np.abs(coeffs).max()
    if scale == 0:
        raise ValueError("zero vector has no Majorana representation")
    nz = np.nonzero(np.abs(coeffs) > LEADING_COEFF_TOL * scale)[0]
    degree = int(nz[-1])
    # np.roots works on the companion matrix; it wants highest degree first
    roots = np.roots(coeffs[: degree + 1][::-1]) if degree > 0 else np.array([])
    theta = 2.0 * np.arctan2(1.0, np.abs(roots))
    phi = -np.angle(roots)
    points = np.column_stack(
        [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)]
    )
    north = np.tile([0.0, 0.0, 1.0], (n - degree, 1))
    return np.vstack([points.reshape(-1, 3), north])


def match_points(a: np.ndarray, b: np.ndarray) -> float:
    """Largest distance between two point multisets under the best pairing."""
    cost = np.linalg.norm(a[:, None, :] - b[None, :, :], axis=-1)
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max()) if len(rows) else 0.0


def verify_antipodal(psi: np.ndarray) -> float:
    """Mismatch between the antistate's Majorana points and the antipodes of psi's."""
    return match_points(majorana_roots(antistate(psi)), -majorana_roots(psi))
