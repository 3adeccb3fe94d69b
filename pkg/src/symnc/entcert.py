"""Entanglement certifiers for symmetric states.

Two kinds of test live here.  Sufficient (one-sided) tests can only ever
certify genuine entanglement and otherwise answer ``Undetected``.  Exact
tests apply where the problem is fully solved: three-qubit states without
three-body correlations (``A >= 0``), rank-2 SNC states, and the
qubit-vs-rest partial transpose for N <= 3.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _kernels
from .antistate import CLUSTER_TOL, NotSNCError, antistate
from .nocorr import DEFAULT_TOL as SNC_TOL, snc_report
from .symrep import (
    BlochVector,
    PauliCounts,
    SymTensor,
    coherent_state,
    embed_one_qubit,
    n_qubits_of,
    to_tensor,
)

DEFAULT_GRID = 181
DEFAULT_REFINE = 40
N_STARTS = 10
SUFFICIENT_MARGIN = 1e-9
RANK2_MARGIN = 1e-6
PSD_TOL = 1e-10
RANK_TOL = 1e-8
ALPHA_MARGIN = 1e-12


class Verdict(str, enum.Enum):
    SEPARABLE = "Separable"
    GENUINELY_ENTANGLED = "GenuinelyEntangled"
    UNDETECTED = "Undetected"


@dataclass(frozen=True)
class CertVerdict:
    verdict: Verdict
    test: str
    witness: dict = field(default_factory=dict)
    margin: float | None = None
    exact: bool = False

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "test": self.test,
            "exact": self.exact,
            "witness": self.witness,
            "margin": self.margin,
        }


class OverlapMax(NamedTuple):
    value: float
    bloch: BlochVector


# ---------------------------------------------------------------------------
# Max over product states
# ---------------------------------------------------------------------------

def _canonical_angles(theta: float, phi: float) -> tuple[float, float]:
    theta = theta % (2 * np.pi)
    if theta > np.pi:
        theta = 2 * np.pi - theta
        phi = phi + np.pi
    return float(theta), float(phi % (2 * np.pi))


def max_overlap(
    rho: np.ndarray, grid: int = DEFAULT_GRID, refine: int = DEFAULT_REFINE
) -> OverlapMax:
    """Maximize ``<n|rho|n>`` over product states ``|n> = |n>^{xN}``.

    A ``grid x 2(grid-1)`` latitude-longitude mesh is scanned, then the best
    ``N_STARTS`` mesh points are polished by coordinate-wise parabolic steps
    for ``refine`` rounds.  Ties go to the smaller theta, then smaller phi.
    """
    rho = np.ascontiguousarray(rho, dtype=complex)
    n = n_qubits_of(rho)
    if grid < 3:
        raise ValueError("grid must be at least 3")
    thetas = np.linspace(0.0, np.pi, grid)
    nphi = 2 * (grid - 1)
    phis = 2 * np.pi * np.arange(nphi) / nphi
    sqrtb = np.sqrt(_kernels.binom_table(n)[n, : n + 1])
    mesh = _kernels.overlap_mesh(rho, thetas, phis, sqrtb)
    flat = mesh.ravel()
    order = np.argsort(-flat, kind="stable")[:N_STARTS]
    it, ip = np.unravel_index(order, mesh.shape)
    starts = np.column_stack([thetas[it], phis[ip]])
    if refine > 0:
        values, points = _kernels.refine_maxima(
            rho, sqrtb, starts, thetas[1] - thetas[0], phis[1] - phis[0], refine
        )
    else:
        values, points = flat[order], starts
    best = int(np.argmax(values))
    if values[best] < flat[order[0]]:
        value, theta, phi = float(flat[order[0]]), starts[0, 0], starts[0, 1]
    else:
        value, theta, phi = float(values[best]), points[best, 0], points[best, 1]
    return OverlapMax(value, BlochVector(*_canonical_angles(theta, phi)))


def purity(rho: np.ndarray) -> float:
    rho = np.asarray(rho)
    return float(np.real(np.vdot(rho, rho)))


def sufficient_criterion(
    rho: np.ndarray,
    margin: float = SUFFICIENT_MARGIN,
    grid: int = DEFAULT_GRID,
    refine: int = DEFAULT_REFINE,
) -> CertVerdict:
    """Genuinely entangled if every product state overlaps less than tr(rho^2)."""
    best = max_overlap(rho, grid, refine)
    gap = purity(rho) - best.value
    verdict = Verdict.GENUINELY_ENTANGLED if gap > margin else Verdict.UNDETECTED
    witness = {"theta": best.bloch.theta, "phi": best.bloch.phi, "value": best.value}
    return CertVerdict(verdict, "sufficient_criterion", witness, gap)


# ---------------------------------------------------------------------------
# Two-body correlation matrix
# ---------------------------------------------------------------------------

def a_matrix(x: SymTensor) -> np.ndarray:
    """3x3 matrix of two-body correlators ``<s_a s_b 1 ... 1>``."""
    n = x.n_qubits
    if n < 2:
        raise ValueError("two-body correlators need at least two qubits")
    a = np.empty((3, 3))
    for i, j in itertools.product(range(3), repeat=2):
        counts = [n - 2, 0, 0, 0]
        counts[i + 1] += 1
        counts[j + 1] += 1
        a[i, j] = x[tuple(counts)]
    return a


def _require_snc(x: SymTensor, tol: float = SNC_TOL) -> None:
    report = snc_report(x, tol)
    if not report.is_snc:
        raise NotSNCError(report.reason)


def three_qubit_exact(rho: np.ndarray, tol: float = PSD_TOL) -> CertVerdict:
    """Exact test for 3-qubit SNC states: separable iff A is positive semidefinite."""
    rho = np.asarray(rho, dtype=complex)
    if n_qubits_of(rho) != 3:
        raise ValueError("three_qubit_exact needs a 3-qubit state")
    x = to_tensor(rho)
    _require_snc(x)
    alphas = np.linalg.eigvalsh(a_matrix(x))
    verdict = Verdict.SEPARABLE if alphas[0] >= -tol else Verdict.GENUINELY_ENTANGLED
    return CertVerdict(
        verdict, "three_qubit_exact", {"a_eigenvalues": alphas.tolist()}, float(alphas[0]), True
    )


class AlphaCondition(NamedTuple):
    detected: bool
    physical: bool


def alpha_condition(alphas, margin: float = ALPHA_MARGIN) -> AlphaCondition:
    """Product-state criterion for N = 3 expressed on the eigenvalues of A.

    ``detected`` is ``max(alpha) < sum(alpha^2)`` with a strictness margin;
    ``physical`` is ``sum(alpha^2) <= 1``.
    """
    alphas = np.asarray(alphas, dtype=float)
    if alphas.shape != (3,):
        raise ValueError("need exactly three eigenvalues")
    if abs(alphas.sum() - 1.0) > 1e-9:
        raise ValueError(f"eigenvalues must sum to 1, got {alphas.sum():.12g}")
    sq = float(np.dot(alphas, alphas))
    return AlphaCondition(bool(sq - alphas.max() > margin), bool(sq <= 1.0 + margin))


# ---------------------------------------------------------------------------
# Partial transposes
# ---------------------------------------------------------------------------

class PPTResult(NamedTuple):
    min_eigenvalue: float
    verdict: CertVerdict


def ppt_first_qubit(rho: np.ndarray, tol: float = PSD_TOL) -> PPTResult:
    """Minimum eigenvalue of the partial transpose on one qubit.

    Exact for N <= 3 (2x2 and 2x3 splits); for larger N a negative value
    certifies entanglement and a nonnegative one proves nothing.
    """
    rho = np.asarray(rho, dtype=complex)
    n = n_qubits_of(rho)
    if n < 2:
        raise ValueError("partial transpose needs at least two qubits")
    emb = embed_one_qubit(rho).reshape(2, n, 2, n)
    pt = emb.transpose(2, 1, 0, 3).reshape(2 * n, 2 * n)
    lam = float(np.linalg.eigvalsh(pt)[0])
    exact = n <= 3
    if lam < -tol:
        verdict = Verdict.GENUINELY_ENTANGLED
    else:
        verdict = Verdict.SEPARABLE if exact else Verdict.UNDETECTED
    return PPTResult(
        lam, CertVerdict(verdict, "ppt_first_qubit", {"min_ppt_eigenvalue": lam}, lam, exact)
    )


def x_matrix(x: SymTensor, m: int) -> np.ndarray:
    """``4^m x 4^m`` matrix ``M[(mu_1..mu_m), (nu_1..nu_m)] = x[mu nu 0...0]``."""
    n = x.n_qubits
    if m < 0 or 2 * m > n:
        raise ValueError(f"need 2m <= N, got m={m}, N={n}")
    tuples = list(itertools.product(range(4), repeat=m))
    counts = [PauliCounts.from_indices(t) for t in tuples]
    out = np.empty((len(tuples), len(tuples)))
    for i, ci in enumerate(counts):
        for j in range(i, len(tuples)):
            cj = counts[j]
            total = PauliCounts(ci.n0 + cj.n0 + n - 2 * m, ci.n1 + cj.n1, ci.n2 + cj.n2, ci.n3 + cj.n3)
            out[i, j] = out[j, i] = x[total]
    return out


def x_matrix_positivity(x: SymTensor, m: int) -> float:
    """Smallest eigenvalue of :func:`x_matrix`; negative certifies entanglement."""
    return float(np.linalg.eigvalsh(x_matrix(x, m))[0])


# ---------------------------------------------------------------------------
# Cubic q(z) attached to the 2x3 partial transpose
# ---------------------------------------------------------------------------

def q_poly(a: np.ndarray) -> np.ndarray:
    """Coefficients of q(z), highest degree first, for a trace-one symmetric A."""
    a = np.asarray(a, dtype=float)
    t1 = np.trace(a)
    if abs(t1 - 1.0) > 1e-9:
        raise ValueError(f"tr A must be 1, got {t1:.12g}")
    t2 = np.trace(a @ a)
    t3 = np.trace(a @ a @ a)
    return np.array([
        1.0,
        -2.0,
        1.5 * (t1 ** 2 - t2),
        -2.0 * (t1 ** 3 - 3.0 * t1 * t2 + 2.0 * t3) / 3.0,
    ])


def q_roots_nonnegative(a: np.ndarray, tol: float = 1e-9) -> bool:
    roots = np.roots(q_poly(a))
    return bool(np.all(np.abs(roots.imag) <= 1e-6) and np.all(roots.real >= -tol))


# ---------------------------------------------------------------------------
# Rank-2 SNC states
# ---------------------------------------------------------------------------

def matrix_rank(a: np.ndarray, rel_tol: float = RANK_TOL) -> int:
    sv = np.linalg.svd(np.asarray(a), compute_uv=False)
    if sv[0] == 0:
        return 0
    return int(np.sum(sv > rel_tol * sv[0]))


def rank2_certify(
    rho: np.ndarray,
    margin: float = RANK2_MARGIN,
    grid: int = DEFAULT_GRID,
    refine: int = DEFAULT_REFINE,
) -> CertVerdict:
    """Exact test for rank-2 SNC states.

    Rank of A at least 2 already rules out separability.  Otherwise the state
    is separable exactly when some product state reaches overlap 1/2, in
    which case rho = (|n><n| + |nbar><nbar|)/2 for that product state.
    """
    rho = np.asarray(rho, dtype=complex)
    evals = np.linalg.eigvalsh(rho)
    rank = int(np.sum(evals > CLUSTER_TOL))
    if rank != 2:
        raise ValueError(f"rank2_certify needs a rank-2 state, got rank {rank}")
    x = to_tensor(rho)
    _require_snc(x)
    rank_a = matrix_rank(a_matrix(x))
    if rank_a >= 2:
        return CertVerdict(
            Verdict.GENUINELY_ENTANGLED, "rank2_certify", {"a_rank": rank_a}, None, True
        )
    best = max_overlap(rho, grid, refine)
    gap = 0.5 - best.value
    witness = {"theta": best.bloch.theta, "phi": best.bloch.phi, "value": best.value,
               "a_rank": rank_a}
    if gap > margin:
        return CertVerdict(Verdict.GENUINELY_ENTANGLED, "rank2_certify", witness, gap, True)
    return CertVerdict(Verdict.SEPARABLE, "rank2_certify", witness, gap, True)


def product_pair(n_qubits: int, bloch: BlochVector) -> np.ndarray:
    """The separable rank-2 state (|n><n| + |nbar><nbar|) / 2."""
    psi = coherent_state(n_qubits, bloch)
    bar = antistate(psi)
    return 0.5 * (np.outer(psi, psi.conj()) + np.outer(bar, bar.conj()))
