"""Genuinely entangled SNC families built from pairs of Dicke states.

For odd ``N = 2M + 1`` the pure states ``psi_i = (D^(i) + D^(N-i)) / sqrt 2``
and their antistates span the same plane as ``D^(i)`` and ``D^(N-i)``, so
every mixture ``sum_i lambda_i (|psi_i><psi_i| + |psibar_i><psibar_i|)`` is
diagonal in the Dicke basis.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import NamedTuple

import numpy as np

from .antistate import antistate
from .entcert import CertVerdict, Verdict

GOLDEN_GRID = 1000
GOLDEN_TOL = 1e-12
N3_THRESHOLD = 3.0 / 8.0


def _check_odd(n_qubits: int) -> None:
    if n_qubits < 1 or n_qubits % 2 == 0:
        raise ValueError(f"construction needs an odd number of qubits, got {n_qubits}")


def _check_r(n_qubits: int, r: int) -> None:
    _check_odd(n_qubits)
    if not 0 <= r <= n_qubits:
        raise ValueError(f"r={r} outside 0..{n_qubits}")


def dicke_superposition(n_qubits: int, r: int) -> np.ndarray:
    """``(|D^(r)> + |D^(N-r)>) / sqrt 2``."""
    _check_r(n_qubits, r)
    psi = np.zeros(n_qubits + 1, dtype=complex)
    psi[r] = psi[n_qubits - r] = 1.0 / np.sqrt(2.0)
    return psi


def rank2_state(n_qubits: int, r: int) -> np.ndarray:
    """Half the projector onto span{D^(r), D^(N-r)}."""
    _check_r(n_qubits, r)
    rho = np.zeros((n_qubits + 1, n_qubits + 1), dtype=complex)
    rho[r, r] = rho[n_qubits - r, n_qubits - r] = 0.5
    return rho


def a_closed_form(n_qubits: int, r: int) -> np.ndarray:
    """Two-body correlation matrix of :func:`rank2_state`, in closed form."""
    _check_r(n_qubits, r)
    n = n_qubits
    denom = n * (n - 1)
    if denom == 0:
        raise ValueError("two-body correlators need at least two qubits")
    transverse = 2.0 * r * (n - r) / denom
    return np.diag([transverse, transverse, ((n - 2 * r) ** 2 - n) / denom])


@dataclass(frozen=True)
class MixtureSpec:
    """Weights ``lambda_0..lambda_M`` of the Dicke-pair mixture on ``N = 2M + 1`` qubits."""

    n_qubits: int
    weights: tuple[float, ...]

    def __post_init__(self):
        _check_odd(self.n_qubits)
        w = tuple(float(v) for v in self.weights)
        object.__setattr__(self, "weights", w)
        if len(w) != self.n_qubits // 2 + 1:
            raise ValueError(f"N={self.n_qubits} needs {self.n_qubits // 2 + 1} weights, got {len(w)}")
        if min(w) < 0:
            raise ValueError("weights must be nonnegative")
        if abs(sum(w) - 0.5) > 1e-12:
            raise ValueError(f"weights must sum to 1/2, got {sum(w)!r}")

    @property
    def m(self) -> int:
        return self.n_qubits // 2

    def to_json(self) -> dict:
        return {"n_qubits": self.n_qubits, "weights": list(self.weights)}

    @classmethod
    def from_json(cls, data: dict) -> "MixtureSpec":
        return cls(int(data["n_qubits"]), tuple(data["weights"]))


def mixture_state(spec: MixtureSpec) -> np.ndarray:
    """Dicke-diagonal SNC state with weight ``lambda_i`` on D^(i) and D^(N-i)."""
    n = spec.n_qubits
    diag = np.zeros(n + 1)
    for i, lam in enumerate(spec.weights):
        diag[i] = diag[n - i] = lam
    return np.diag(diag).astype(complex)


def u_function(n_qubits: int, i: int, theta):
    """Product-state overlap profile of the i-th Dicke pair (independent of phi)."""
    m = n_qubits // 2
    if not 0 <= i <= m:
        raise ValueError(f"pair index {i} outside 0..{m}")
    theta = np.asarray(theta, dtype=float)
    p = n_qubits - 2 * i
    c = np.cos(theta)
    return (
        comb(n_qubits, i)
        * (0.5 * np.sin(theta)) ** (2 * i)
        * ((1.0 - c) ** p + (1.0 + c) ** p)
        / 2.0 ** p
    )


def _golden_max(f, a: float, b: float, tol: float) -> tuple[float, float]:
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, float(f(x))


def max_u(n_qubits: int, i: int) -> float:
    """``max_theta u_i(theta)``: 1000-point scan, then golden-section polish."""
    grid = np.linspace(0.0, np.pi, GOLDEN_GRID)
    vals = u_function(n_qubits, i, grid)
    j = int(np.argmax(vals))
    lo, hi = grid[max(j - 1, 0)], grid[min(j + 1, GOLDEN_GRID - 1)]
    _, polished = _golden_max(lambda t: float(u_function(n_qubits, i, t)), lo, hi, GOLDEN_TOL)
    return max(float(vals[j]), polished)


class SphereBound(NamedTuple):
    holds: bool
    margin: float
    distance: float


def sphere_center(n_qubits: int) -> np.ndarray:
    """Center ``C(N,i) / 4^(i+1)`` of the sphere through the origin bounding the criterion."""
    return np.array([comb(n_qubits, i) / 4.0 ** (i + 1) for i in range(n_qubits // 2 + 1)])


def sphere_bound(spec: MixtureSpec) -> SphereBound:
    """Analytic sufficient condition ``sum C(N,i) lambda_i / 4^i < 2 sum lambda_i^2``.

    ``margin`` is right side minus left side.  ``distance`` is the signed
    distance of the weight vector from the sphere centered at
    :func:`sphere_center` passing through the origin (positive outside).
    """
    lam = np.asarray(spec.weights)
    coef = np.array([comb(spec.n_qubits, i) / 4.0 ** i for i in range(len(lam))])
    margin = float(2.0 * lam @ lam - coef @ lam)
    center = sphere_center(spec.n_qubits)
    distance = float(np.linalg.norm(lam - center) - np.linalg.norm(center))
    return SphereBound(margin > 0.0, margin, distance)


def weighted_bound(spec: MixtureSpec) -> SphereBound:
    """Tighter condition ``sum lambda_i max u_i < 2 sum lambda_i^2``.

    ``distance`` is not defined for this bound and is reported as NaN.
    """
    lam = np.asarray(spec.weights)
    coef = np.array([max_u(spec.n_qubits, i) for i in range(len(lam))])
    margin = float(2.0 * lam @ lam - coef @ lam)
    return SphereBound(margin > 0.0, margin, float("nan"))


def exact_threshold_n3(lambda1: float) -> CertVerdict:
    """Exact verdict for the 3-qubit pair mixture with ``lambda0 = 1/2 - lambda1``.

    A = 2 lambda0 diag(0,0,1) + 2 lambda1 diag(2/3,2/3,-1/3) is positive
    semidefinite iff lambda0 >= lambda1 / 3, i.e. lambda1 <= 3/8.
    """
    if not 0.0 <= lambda1 <= 0.5:
        raise ValueError(f"lambda1 must lie in [0, 1/2], got {lambda1!r}")
    lambda0 = 0.5 - lambda1
    a33 = 2.0 * lambda0 - 2.0 * lambda1 / 3.0
    verdict = Verdict.GENUINELY_ENTANGLED if lambda1 > N3_THRESHOLD else Verdict.SEPARABLE
    return CertVerdict(verdict, "exact_threshold_n3", {"a33": a33}, lambda1 - N3_THRESHOLD, True)


def nonempty_construction(m: int) -> bool:
    """``C(2M+1, M) < 4^M``: the pure pair E = (0, .., 0, 1/2) clears the sphere bound."""
    return comb(2 * m + 1, m) < 4 ** m


def pair_projector_sum(spec: MixtureSpec) -> np.ndarray:
    """Same state as :func:`mixture_state`, summed from psi_i and antistate projectors."""
    n = spec.n_qubits
    rho = np.zeros((n + 1, n + 1), dtype=complex)
    for i, lam in enumerate(spec.weights):
        psi = dicke_superposition(n, i)
        bar = antistate(psi)
        rho += lam * (np.outer(psi, psi.conj()) + np.outer(bar, bar.conj()))
    return rho
