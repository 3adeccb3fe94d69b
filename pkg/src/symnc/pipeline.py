"""Whole-state certification and the region scans over two-body eigenvalues and mixture weights."""
from __future__ import annotations

import csv
import io
import itertools
from typing import Iterator

import numpy as np

from .entcert import (
    DEFAULT_GRID,
    DEFAULT_REFINE,
    PSD_TOL,
    CertVerdict,
    Verdict,
    alpha_condition,
    ppt_first_qubit,
    rank2_certify,
    sufficient_criterion,
    three_qubit_exact,
    x_matrix_positivity,
)
from .families import MixtureSpec, mixture_state, sphere_bound
from .nocorr import DEFAULT_TOL as SNC_TOL, snc_report
from .symrep import n_qubits_of, to_tensor, validate_density

RANK_EIG_TOL = 1e-8
MAX_X_MATRIX_ORDER = 2
REGION_TOL = 1e-12


class CertifierContradiction(RuntimeError):
    """Two exact certifiers disagree; indicates a bug."""


def certify_all(
    rho: np.ndarray,
    tol: float = SNC_TOL,
    grid: int = DEFAULT_GRID,
    refine: int = DEFAULT_REFINE,
) -> dict:
    """Run every applicable certifier and merge the outcomes.

    Raises ``InvalidStateError`` for unphysical input and
    ``CertifierContradiction`` if exact tests disagree with each other or a
    sufficient test claims entanglement of a state proven separable.
    """
    rho = np.asarray(rho, dtype=complex)
    validate_density(rho)
    n = n_qubits_of(rho)
    x = to_tensor(rho)
    report = snc_report(x, tol)
    results: list[CertVerdict] = []
    if n < 2:
        results.append(CertVerdict(Verdict.SEPARABLE, "single_qubit", exact=True))
    else:
        results.append(ppt_first_qubit(rho).verdict)
        for m in range(1, min(MAX_X_MATRIX_ORDER, n // 2) + 1):
            lam = x_matrix_positivity(x, m)
            v = Verdict.GENUINELY_ENTANGLED if lam < -PSD_TOL else Verdict.UNDETECTED
            results.append(CertVerdict(v, f"x_matrix_m{m}", {"min_eigenvalue": lam}, lam))
        results.append(sufficient_criterion(rho, grid=grid, refine=refine))
        if report.is_snc:
            if n == 3:
                results.append(three_qubit_exact(rho))
            if int(np.sum(np.linalg.eigvalsh(rho) > RANK_EIG_TOL)) == 2:
                results.append(rank2_certify(rho, grid=grid, refine=refine))

    exact = {r.verdict for r in results if r.exact}
    if len(exact) > 1:
        raise CertifierContradiction(f"exact certifiers disagree: {sorted(v.value for v in exact)}")
    detected = any(r.verdict is Verdict.GENUINELY_ENTANGLED for r in results)
    if exact == {Verdict.SEPARABLE} and detected:
        raise CertifierContradiction("a sufficient test flagged a provably separable state")
    if exact:
        final = exact.pop()
    else:
        final = Verdict.GENUINELY_ENTANGLED if detected else Verdict.UNDETECTED
    return {
        "n_qubits": n,
        "verdict": final.value,
        "exact": any(r.exact for r in results),
        "snc": report.to_json(),
        "tests": [r.to_json() for r in results],
    }


# ---------------------------------------------------------------------------
# Scans
# ---------------------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if v is None:
        return ""
    return f"{float(v):.17g}"


def to_csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


FIG1_HEADER = ["alpha1", "alpha2", "alpha3", "physical", "separable", "detected"]


def _classify_alphas(alphas) -> tuple:
    cond = alpha_condition(alphas)
    separable = bool(np.min(alphas) >= -REGION_TOL)
    return (*alphas, cond.physical, separable, cond.detected and cond.physical)


def fig1_points(resolution: int) -> Iterator[np.ndarray]:
    """Barycentric grid of the triangle circumscribing the physical disk, then its rim.

    Grid points are ``alpha = 2 w - 1/3`` for barycentric weights ``w`` with
    denominator ``resolution``; the rim has ``4 * resolution`` points.
    """
    if resolution < 16:
        raise ValueError("resolution must be at least 16")
    for i in range(resolution + 1):
        for j in range(resolution + 1 - i):
            w = np.array([i, j, resolution - i - j]) / resolution
            yield 2.0 * w - 1.0 / 3.0
    yield from disk_rim(4 * resolution)


def disk_rim(count: int) -> Iterator[np.ndarray]:
    """Points with sum 1 and sum of squares 1."""
    center = np.full(3, 1.0 / 3.0)
    radius = np.sqrt(2.0 / 3.0)
    u = np.array([1.0, -1.0, 0.0]) / np.sqrt(2.0)
    v = np.array([1.0, 1.0, -2.0]) / np.sqrt(6.0)
    for t in 2 * np.pi * np.arange(count) / count:
        yield center + radius * (np.cos(t) * u + np.sin(t) * v)


def trilobe_boundary(count: int) -> Iterator[np.ndarray]:
    """Outer boundary of ``max alpha = sum alpha^2`` on the plane ``sum alpha = 1``.

    For each i the set ``alpha_i = sum alpha^2`` is a circle of radius
    ``1/sqrt 6`` about the point with ``alpha_i = 2/3`` and the others 1/6;
    only arcs where ``alpha_i`` is the largest component are kept.
    """
    radius = 1.0 / np.sqrt(6.0)
    for i in range(3):
        center = np.full(3, 1.0 / 6.0)
        center[i] = 2.0 / 3.0
        e = np.zeros(3)
        e[i] = 1.0
        u = e - 1.0 / 3.0
        u /= np.linalg.norm(u)
        v = np.cross(np.ones(3) / np.sqrt(3.0), u)
        for t in 2 * np.pi * np.arange(count) / count:
            p = center + radius * (np.cos(t) * u + np.sin(t) * v)
            if p[i] >= p.max() - 1e-15:
                yield p


def scan_fig1(resolution: int = 200) -> str:
    rows = (_classify_alphas(a) for a in fig1_points(resolution))
    return to_csv(FIG1_HEADER, rows)


def simplex_weights(n_qubits: int, resolution: int) -> Iterator[tuple[float, ...]]:
    """Weights ``lambda_i >= 0`` with sum 1/2 on a grid of step ``1/(2 resolution)``."""
    parts = n_qubits // 2 + 1
    for combo in itertools.product(range(resolution + 1), repeat=parts - 1):
        rest = resolution - sum(combo)
        if rest < 0:
            continue
        w = (rest, *combo)
        yield tuple(0.5 * k / resolution for k in w)


def scan_fig2(
    n_qubits: int,
    resolution: int = 200,
    grid: int = DEFAULT_GRID,
    refine: int = DEFAULT_REFINE,
) -> str:
    """Classify Dicke-pair mixtures on the normalization simplex.

    Columns: the weights, ``exact`` (N = 3 only), ``numeric`` (product-state
    criterion evaluated by :func:`max_overlap`), ``sphere`` (analytic bound).
    """
    if n_qubits < 3 or n_qubits % 2 == 0:
        raise ValueError(f"scan needs odd N >= 3, got {n_qubits}")
    header = [f"lambda{i}" for i in range(n_qubits // 2 + 1)] + ["exact", "numeric", "sphere"]
    rows = []
    for weights in simplex_weights(n_qubits, resolution):
        spec = MixtureSpec(n_qubits, weights)
        rho = mixture_state(spec)
        exact = None
        if n_qubits == 3:
            exact = three_qubit_exact(rho).verdict is Verdict.GENUINELY_ENTANGLED
        numeric = sufficient_criterion(rho, grid=grid, refine=refine).verdict
        rows.append(
            (*weights, exact, numeric is Verdict.GENUINELY_ENTANGLED, sphere_bound(spec).holds)
        )
    return to_csv(header, rows)
