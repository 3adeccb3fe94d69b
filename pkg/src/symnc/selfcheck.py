"""Invariant suite run by ``symnc selfcheck``."""
from __future__ import annotations

import contextlib
from dataclasses import dataclass, field
from unittest import mock

import numpy as np

from . import dense, symrep
from .antistate import antistate, pair_decompose, purity_check
from .entcert import Verdict, a_matrix, ppt_first_qubit, three_qubit_exact, x_matrix_positivity
from .families import a_closed_form, rank2_state
from .nocorr import is_snc
from .sampling import random_density, random_pure, random_snc

ORACLE_MAX_N = 7
STATES_PER_N = 10


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SelfcheckReport:
    results: list[CheckResult] = field(default_factory=list)
    notices: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[str]:
        return [r.name for r in self.results if not r.passed]

    def add(self, name: str, worst: float, limit: float) -> None:
        self.results.append(CheckResult(name, bool(worst <= limit), f"max error {worst:.3g} (limit {limit:g})"))

    def lines(self) -> list[str]:
        out = [f"note: {n}" for n in self.notices]
        out += [f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}" for r in self.results]
        return out


@contextlib.contextmanager
def _corrupted_smatrices():
    original = symrep.smatrix_stack

    def corrupted(n):
        stack = np.array(original(n))
        stack[1] *= 1.5
        return stack

    with mock.patch.object(symrep, "smatrix_stack", corrupted):
        yield


def run_selfcheck(max_n: int = 7, seed: int = 42, fault: str | None = None) -> SelfcheckReport:
    """Check the library's invariants on seeded random states up to ``max_n`` qubits."""
    if max_n < 3 or max_n % 2 == 0:
        raise ValueError(f"max_n must be odd and at least 3, got {max_n}")
    if fault not in (None, "smatrix"):
        raise ValueError(f"unknown fault {fault!r}")
    rng = np.random.default_rng(seed)
    report = SelfcheckReport()
    if max_n > ORACLE_MAX_N:
        report.notices.append(f"oracle checks skipped for N > {ORACLE_MAX_N}")
    ctx = _corrupted_smatrices() if fault == "smatrix" else contextlib.nullcontext()
    groups = [
        ("tensor", lambda: _tensor_checks(report, rng, max_n)),
        ("antistate", lambda: _antistate_checks(report, rng, max_n)),
        ("certifier", lambda: _certifier_checks(report, rng)),
        ("family", lambda: _family_checks(report, max_n)),
    ]
    with ctx:
        for name, run in groups:
            try:
                run()
            except Exception as exc:  # a broken invariant may surface as an exception
                report.results.append(CheckResult(f"{name}-group", False, f"{type(exc).__name__}: {exc}"))
    return report


def _tensor_checks(report, rng, max_n):
    trip = contraction = oracle = 0.0
    for n in range(1, max_n + 1):
        for _ in range(STATES_PER_N):
            rho = random_density(n, rng)
            x = symrep.to_tensor(rho)
            contraction = max(contraction, symrep.contraction_residual(x))
            try:
                back = symrep.from_tensor(x)
                trip = max(trip, float(np.abs(back - rho).max()))
            except symrep.ContractionError:
                trip = np.inf
        if n > ORACLE_MAX_N:
            continue
        rho = random_density(n, rng)
        rho_full = dense.expand(rho)
        x = symrep.to_tensor(rho)
        for counts in x.classes:
            mus = rng.permutation(counts.ordered())
            oracle = max(oracle, abs(dense.correlator(rho_full, mus) - x[counts]))
    report.add("round-trip", trip, 1e-12)
    report.add("contraction", contraction, 1e-12)
    report.add("oracle-correlator", oracle, 1e-10)


def _antistate_checks(report, rng, max_n):
    ortho = purity = recon = 0.0
    odd_clusters = 0
    for n in range(3, max_n + 1, 2):
        for _ in range(STATES_PER_N):
            psi = random_pure(n, rng)
            ortho = max(ortho, abs(np.vdot(psi, antistate(psi))))
            rho = random_snc(n, rng)
            purity = max(purity, purity_check(rho) - 0.5)
            try:
                pairing = pair_decompose(rho)
                recon = max(recon, float(np.abs(pairing.reconstruct() - rho).max()))
            except ValueError:
                odd_clusters += 1
    report.add("antistate-orthogonality", ortho, 1e-12)
    report.add("purity-bound", purity, 1e-12)
    report.add("even-degeneracy", odd_clusters, 0)
    report.add("pair-reconstruction", recon, 1e-9)


def _certifier_checks(report, rng):
    disagreements = 0
    for _ in range(5 * STATES_PER_N):
        rho = random_snc(3, rng)
        x = symrep.to_tensor(rho)
        exact = three_qubit_exact(rho).verdict is Verdict.SEPARABLE
        ppt = ppt_first_qubit(rho).min_eigenvalue >= -1e-9
        xm = x_matrix_positivity(x, 1) >= -1e-9
        disagreements += not (exact == ppt == xm)
    report.add("certifier-agreement", disagreements, 0)


def _family_checks(report, max_n):
    worst = 0.0
    not_snc = 0
    for n in range(3, max_n + 1, 2):
        for r in range(n + 1):
            rho = rank2_state(n, r)
            x = symrep.to_tensor(rho)
            not_snc += not is_snc(x)
            worst = max(worst, float(np.abs(a_matrix(x) - a_closed_form(n, r)).max()))
    report.add("family-snc", not_snc, 0)
    report.add("closed-form-a", worst, 1e-12)
