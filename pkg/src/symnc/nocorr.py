"""Membership in the set of symmetric states without N-partite correlations."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .symrep import SymTensor

DEFAULT_TOL = 1e-10
EVEN_N_REASON = "even-N impossibility"


@dataclass(frozen=True)
class HierarchyLevel:
    n0: int
    max_violation: float


@dataclass(frozen=True)
class SncReport:
    is_snc: bool
    levels: list[HierarchyLevel] = field(default_factory=list)
    reason: str = ""

    def to_json(self) -> dict:
        return {
            "is_snc": self.is_snc,
            "levels": [{"n0": lv.n0, "max_violation": lv.max_violation} for lv in self.levels],
            "reason": self.reason,
        }


def _level_max(x: SymTensor, n0: int) -> float:
    vals = [abs(v) for c, v in zip(x.classes, x.values) if c.n0 == n0]
    return float(max(vals)) if vals else 0.0


def snc_report(x: SymTensor, tol: float = DEFAULT_TOL) -> SncReport:
    """Check that every fully non-identity correlator vanishes.

    The report lists each level of the induced hierarchy (identity count
    ``n0 = 0, 2, 4, ...``) with its largest absolute coordinate.
    """
    n = x.n_qubits
    top = n if n % 2 == 0 else n - 1
    levels = [HierarchyLevel(n0, _level_max(x, n0)) for n0 in range(0, top + 1, 2)]
    if n % 2 == 0 and abs(x.values[0] - 1.0) <= tol:
        return SncReport(False, levels, EVEN_N_REASON)
    worst = levels[0].max_violation
    if worst > tol:
        return SncReport(False, levels, f"N-partite correlation of size {worst:.3g}")
    return SncReport(True, levels, "")


def is_snc(x: SymTensor, tol: float = DEFAULT_TOL) -> bool:
    return snc_report(x, tol).is_snc


def is_anticoherent_1(x: SymTensor, tol: float = DEFAULT_TOL) -> bool:
    """True iff the single-qubit Bloch vector vanishes."""
    n = x.n_qubits
    if n == 0:
        return True
    one_body = [x[(n - 1, 1, 0, 0)], x[(n - 1, 0, 1, 0)], x[(n - 1, 0, 0, 1)]]
    return bool(np.max(np.abs(one_body)) <= tol)
