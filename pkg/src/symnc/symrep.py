"""Symmetric N-qubit states in the Dicke basis and their tensor coordinates.

Conventions
-----------
* A pure symmetric state is a complex vector of length ``N + 1``; entry ``k``
  is the amplitude of the Dicke state with ``k`` excitations.
* A mixed symmetric state is an ``(N + 1) x (N + 1)`` Hermitian matrix in the
  same basis.  Row ``k`` corresponds to spin projection ``m = (N - 2k) / 2``.
* Tensor coordinates are the Pauli correlators ``<s_mu1 x ... x s_muN>``.
  They are permutation invariant, so one value is stored per occupation
  class ``PauliCounts(n0, n1, n2, n3)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from . import _kernels

HERMITIAN_TOL = 1e-12
IMAG_TOL = 1e-9
PSD_TOL = -1e-10
CONTRACTION_TOL = 1e-9


class InvalidStateError(ValueError):
    """Input is not a valid symmetric state (shape, hermiticity, trace, sign)."""


class ContractionError(ValueError):
    """Tensor coordinates violate the sum over repeated Pauli indices."""


class PauliCounts(NamedTuple):
    """How many of each Pauli index (0..3) occur in an index tuple."""

    n0: int
    n1: int
    n2: int
    n3: int

    @property
    def n_qubits(self) -> int:
        return self.n0 + self.n1 + self.n2 + self.n3

    @property
    def nonzero(self) -> int:
        """Number of non-identity indices."""
        return self.n1 + self.n2 + self.n3

    @property
    def multiplicity(self) -> int:
        """Number of ordered index tuples in this class."""
        return factorial(self.n_qubits) // (
            factorial(self.n0) * factorial(self.n1) * factorial(self.n2) * factorial(self.n3)
        )

    def ordered(self) -> tuple[int, ...]:
        """Canonical ordered representative: all 0s, then 1s, 2s, 3s."""
        return (0,) * self.n0 + (1,) * self.n1 + (2,) * self.n2 + (3,) * self.n3

    def padded(self, extra_zeros: int) -> "PauliCounts":
        return PauliCounts(self.n0 + extra_zeros, self.n1, self.n2, self.n3)

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> "PauliCounts":
        counts = [0, 0, 0, 0]
        for mu in indices:
            if mu not in (0, 1, 2, 3):
                raise ValueError(f"Pauli index must be in 0..3, got {mu!r}")
            counts[mu] += 1
        return cls(*counts)


@lru_cache(maxsize=None)
def pauli_classes(n_qubits: int) -> tuple[PauliCounts, ...]:
    """All occupation classes for ``n_qubits``, in canonical (descending) order."""
    if n_qubits < 0:
        raise ValueError("n_qubits must be nonnegative")
    out = []
    for n0 in range(n_qubits + 1):
        for n1 in range(n_qubits - n0 + 1):
            for n2 in range(n_qubits - n0 - n1 + 1):
                out.append(PauliCounts(n0, n1, n2, n_qubits - n0 - n1 - n2))
    return tuple(sorted(out, reverse=True))


@lru_cache(maxsize=None)
def _class_index(n_qubits: int) -> dict[PauliCounts, int]:
    return {c: i for i, c in enumerate(pauli_classes(n_qubits))}


@lru_cache(maxsize=None)
def _multiplicities(n_qubits: int) -> np.ndarray:
    m = np.array([float(c.multiplicity) for c in pauli_classes(n_qubits)])
    m.setflags(write=False)
    return m


def _as_counts(idx) -> PauliCounts:
    if isinstance(idx, PauliCounts):
        return idx
    idx = tuple(int(v) for v in idx)
    if len(idx) != 4:
        raise ValueError(f"expected (n0, n1, n2, n3), got {idx!r}")
    if min(idx) < 0:
        raise ValueError(f"negative count in {idx!r}")
    return PauliCounts(*idx)


@dataclass(frozen=True, eq=False)
class SymTensor:
    """Permutation-invariant tensor coordinates of an N-qubit symmetric state.

    ``values[i]`` belongs to ``pauli_classes(n_qubits)[i]``.
    """

    n_qubits: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        expected = comb(self.n_qubits + 3, 3)
        if vals.shape != (expected,):
            raise ValueError(
                f"{self.n_qubits}-qubit tensor needs {expected} coordinates, got shape {vals.shape}"
            )
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymTensor):
            return NotImplemented
        return self.n_qubits == other.n_qubits and np.array_equal(self.values, other.values)

    __hash__ = None

    def __getitem__(self, idx) -> float:
        counts = _as_counts(idx)
        if counts.n_qubits != self.n_qubits:
            raise KeyError(f"{counts} does not describe {self.n_qubits} qubits")
        return float(self.values[_class_index(self.n_qubits)[counts]])

    def correlator(self, indices: Sequence[int]) -> float:
        """Value for an ordered index tuple such as ``(3, 0, 1)``."""
        return self[PauliCounts.from_indices(indices)]

    @property
    def classes(self) -> tuple[PauliCounts, ...]:
        return pauli_classes(self.n_qubits)

    @property
    def coords(self) -> dict[PauliCounts, float]:
        return dict(zip(self.classes, self.values.tolist()))

    @classmethod
    def from_coords(cls, n_qubits: int, coords: Mapping) -> "SymTensor":
        """Build from a ``{counts: value}`` mapping; absent classes are zero."""
        index = _class_index(n_qubits)
        vals = np.zeros(len(index))
        for key, value in coords.items():
            counts = _as_counts(key)
            if counts not in index:
                raise KeyError(f"{counts} does not describe {n_qubits} qubits")
            vals[index[counts]] = value
        return cls(n_qubits, vals)


@dataclass(frozen=True)
class BlochVector:
    """Unit vector on the sphere given by polar angle ``theta`` and azimuth ``phi``."""

    theta: float
    phi: float = 0.0

    @property
    def vector(self) -> np.ndarray:
        st = np.sin(self.theta)
        return np.array([st * np.cos(self.phi), st * np.sin(self.phi), np.cos(self.theta)])

    @property
    def four_vector(self) -> np.ndarray:
        return np.concatenate(([1.0], self.vector))

    @classmethod
    def from_vector(cls, v) -> "BlochVector":
        v = np.asarray(v, dtype=float)
        v = v / np.linalg.norm(v)
        theta = float(np.arccos(np.clip(v[2], -1.0, 1.0)))
        phi = float(np.arctan2(v[1], v[0]) % (2 * np.pi))
        return cls(theta, phi)


def n_qubits_of(state: np.ndarray) -> int:
    return np.shape(state)[0] - 1


# ---------------------------------------------------------------------------
# Pure states
# ---------------------------------------------------------------------------

def dicke_state(n_qubits: int, k: int) -> np.ndarray:
    """Dicke basis vector with ``k`` excitations."""
    if not 0 <= k <= n_qubits:
        raise ValueError(f"excitation number {k} outside 0..{n_qubits}")
    psi = np.zeros(n_qubits + 1, dtype=complex)
    psi[k] = 1.0
    return psi


def coherent_state(n_qubits: int, bloch: BlochVector) -> np.ndarray:
    """Product state ``|n>^{x N}`` in the Dicke basis."""
    k = np.arange(n_qubits + 1)
    half = 0.5 * bloch.theta
    sqrtb = np.sqrt(_kernels.binom_table(n_qubits)[n_qubits, : n_qubits + 1])
    amps = (
        sqrtb
        * np.sin(half) ** k
        * np.cos(half) ** (n_qubits - k)
        * np.exp(-1j * (n_qubits - k) * bloch.phi)
    )
    return amps / np.linalg.norm(amps)


def projector(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def validate_density(rho: np.ndarray, psd_tol: float = PSD_TOL) -> float:
    """Check shape, hermiticity, trace and positivity; return the smallest eigenvalue."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] < 1:
        raise InvalidStateError(f"density matrix must be square, got shape {rho.shape}")
    if np.abs(rho - rho.conj().T).max() > HERMITIAN_TOL:
        raise InvalidStateError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > HERMITIAN_TOL:
        raise InvalidStateError(f"trace is {np.trace(rho).real:.3g}, expected 1")
    lam_min = float(np.linalg.eigvalsh(rho)[0])
    if lam_min < psd_tol:
        raise InvalidStateError(f"negative eigenvalue {lam_min:.3g}")
    return lam_min


# ---------------------------------------------------------------------------
# S-matrices
# ---------------------------------------------------------------------------

def s_matrix(n_qubits: int, idx) -> np.ndarray:
    """Projection of a Pauli string onto the symmetric subspace, Dicke basis.

    ``idx`` is a ``PauliCounts`` (or plain 4-tuple of counts).  Entries come
    from the sum over computational basis strings with the strings grouped
    by how many excitations fall in each Pauli block; see
    :func:`s_matrix_ordered` for the ungrouped sum over one ordered tuple.
    """
    counts = _as_counts(idx)
    if counts.n_qubits != n_qubits:
        raise ValueError(f"{counts} does not describe {n_qubits} qubits")
    binom = _kernels.binom_table(n_qubits)
    return _kernels.smatrix_counts(counts.n0, counts.n1, counts.n2, counts.n3, binom)


def s_matrix_ordered(indices: Sequence[int]) -> np.ndarray:
    """S-matrix for an explicit ordered index tuple (cost ``2^N``)."""
    mus = np.asarray(indices, dtype=np.int64)
    if mus.ndim != 1 or ((mus < 0) | (mus > 3)).any():
        raise ValueError(f"invalid Pauli index tuple {indices!r}")
    return _kernels.smatrix_strings(mus, _kernels.binom_table(len(mus)))


@lru_cache(maxsize=32)
def smatrix_stack(n_qubits: int) -> np.ndarray:
    """All S-matrices for ``n_qubits`` in canonical class order, shape (C, N+1, N+1)."""
    binom = _kernels.binom_table(n_qubits)
    stack = np.stack(
        [_kernels.smatrix_counts(c.n0, c.n1, c.n2, c.n3, binom) for c in pauli_classes(n_qubits)]
    )
    stack.setflags(write=False)
    return stack


# ---------------------------------------------------------------------------
# Density matrix <-> tensor coordinates
# ---------------------------------------------------------------------------

def to_tensor(rho: np.ndarray) -> SymTensor:
    """Tensor coordinates ``x = tr(rho S)`` of a symmetric state."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidStateError(f"density matrix must be square, got shape {rho.shape}")
    n = n_qubits_of(rho)
    vals = np.einsum("ckl,lk->c", smatrix_stack(n), rho)
    if np.abs(vals.imag).max() > IMAG_TOL:
        raise InvalidStateError(
            f"tr(rho S) has imaginary part {np.abs(vals.imag).max():.3g}; input is not Hermitian"
        )
    return SymTensor(n, vals.real)


@lru_cache(maxsize=None)
def _contraction_plan(n_qubits: int):
    index = _class_index(n_qubits)
    base, terms = [], []
    for c in pauli_classes(n_qubits - 2):
        base.append(index[PauliCounts(c.n0 + 2, c.n1, c.n2, c.n3)])
        terms.append([
            index[PauliCounts(c.n0, c.n1 + 2, c.n2, c.n3)],
            index[PauliCounts(c.n0, c.n1, c.n2 + 2, c.n3)],
            index[PauliCounts(c.n0, c.n1, c.n2, c.n3 + 2)],
        ])
    return np.array(base, dtype=np.int64), np.array(terms, dtype=np.int64).reshape(-1, 3)


def contraction_residual(x: SymTensor) -> float:
    """Largest violation of ``sum_a x[..aa] = x[..00]`` over all base indices."""
    if x.n_qubits < 2:
        return 0.0
    base, terms = _contraction_plan(x.n_qubits)
    v = x.values
    return float(np.abs(v[terms].sum(axis=1) - v[base]).max())


def from_tensor(x: SymTensor, tol: float = CONTRACTION_TOL) -> np.ndarray:
    """Rebuild the Dicke-basis matrix from tensor coordinates.

    Positivity is not enforced; call :func:`validate_density` when needed.
    """
    n = x.n_qubits
    norm = x.values[0]
    if abs(norm - 1.0) > tol:
        raise ContractionError(f"identity coordinate is {norm!r}, expected 1")
    resid = contraction_residual(x)
    if resid > tol:
        raise ContractionError(f"contraction identity violated by {resid:.3g}")
    weights = _multiplicities(n) * x.values / 2.0 ** n
    rho = np.tensordot(weights, smatrix_stack(n), axes=1)
    return 0.5 * (rho + rho.conj().T)


def reduce(x: SymTensor, k: int) -> SymTensor:
    """Coordinates of the ``k``-qubit reduced state."""
    n = x.n_qubits
    if not 0 <= k <= n:
        raise ValueError(f"cannot reduce {n} qubits to {k}")
    index = _class_index(n)
    vals = [x.values[index[c.padded(n - k)]] for c in pauli_classes(k)]
    return SymTensor(k, np.array(vals))


# ---------------------------------------------------------------------------
# One qubit split off the symmetric register
# ---------------------------------------------------------------------------

def qubit_split_isometry(n_qubits: int) -> np.ndarray:
    """Isometry from the N-qubit Dicke basis into qubit x (N-1)-qubit Dicke basis.

    Output index is ``b * N + j`` for first-qubit bit ``b`` and Dicke label
    ``j`` of the remaining ``N - 1`` qubits.
    """
    n = n_qubits
    if n < 2:
        raise ValueError("need at least two qubits to split one off")
    v = np.zeros((2 * n, n + 1))
    for k in range(n + 1):
        if k < n:
            v[k, k] = np.sqrt((n - k) / n)
        if k > 0:
            v[n + k - 1, k] = np.sqrt(k / n)
    return v


def embed_one_qubit(rho: np.ndarray) -> np.ndarray:
    """Express a symmetric state on qubit x Sym(N-1); shape (2N, 2N)."""
    rho = np.asarray(rho, dtype=complex)
    v = qubit_split_isometry(n_qubits_of(rho))
    return v @ rho @ v.T
