"""JSON state files.

Layout::

    {"n_qubits": N, "repr": "dicke_pure" | "dicke_matrix" | "tensor" | "pairing",
     "data": ...}

Complex numbers are ``[re, im]`` pairs.  Tensor entries are
``{"counts": [n0, n1, n2, n3], "value": x}`` in canonical class order.  The
``pairing`` form holds ``{"weight", "psi", "psibar"}`` records and is what a
``SpectralPairing`` serializes to.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from .symrep import SymTensor, from_tensor, projector

REPRS = ("dicke_pure", "dicke_matrix", "tensor", "pairing")


class StateFormatError(ValueError):
    """State file is malformed."""


@dataclass(frozen=True)
class StateFile:
    n_qubits: int
    repr: str
    payload: Any  # ndarray, SymTensor or list of (weight, psi, psibar)

    def density(self) -> np.ndarray:
        """Dicke-basis density matrix for any representation."""
        if self.repr == "dicke_pure":
            psi = self.payload
            return projector(psi / np.linalg.norm(psi))
        if self.repr == "dicke_matrix":
            return self.payload
        if self.repr == "tensor":
            return from_tensor(self.payload)
        rho = np.zeros((self.n_qubits + 1, self.n_qubits + 1), dtype=complex)
        for w, psi, bar in self.payload:
            rho += w * (projector(psi) + projector(bar))
        return rho


def _enc(z) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def _dec_vector(data, n) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.shape != (n + 1, 2):
        raise StateFormatError(f"expected {n + 1} [re, im] pairs, got shape {arr.shape}")
    return arr[:, 0] + 1j * arr[:, 1]


def encode_pure(psi: np.ndarray) -> dict:
    psi = np.asarray(psi)
    return {"n_qubits": len(psi) - 1, "repr": "dicke_pure", "data": [_enc(z) for z in psi]}


def encode_matrix(rho: np.ndarray) -> dict:
    rho = np.asarray(rho)
    return {
        "n_qubits": rho.shape[0] - 1,
        "repr": "dicke_matrix",
        "data": [[_enc(z) for z in row] for row in rho],
    }


def encode_tensor(x: SymTensor) -> dict:
    return {
        "n_qubits": x.n_qubits,
        "repr": "tensor",
        "data": [{"counts": list(c), "value": float(v)} for c, v in zip(x.classes, x.values)],
    }


def decode(doc: dict) -> StateFile:
    try:
        n = int(doc["n_qubits"])
        kind = doc["repr"]
        data = doc["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise StateFormatError(f"missing or malformed top-level field: {exc}") from exc
    if n < 0:
        raise StateFormatError("n_qubits must be nonnegative")
    if kind not in REPRS:
        raise StateFormatError(f"unknown repr {kind!r}; expected one of {REPRS}")
    try:
        if kind == "dicke_pure":
            return StateFile(n, kind, _dec_vector(data, n))
        if kind == "dicke_matrix":
            arr = np.asarray(data, dtype=float)
            if arr.shape != (n + 1, n + 1, 2):
                raise StateFormatError(f"matrix data has shape {arr.shape}")
            return StateFile(n, kind, arr[..., 0] + 1j * arr[..., 1])
        if kind == "tensor":
            coords = {tuple(int(c) for c in e["counts"]): float(e["value"]) for e in data}
            if any(sum(c) != n for c in coords):
                raise StateFormatError("tensor counts must sum to n_qubits")
            return StateFile(n, kind, SymTensor.from_coords(n, coords))
        pairs = [
            (float(e["weight"]), _dec_vector(e["psi"], n), _dec_vector(e["psibar"], n))
            for e in data
        ]
        return StateFile(n, kind, pairs)
    except StateFormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise StateFormatError(f"bad {kind} payload: {exc}") from exc


def load(path: str | Path) -> StateFile:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise StateFormatError(f"cannot read {path}: {exc}") from exc
    return decode(doc)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1)
