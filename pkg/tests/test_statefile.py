import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from symnc import antistate, statefile, symrep
from symnc.sampling import random_density, random_pure, random_snc

seeds = st.integers(0, 2**32 - 1)


def _round_trip(doc):
    return statefile.decode(json.loads(statefile.dumps(doc)))


@given(seed=seeds, n=st.integers(1, 7))
def test_pure_round_trip(seed, n):
    psi = random_pure(n, np.random.default_rng(seed))
    doc = statefile.encode_pure(psi)
    back = _round_trip(doc)
    np.testing.assert_array_equal(back.payload, psi)
    assert statefile.encode_pure(back.payload) == doc


@given(seed=seeds, n=st.integers(1, 7))
def test_matrix_round_trip(seed, n):
    rho = random_density(n, np.random.default_rng(seed))
    doc = statefile.encode_matrix(rho)
    back = _round_trip(doc)
    np.testing.assert_array_equal(back.density(), rho)
    assert statefile.encode_matrix(back.payload) == doc


@given(seed=seeds, n=st.integers(1, 6))
def test_tensor_round_trip(seed, n):
    rho = random_density(n, np.random.default_rng(seed))
    x = symrep.to_tensor(rho)
    doc = statefile.encode_tensor(x)
    back = _round_trip(doc)
    assert back.payload == x
    assert statefile.encode_tensor(back.payload) == doc
    np.testing.assert_allclose(back.density(), rho, atol=1e-12)


def test_pairing_round_trip(rng):
    rho = random_snc(5, rng)
    doc = antistate.pair_decompose(rho).to_json()
    back = _round_trip(doc)
    assert back.repr == "pairing"
    np.testing.assert_allclose(back.density(), rho, atol=1e-9)


def test_load_from_disk(tmp_path, rng):
    rho = random_density(3, rng)
    path = tmp_path / "state.json"
    path.write_text(statefile.dumps(statefile.encode_matrix(rho)))
    np.testing.assert_array_equal(statefile.load(path).density(), rho)


@pytest.mark.parametrize(
    "doc",
    [
        {},
        {"n_qubits": 2, "repr": "wavefunction", "data": []},
        {"n_qubits": 2, "repr": "dicke_pure", "data": [[1, 0], [0, 0]]},
        {"n_qubits": 1, "repr": "dicke_matrix", "data": [[[1, 0]]]},
        {"n_qubits": 1, "repr": "tensor", "data": [{"counts": [2, 0, 0, 0], "value": 1}]},
        {"n_qubits": -1, "repr": "dicke_pure", "data": []},
        {"n_qubits": 1, "repr": "pairing", "data": [{"weight": 0.5}]},
    ],
)
def test_malformed_documents(doc):
    with pytest.raises(statefile.StateFormatError):
        statefile.decode(doc)


def test_unreadable_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(statefile.StateFormatError):
        statefile.load(bad)
    with pytest.raises(statefile.StateFormatError):
        statefile.load(tmp_path / "missing.json")
