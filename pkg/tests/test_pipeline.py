import csv
import io

import numpy as np
import pytest

from symnc import entcert, families, pipeline, symrep
from symnc.entcert import Verdict
from symnc.sampling import random_density, random_snc
from symnc.symrep import BlochVector


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_certify_family_state_all_routes_agree():
    result = pipeline.certify_all(families.rank2_state(3, 1))
    assert result["verdict"] == "GenuinelyEntangled"
    assert result["exact"]
    by_test = {t["test"]: t["verdict"] for t in result["tests"]}
    for name in ("three_qubit_exact", "rank2_certify", "sufficient_criterion", "ppt_first_qubit"):
        assert by_test[name] == "GenuinelyEntangled"


def test_certify_ghz_mixture_separable():
    result = pipeline.certify_all(families.rank2_state(3, 0))
    assert result["verdict"] == "Separable"


def test_certify_even_n(rng):
    result = pipeline.certify_all(random_density(4, rng))
    assert not result["snc"]["is_snc"]
    assert result["snc"]["reason"] == "even-N impossibility"


def test_certify_single_qubit():
    assert pipeline.certify_all(np.diag([0.7, 0.3]))["verdict"] == "Separable"


def test_certify_rejects_invalid():
    with pytest.raises(symrep.InvalidStateError):
        pipeline.certify_all(np.diag([1.5, -0.5, 0.0, 0.0]))


def test_certify_never_contradicts(rng):
    for _ in range(20):
        pipeline.certify_all(random_snc(3, rng), grid=61)
    for _ in range(5):
        pipeline.certify_all(entcert.product_pair(5, BlochVector(*rng.uniform(0, 3, 2))), grid=61)


def test_contradiction_is_reported(monkeypatch):
    fake = entcert.CertVerdict(Verdict.SEPARABLE, "three_qubit_exact", exact=True)
    monkeypatch.setattr(pipeline, "three_qubit_exact", lambda rho: fake)
    with pytest.raises(pipeline.CertifierContradiction):
        pipeline.certify_all(families.rank2_state(3, 1), grid=61)


def test_csv_format():
    text = pipeline.to_csv(["a", "b", "c"], [(0.1, True, None)])
    assert text == "a,b,c\n0.10000000000000001,1,\n"


def test_fig1_named_rows():
    rows = {}
    for a in [(1 / 3, 1 / 3, 1 / 3), (2 / 3, 2 / 3, -1 / 3)]:
        rows[a] = pipeline._classify_alphas(np.array(a))
    assert rows[(1 / 3, 1 / 3, 1 / 3)][3:] == (True, True, False)
    assert rows[(2 / 3, 2 / 3, -1 / 3)][3:] == (True, False, True)


def test_fig1_scan_contains_named_points():
    rows = _rows(pipeline.scan_fig1(30))
    assert len(rows) == 31 * 32 // 2 + 120
    pts = {(round(float(r["alpha1"]), 9), round(float(r["alpha2"]), 9)): r for r in rows}
    center = pts[(round(1 / 3, 9), round(1 / 3, 9))]
    assert (center["physical"], center["separable"], center["detected"]) == ("1", "1", "0")


def test_fig1_regions_nest():
    for r in _rows(pipeline.scan_fig1(40)):
        if r["detected"] == "1":
            assert r["physical"] == "1" and r["separable"] == "0"


def test_fig1_resolution_floor():
    with pytest.raises(ValueError):
        pipeline.scan_fig1(10)


def test_trilobe_boundary_lies_on_criterion_boundary():
    for a in pipeline.trilobe_boundary(90):
        assert a.sum() == pytest.approx(1.0, abs=1e-14)
        assert a.max() == pytest.approx(a @ a, abs=1e-14)


def test_disk_rim_is_unit_purity():
    for a in pipeline.disk_rim(50):
        assert a.sum() == pytest.approx(1.0, abs=1e-14)
        assert a @ a == pytest.approx(1.0, abs=1e-14)


def test_simplex_weights():
    weights = list(pipeline.simplex_weights(5, 4))
    assert len(weights) == 15
    assert all(abs(sum(w) - 0.5) < 1e-15 and min(w) >= 0 for w in weights)


def test_fig2_three_qubits():
    rows = _rows(pipeline.scan_fig2(3, 40, grid=61))
    step = 0.5 / 40
    first_numeric = min(float(r["lambda1"]) for r in rows if r["numeric"] == "1")
    first_sphere = min(float(r["lambda1"]) for r in rows if r["sphere"] == "1")
    assert abs(first_numeric - 0.375) <= step + 1e-12
    assert abs(first_sphere - 7 / 16) <= step + 1e-12
    for r in rows:
        assert r["exact"] == ("1" if float(r["lambda1"]) > 0.375 else "0")


def test_fig2_five_qubits_sphere_inside_numeric():
    rows = _rows(pipeline.scan_fig2(5, 8, grid=61))
    assert "exact" in rows[0] and rows[0]["exact"] == ""
    assert any(r["sphere"] == "1" for r in rows)
    assert any(r["numeric"] == "1" and r["sphere"] == "0" for r in rows)
    for r in rows:
        if r["sphere"] == "1":
            assert r["numeric"] == "1"


@pytest.mark.parametrize("n", [1, 2, 4])
def test_fig2_rejects_bad_n(n):
    with pytest.raises(ValueError):
        pipeline.scan_fig2(n, 4)
