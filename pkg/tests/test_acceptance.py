"""Acceptance criteria 1-9, each at its stated tolerance and time budget.

Every criterion records a ``PASS``/``FAIL`` line that is printed in the
terminal summary (and to stdout when run with ``-s``).
"""
import contextlib
import csv
import io
import time
from math import comb

import numpy as np
import pytest

from symnc import dense, entcert, families, pipeline, symrep
from symnc.antistate import _clusters, CLUSTER_TOL, antistate, pair_decompose, purity_check
from symnc.entcert import Verdict
from symnc.families import MixtureSpec
from symnc.sampling import random_density, random_snc

RESULTS: dict[int, str] = {}
SEED = 42


@contextlib.contextmanager
def criterion(number, title, budget):
    start = time.perf_counter()
    status, detail = "FAIL", ""
    try:
        yield
        elapsed = time.perf_counter() - start
        if elapsed >= budget:
            detail = f" (over budget {budget:g}s)"
            raise AssertionError(f"criterion {number} took {elapsed:.2f}s, budget {budget:g}s")
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        line = f"{status} criterion {number}: {title} [{elapsed:.2f}s]{detail}"
        RESULTS[number] = line
        print(line)


def test_criterion_1_three_qubit_threshold():
    with criterion(1, "N=3 exact threshold at 3/8", 10.0):
        lams = np.round(np.arange(0, 5001) * 1e-4, 12)
        entangled = np.array([
            entcert.three_qubit_exact(families.mixture_state(MixtureSpec(3, (0.5 - l, l)))).verdict
            is Verdict.GENUINELY_ENTANGLED
            for l in lams
        ])
        flips = np.nonzero(np.diff(entangled.astype(int)))[0]
        assert len(flips) == 1
        flip = 0.5 * (lams[flips[0]] + lams[flips[0] + 1])
        assert abs(flip - 0.375) <= 1e-4
        assert not entangled[0] and entangled[-1]


def test_criterion_2_sphere_tangent_point():
    with criterion(2, "sphere-bound tangent point (1/16, 7/16)", 1.0):
        assert abs(families.sphere_bound(MixtureSpec(3, (1 / 16, 7 / 16))).margin) <= 1e-12
        for l1 in np.linspace(7 / 16 + 1e-6, 0.5, 2001):
            assert families.sphere_bound(MixtureSpec(3, (0.5 - l1, l1))).holds


def _expected_rank(n, r):
    if r in (0, n):
        return 1
    root = int(round(np.sqrt(n)))
    if root * root == n and r in ((n - root) // 2, (n + root) // 2):
        return 2
    return 3


def test_criterion_3_closed_form_golden_values():
    with criterion(3, "two-body matrix golden values and rank classes", 1.0):
        np.testing.assert_allclose(families.a_closed_form(3, 1), np.diag([2 / 3, 2 / 3, -1 / 3]), atol=1e-12, rtol=0)
        np.testing.assert_allclose(families.a_closed_form(9, 3), np.diag([0.5, 0.5, 0.0]), atol=1e-12, rtol=0)
        seen = set()
        for n in (3, 5, 7, 9):
            for r in range(n + 1):
                a = families.a_closed_form(n, r)
                np.testing.assert_allclose(
                    entcert.a_matrix(symrep.to_tensor(families.rank2_state(n, r))), a, atol=1e-12, rtol=0
                )
                rank = entcert.matrix_rank(a)
                assert rank == _expected_rank(n, r)
                seen.add(rank)
        assert seen == {1, 2, 3}


def test_criterion_4_certifier_agreement():
    with criterion(4, "exact / PPT / x-matrix agreement on 500 SNC_3 states", 30.0):
        rng = np.random.default_rng(SEED)
        separable = 0
        for _ in range(500):
            rho = random_snc(3, rng)
            exact = entcert.three_qubit_exact(rho).verdict is Verdict.SEPARABLE
            ppt = entcert.ppt_first_qubit(rho).min_eigenvalue >= -1e-9
            xm = entcert.x_matrix_positivity(symrep.to_tensor(rho), 1) >= -1e-9
            assert exact == ppt == xm
            separable += exact
        assert 0 < separable < 500


def test_criterion_5_oracle_equivalence():
    with criterion(5, "tensor and partial-transpose oracle equivalence, N = 3, 5, 7", 120.0):
        rng = np.random.default_rng(SEED)
        for n in (3, 5, 7):
            for _ in range(20):
                rho = random_density(n, rng)
                full = dense.expand(rho)
                x = symrep.to_tensor(rho)
                for counts in x.classes:
                    mus = rng.permutation(counts.ordered())
                    assert abs(dense.correlator(full, mus) - x[counts]) <= 1e-10
                # the full-space spectrum is the symmetric-block spectrum padded with zeros
                full_min = np.linalg.eigvalsh(dense.partial_transpose_first(full))[0]
                ours = entcert.ppt_first_qubit(rho).min_eigenvalue
                assert abs(min(ours, 0.0) - full_min) <= 1e-10


def test_criterion_6_structural_invariants():
    with criterion(6, "structural invariants on 200 SNC states", 60.0):
        rng = np.random.default_rng(SEED)
        for n in (3, 5, 7, 9):
            for _ in range(50):
                rho = random_snc(n, rng)
                assert purity_check(rho) <= 0.5 + 1e-12
                groups = _clusters(np.linalg.eigvalsh(rho), CLUSTER_TOL)
                assert all(len(g) % 2 == 0 for g in groups)
                pairing = pair_decompose(rho)
                for _, psi, _ in pairing.pairs:
                    assert abs(np.vdot(psi, antistate(psi))) <= 1e-12
                assert np.abs(pairing.reconstruct() - rho).max() <= 1e-9
                assert symrep.contraction_residual(symrep.to_tensor(rho)) <= 1e-12


def test_criterion_7_fig1_regions():
    with criterion(7, "A-eigenvalue region logic on a 200-step scan", 10.0):
        rows = list(csv.DictReader(io.StringIO(pipeline.scan_fig1(200))))
        assert len(rows) > 20000
        for r in rows:
            if r["detected"] == "1":
                assert r["physical"] == "1" and r["separable"] == "0"
        boundary = list(pipeline.trilobe_boundary(400))
        assert len(boundary) > 300
        for a in boundary:
            assert abs(a.max() - a @ a) < 1e-14
            assert pipeline._classify_alphas(a)[5] is False


def test_criterion_8_fig2_numeric_boundary():
    with criterion(8, "mixture scan: numeric boundary at lambda1 = 3/8 (N=3)", 60.0):
        resolution = 200
        step = 0.5 / resolution
        rows = list(csv.DictReader(io.StringIO(pipeline.scan_fig2(3, resolution))))
        lam1 = np.array([float(r["lambda1"]) for r in rows])
        numeric = np.array([r["numeric"] == "1" for r in rows])
        order = np.argsort(lam1)
        lam1, numeric = lam1[order], numeric[order]
        flips = np.nonzero(np.diff(numeric.astype(int)))[0]
        assert len(flips) == 1
        crossing = 0.5 * (lam1[flips[0]] + lam1[flips[0] + 1])
        assert abs(crossing - 0.375) <= 2 * step


def test_criterion_9_u_bound():
    with criterion(9, "u-bound and nonemptiness", 5.0):
        for n in (3, 5, 7, 9):
            for i in range(n // 2 + 1):
                assert families.max_u(n, i) <= comb(n, i) * 2.0 ** (-2 * i) + 1e-12
        for m in range(1, 11):
            assert comb(2 * m + 1, m) < 4 ** m
