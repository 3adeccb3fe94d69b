import numpy as np
import pytest

from symnc import _kernels
from symnc.sampling import random_density

NB = _kernels.NUMBA_KERNELS
NP = _kernels.NUMPY_KERNELS


@pytest.mark.parametrize("counts", [(3, 0, 0, 0), (1, 0, 0, 2), (0, 1, 1, 1), (2, 2, 1, 0), (1, 1, 2, 1)])
def test_counts_kernel_backends_agree(counts):
    n = sum(counts)
    binom = _kernels.binom_table(n)
    a = NB["smatrix_counts"](*counts, binom)
    b = NP["smatrix_counts"](*counts, binom)
    np.testing.assert_allclose(a, b, atol=1e-14)


@pytest.mark.parametrize("mus", [(3, 3, 0), (1, 2, 3), (0, 2, 2, 1, 3), (2,)])
def test_string_kernel_matches_counts_kernel(mus):
    n = len(mus)
    binom = _kernels.binom_table(n)
    counts = [mus.count(m) for m in range(4)]
    grouped = NP["smatrix_counts"](*counts, binom)
    for backend in (NB, NP):
        np.testing.assert_allclose(
            backend["smatrix_strings"](np.array(mus), binom), grouped, atol=1e-14
        )


def test_string_kernel_is_ordering_invariant(rng):
    binom = _kernels.binom_table(6)
    mus = np.array([0, 1, 1, 2, 3, 3])
    ref = NP["smatrix_strings"](mus, binom)
    for _ in range(3):
        np.testing.assert_allclose(
            NP["smatrix_strings"](rng.permutation(mus), binom), ref, atol=1e-14
        )


@pytest.mark.parametrize("n", [1, 3, 4, 6])
def test_overlap_mesh_backends_agree(n, rng):
    rho = random_density(n, rng)
    sqrtb = np.sqrt(_kernels.binom_table(n)[n, : n + 1])
    thetas = np.linspace(0, np.pi, 13)
    phis = np.linspace(0, 2 * np.pi, 24, endpoint=False)
    a = NB["overlap_mesh"](rho, thetas, phis, sqrtb)
    b = NP["overlap_mesh"](rho, thetas, phis, sqrtb)
    point = np.array([[_kernels._overlap_point_loop(rho, t, p, sqrtb) for p in phis] for t in thetas])
    np.testing.assert_allclose(a, point, atol=1e-13)
    np.testing.assert_allclose(b, point, atol=1e-13)


def test_refine_backends_agree(rng):
    rho = random_density(5, rng)
    sqrtb = np.sqrt(_kernels.binom_table(5)[5, :6])
    starts = np.array([[0.4, 1.0], [2.0, 4.0], [1.5, 0.0]])
    va, pa = NB["refine"](rho, sqrtb, starts, 0.05, 0.05, 30)
    vb, pb = NP["refine"](rho, sqrtb, starts, 0.05, 0.05, 30)
    np.testing.assert_allclose(va, vb, atol=1e-12)
    np.testing.assert_allclose(pa, pb, atol=1e-9)


def test_refine_never_decreases_start_value(rng):
    rho = random_density(4, rng)
    sqrtb = np.sqrt(_kernels.binom_table(4)[4, :5])
    starts = rng.uniform([0, 0], [np.pi, 2 * np.pi], size=(8, 2))
    values, _ = _kernels.refine_maxima(rho, sqrtb, starts, 0.1, 0.1, 20)
    start_vals = [_kernels._overlap_point_loop(rho, t, p, sqrtb) for t, p in starts]
    assert np.all(values >= np.array(start_vals) - 1e-15)


def test_binom_table_is_read_only():
    table = _kernels.binom_table(5)
    assert table[5, 2] == 10
    with pytest.raises(ValueError):
        table[0, 0] = 2


def test_env_flag_selects_numpy_fallback():
    import subprocess
    import sys

    code = (
        "from symnc import _kernels, entcert, families;"
        "assert _kernels.overlap_mesh is _kernels.NUMPY_KERNELS['overlap_mesh'];"
        "print(repr(entcert.max_overlap(families.rank2_state(3, 1)).value))"
    )
    env = {"SYMNC_DISABLE_NUMBA": "1", "PATH": ""}
    proc = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)
    assert proc.returncode == 0, proc.stderr
    assert abs(float(proc.stdout) - 0.375) < 1e-12
