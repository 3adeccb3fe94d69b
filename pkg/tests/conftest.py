import numpy as np
import pytest
from hypothesis import settings

from symnc import symrep

settings.register_profile("symnc", max_examples=40, deadline=None, derandomize=True)
settings.load_profile("symnc")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def state_from_a(a):
    """Three-qubit SNC state whose only nontrivial coordinates are the two-body matrix A."""
    coords = {(3, 0, 0, 0): 1.0}
    for i in range(3):
        for j in range(i, 3):
            counts = [1, 0, 0, 0]
            counts[i + 1] += 1
            counts[j + 1] += 1
            coords[tuple(counts)] = a[i][j]
    return symrep.from_tensor(symrep.SymTensor.from_coords(3, coords))


A_DIAG = np.diag([2 / 3, 2 / 3, -1 / 3])


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[key])
