import sys
import numpy as np
import pytest

from kronreal.generate import SplitMix64, random_realization, safe_points, sample_points
from kronreal.realization import evaluate


@pytest.fixture
def rng():
    return SplitMix64(20240601)


def rand_real(seed, n, m_in, m_out, d_identity=False):
    return random_realization(SplitMix64(seed), n, m_in, m_out, d_identity)


def points_for(*realizations, count=20):
    def check(z):
        for R in realizations:
            evaluate(R, z)

    return safe_points(check, sample_points(count))


def assert_close(X, Y, tol):
    gap = np.linalg.norm(np.asarray(X) - np.asarray(Y))
    assert gap <= tol, f"residual {gap:.3e} > {tol:.1e}"


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.RESULTS:
        terminalreporter.write_line(line)
