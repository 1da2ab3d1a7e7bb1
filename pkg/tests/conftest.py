import numpy as np
import pytest

from looplight.atom import SystemParams

FIG3A = dict(omega31=50.0, omega32=34.0, omega42=100.0)

_CRITERIA = []


@pytest.fixture
def criterion():
    """Record a one-line pass/fail verdict for the acceptance summary."""

    def record(number, passed, detail):
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}"
        _CRITERIA.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA):
            terminalreporter.write_line(line)


def fig3(delta41=-25.0, delta31=0.0, **kw):
    return SystemParams(delta41=delta41, delta31=delta31, **{**FIG3A, **kw})


def random_params(rng, gammaC=True, equalGamma=False):
    g = rng.uniform(0.3, 2.0, 4)
    if equalGamma:
        g[:] = g[0]
    return SystemParams(
        omega31=rng.uniform(0.5, 40), omega32=rng.uniform(0.5, 40), omega42=rng.uniform(0.5, 40),
        phi31=rng.uniform(-np.pi, np.pi), phi32=rng.uniform(-np.pi, np.pi),
        phi42=rng.uniform(-np.pi, np.pi), phi41=rng.uniform(-np.pi, np.pi),
        delta31=rng.uniform(-10, 10), delta32=rng.uniform(-10, 10),
        delta42=rng.uniform(-10, 10), delta41=rng.uniform(-30, 30),
        gamma31=g[0], gamma32=g[1], gamma41=g[2], gamma42=g[3],
        gammaC=rng.uniform(0, 1.0) if gammaC else 0.0)
