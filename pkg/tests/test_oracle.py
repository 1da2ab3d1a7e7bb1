import csv
import math

import numpy as np
import pytest

from looplight.atom import ProbeSpec
from looplight.floquet import solve_hierarchy
from looplight.liouvillian import PROBE_COMPONENT, build_liouvillian, vector_to_density
from looplight.oracle import (InsufficientTail, StepTooCoarse, extract_harmonics, harmonic_balance,
                              integrate, max_step, period_step, settle_time, steady_harmonics)

from conftest import fig3

OMEGA41 = 3.4  # one tenth of omega32


def rel(a, b):
    return np.linalg.norm(a - b) / np.linalg.norm(b)


@pytest.fixture(scope="module")
def runs():
    """Tail harmonics at Fig. 3(a) parameters, -25 gamma, cached for the module."""
    p = fig3(-25.0)
    return {
        "p": p,
        "full": steady_harmonics(p, ProbeSpec(omega41=OMEGA41), mRange=3),
        "fine": steady_harmonics(p, ProbeSpec(omega41=OMEGA41), mRange=3, refine=2),
        "half": steady_harmonics(p, ProbeSpec(omega41=OMEGA41 / 2), mRange=3),
    }


@pytest.fixture(scope="module")
def trajectory():
    p = fig3(-25.0)
    dt, per = period_step(p, OMEGA41)
    T = 2 * math.pi / abs(p.multiphoton_detuning)
    tr = integrate(p, ProbeSpec(omega41=OMEGA41), 120 * T, dt, storeFrom=100 * T)
    return p, tr, per


def test_without_probe_reaches_zeroth_order():
    p = fig3(-25.0)
    probe = ProbeSpec(omega41=0.0)
    tr = integrate(p, probe, 1.05 * settle_time(p), max_step(p, 0.0), storeFrom=settle_time(p))
    R0 = np.linalg.solve(build_liouvillian(p).M0, build_liouvillian(p).Sigma0)
    assert np.abs(tr.states[-1] - R0).max() < 1e-8
    h = extract_harmonics(tr, 0.0, 0)
    assert np.abs(h[0] - R0).max() < 1e-8


def test_trace_hermiticity_positivity(trajectory):
    _, tr, _ = trajectory
    rho = tr.densities()
    assert np.abs(np.trace(rho, axis1=1, axis2=2) - 1).max() < 1e-10
    assert np.abs(rho - np.conj(np.swapaxes(rho, 1, 2))).max() < 1e-10
    herm = 0.5 * (rho + np.conj(np.swapaxes(rho, 1, 2)))
    assert np.linalg.eigvalsh(herm).min() >= -1e-8


def test_tail_is_periodic_in_multiphoton_detuning(trajectory):
    _, tr, per = trajectory
    lag = per
    tail = tr.states[-10 * lag:, PROBE_COMPONENT]
    shifted = tr.states[-11 * lag:-lag, PROBE_COMPONENT]
    half = tr.states[-10 * lag - lag // 2:-lag // 2, PROBE_COMPONENT]
    scale = np.abs(tail).max()
    assert np.abs(tail - shifted).max() < 1e-7 * scale
    assert np.abs(tail - half).max() > 1e-2 * scale


def test_central_cross_validation(runs):
    p = runs["p"]
    s = solve_hierarchy(build_liouvillian(p), p.multiphoton_detuning, 21)
    series = s.harmonic_sum(OMEGA41, 1)
    assert rel(runs["full"][1], series) < 1e-4
    assert abs(runs["full"][1][PROBE_COMPONENT] / series[PROBE_COMPONENT] - 1) < 1e-4


def test_matches_exact_harmonic_balance(runs):
    hb = harmonic_balance(runs["p"], OMEGA41, 14)
    for m in (-3, -1, 0, 1, 2):
        assert rel(runs["full"][m], hb[m]) < 1e-5


def test_richardson_step_halving(runs):
    for m in (0, 1, 2):
        assert rel(runs["full"][m], runs["fine"][m]) < 1e-6


def test_second_harmonic_scales_quadratically(runs):
    a = runs["full"][2][PROBE_COMPONENT]
    b = runs["half"][2][PROBE_COMPONENT]
    assert math.log2(abs(a / b)) == pytest.approx(2.0, abs=0.1)


def test_cubic_coefficient_isolation(runs):
    p = runs["p"]
    s = solve_hierarchy(build_liouvillian(p), p.multiphoton_detuning, 3)
    y1 = runs["full"][1][PROBE_COMPONENT] / OMEGA41
    y2 = runs["half"][1][PROBE_COMPONENT] / (OMEGA41 / 2)
    b = (y1 - y2) / (OMEGA41 ** 2 * 0.75)
    want = s.coefficient(3, 1)[PROBE_COMPONENT]
    err = abs(b * OMEGA41 ** 2 - want * OMEGA41 ** 2) / abs(want * OMEGA41 ** 2)
    print(f"cubic fit relative error at -25 gamma: {err:.3e}")
    assert err < 1e-3


def test_step_guard():
    p = fig3(-25.0)
    with pytest.raises(StepTooCoarse):
        integrate(p, ProbeSpec(), 1.0, 2 * max_step(p, 3.4))


def test_insufficient_tail():
    p = fig3(-25.0)
    dt, per = period_step(p, OMEGA41)
    tr = integrate(p, ProbeSpec(), 5 * per * dt, dt)
    with pytest.raises(InsufficientTail):
        extract_harmonics(tr, p.multiphoton_detuning, 1)
    with pytest.raises(InsufficientTail):
        extract_harmonics(tr, p.multiphoton_detuning, 1, periods=3)
    # spacing that does not divide the period
    with pytest.raises(InsufficientTail):
        extract_harmonics(tr, p.multiphoton_detuning * 1.37, 1)


def test_period_step_divides_period():
    p = fig3(-25.0)
    dt, n = period_step(p, OMEGA41)
    assert n * dt == pytest.approx(2 * math.pi / 25.0, rel=1e-14)
    assert dt <= max_step(p, OMEGA41)


def test_csv_dump(tmp_path):
    p = fig3(-25.0)
    tr = integrate(p, ProbeSpec(), 20 * max_step(p, 3.4), max_step(p, 3.4))
    path = tmp_path / "traj.csv"
    tr.to_csv(path)
    rows = list(csv.reader(open(path)))
    assert rows[0][:3] == ["t", "re1", "im1"] and len(rows[0]) == 31
    assert len(rows) == len(tr.times) + 1
    assert complex(float(rows[-1][25]), float(rows[-1][26])) == tr.states[-1][PROBE_COMPONENT]


def test_density_reconstruction(trajectory):
    _, tr, _ = trajectory
    rho = vector_to_density(tr.states[-1])
    assert rho.shape == (4, 4)
    assert np.allclose(tr.densities()[-1], rho)


def test_cubic_isolation_error_shrinks_with_probe():
    p = fig3(-25.0)
    want = solve_hierarchy(build_liouvillian(p), p.multiphoton_detuning, 3).coefficient(3, 1)[PROBE_COMPONENT]

    def fit_error(w):
        y1 = harmonic_balance(p, w, 14)[1][PROBE_COMPONENT] / w
        y2 = harmonic_balance(p, w / 2, 14)[1][PROBE_COMPONENT] / (w / 2)
        return abs((y1 - y2) / (0.75 * w ** 2) - want) / abs(want)

    big, small = fit_error(OMEGA41), fit_error(OMEGA41 / 10)
    assert small < 2e-3
    assert big / small == pytest.approx(100, rel=0.2)
