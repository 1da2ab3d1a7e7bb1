import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from looplight.atom import SystemParams
from looplight.floquet import (SingularGenerator, harmonics, reconstruct_coherence_41,
                               solve_hierarchy, solve_hierarchy_batch)
from looplight.liouvillian import PROBE_COMPONENT, build_liouvillian, vector_to_density
from looplight.oracle import harmonic_balance

from conftest import fig3, random_params


def solve(p, order=3):
    return solve_hierarchy(build_liouvillian(p), p.multiphoton_detuning, order, p.loop_phase)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 31), st.integers(1, 6))
def test_parity_of_stored_coefficients(seed, order):
    s = solve(random_params(np.random.default_rng(seed)), order)
    for n, m in s.coefficients:
        assert abs(m) <= n and (n - m) % 2 == 0
    expected = {(n, m) for n in range(order + 1) for m in harmonics(n)}
    assert set(s.coefficients) == expected


def test_no_even_order_probe_response():
    s = solve(fig3())
    assert (2, 1) not in s.coefficients and (2, -1) not in s.coefficients
    assert np.all(s.coefficient(2, 1) == 0) and np.all(s.coefficient(2, -1) == 0)


def test_zeroth_order_is_steady_state():
    p = fig3()
    L = build_liouvillian(p)
    s = solve(p)
    assert np.allclose(L.M0 @ s.coefficient(0, 0), L.Sigma0, atol=1e-12)


@pytest.mark.parametrize("seed", range(4))
def test_resonant_series_matches_direct_solve(seed):
    rng = np.random.default_rng(seed)
    p = random_params(rng)
    p = p.with_(delta41=p.delta31 + p.delta42 - p.delta32)
    assert p.multiphoton_detuning == pytest.approx(0, abs=1e-12)
    L = build_liouvillian(p)
    s = solve_hierarchy(L, 0.0, 3, p.loop_phase)
    errs = []
    for om in (0.2, 0.1):
        M, S = L.at(om, 0.0, p.loop_phase, 0.0)
        exact = np.linalg.solve(M, S)
        errs.append(np.linalg.norm(s.reconstruct(om) - exact))
    # truncation after order 3 leaves an Omega^4 residual
    assert errs[0] / errs[1] == pytest.approx(16, rel=0.15)


def test_scaling_per_order():
    p = fig3(-22.0)
    s = solve(p, 5)
    for n in (1, 3, 5):
        a = s.coefficient(n, 1) * 1.0 ** n
        b = s.coefficient(n, 1) * 2.0 ** n
        assert np.allclose(b, a * 2 ** n)
    diff = s.harmonic_sum(2.0, 1, max_order=3) - s.harmonic_sum(2.0, 1, max_order=1)
    diff_half = s.harmonic_sum(1.0, 1, max_order=3) - s.harmonic_sum(1.0, 1, max_order=1)
    assert np.allclose(diff, 8 * diff_half)


def test_phase_covariance():
    p = fig3(-23.0)
    q = p.with_(phi41=0.9, phi31=-0.4)
    a, b = solve(p), solve(q)
    for key in a.coefficients:
        assert np.array_equal(a.coefficients[key], b.coefficients[key])
    dphi = q.loop_phase - p.loop_phase
    for (n, m) in a.coefficients:
        single = type(a)({(n, m): a.coefficients[(n, m)]}, 3, a.Delta, p.loop_phase)
        other = type(a)({(n, m): a.coefficients[(n, m)]}, 3, a.Delta, q.loop_phase)
        x = reconstruct_coherence_41(single, 3.4, 0.0, 0.7)
        y = reconstruct_coherence_41(other, 3.4, 0.0, 0.7)
        if abs(x) > 0:
            assert y / x == pytest.approx(np.exp(1j * (m - 1) * dphi), rel=1e-12)


def test_recursion_locality():
    p = fig3(-21.0)
    L = build_liouvillian(p)
    full = solve_hierarchy(L, p.multiphoton_detuning, 5)
    short = solve_hierarchy(L, p.multiphoton_detuning, 2)
    for key, vec in short.coefficients.items():
        assert np.array_equal(vec, full.coefficients[key])
    # order 3, harmonic 1 from order 2 alone
    A = L.M0 + 1j * p.multiphoton_detuning * np.eye(15)
    rhs = -(L.Mminus @ short.coefficient(2, 2) + L.Mplus @ short.coefficient(2, 0))
    assert np.allclose(np.linalg.solve(A, rhs), full.coefficient(3, 1), rtol=1e-10, atol=1e-14)


@pytest.mark.parametrize("seed", range(5))
def test_reconstruction_hermitian_unit_trace(seed):
    rng = np.random.default_rng(seed)
    p = random_params(rng)
    s = solve(p, 5)
    for t in (0.0, 0.4, 1.3):
        rho = vector_to_density(s.reconstruct(0.5, t))
        assert np.allclose(rho, rho.conj().T, atol=1e-10)
        assert np.trace(rho) == pytest.approx(1.0, abs=1e-10)


def test_singular_generator_without_controls():
    p = SystemParams(delta41=0.0)
    with pytest.raises(SingularGenerator) as info:
        solve(p)
    assert info.value.shift == 0
    assert info.value.cond > 1e12


def test_max_order_validation():
    with pytest.raises(ValueError):
        solve_hierarchy(build_liouvillian(fig3()), 1.0, 0)


def test_batch_matches_single():
    ps = [fig3(d) for d in (-30.0, -25.0, 0.0, 12.0)]
    Ls = [build_liouvillian(p) for p in ps]
    coeffs, ok = solve_hierarchy_batch(np.stack([L.M0 for L in Ls]), np.stack([L.Sigma0 for L in Ls]),
                                       Ls[0], np.array([p.multiphoton_detuning for p in ps]), 3)
    assert ok.all()
    for i, p in enumerate(ps):
        s = solve(p)
        for key, vec in s.coefficients.items():
            # explicit inverses lose a few digits on the small high-order terms
            assert np.linalg.norm(coeffs[key][i] - vec) <= 1e-8 * np.linalg.norm(vec)


def test_batch_flags_singular_points():
    ps = [SystemParams(delta41=0.0), fig3(-25.0)]
    Ls = [build_liouvillian(p) for p in ps]
    coeffs, ok = solve_hierarchy_batch(np.stack([L.M0 for L in Ls]), np.stack([L.Sigma0 for L in Ls]),
                                       Ls[0], np.array([0.0, -25.0]), 3)
    assert list(ok) == [False, True]
    assert np.isnan(coeffs[(1, 1)][0]).all()
    assert np.isfinite(coeffs[(1, 1)][1]).all()


def test_high_order_series_converges_to_exact_periodic_solution():
    p = fig3(-25.0)
    s = solve(p, 21)
    exact = harmonic_balance(p, 3.4, 14)[1]
    assert np.allclose(s.harmonic_sum(3.4, 1), exact, rtol=0, atol=1e-9 * np.abs(exact).max())


def test_coherence_without_probe_is_four_wave_mixing_term():
    p = fig3(-25.0)
    s = solve(p)
    t, phi41, w41 = 0.8, 0.3, 1000.0
    got = reconstruct_coherence_41(s, 0.0, phi41, t, w41)
    r0 = s.coefficient(0, 0)[PROBE_COMPONENT]
    expect = r0 * np.exp(-1j * (w41 - s.Delta) * t) * np.exp(1j * (phi41 - s.phi))
    assert got == pytest.approx(expect, rel=1e-12)


def test_coherence_plain_sum_at_origin():
    s = solve(fig3(-25.0))
    want = sum(v[PROBE_COMPONENT] * 3.4 ** n for (n, m), v in s.coefficients.items())
    assert reconstruct_coherence_41(s, 3.4, 0.0, 0.0) == pytest.approx(want, rel=1e-12)
