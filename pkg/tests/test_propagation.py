import math
import warnings

import pytest
from hypothesis import given, strategies as st

from looplight.atom import MediumParams
from looplight.propagation import DegenerateResponse, phase_after_length, selfphase_report

M = MediumParams(density=1e20, wavelength=589.2e-9, temperature=547.6, atomMass=3.8e-26)
K = 2 * math.pi / 589.2e-9


def test_lpi_times_phase_rate_is_pi():
    r = selfphase_report(2e-6 - 8e-7j, 1e-5 - 1e-6j, M)
    assert r.Lpi * r.phasePerMeter == pytest.approx(math.pi, rel=1e-10)
    assert r.n2I == pytest.approx(0.5e-5)
    assert r.phasePerMeter == pytest.approx(K * 0.5e-5)


def test_lengths_and_signs():
    r = selfphase_report(2e-6 - 8e-7j, 1e-5 + 1e-6j, M)
    # intensity 1/e length of exp(-k Im(chi) z)
    assert r.linearAbsorptionLengthIntensity == pytest.approx(589.2e-9 / (2 * math.pi * 8e-7))
    assert r.linearAbsorptionLength == pytest.approx(2 * r.linearAbsorptionLengthIntensity)
    assert r.nonlinearGainLengthIntensity == pytest.approx(589.2e-9 / (2 * math.pi * 1e-6))
    assert r.signNotes == {"linear": "gain", "nonlinear": "absorptive"}


def test_purely_imaginary_chi3_has_no_lpi():
    with pytest.warns(DegenerateResponse):
        r = selfphase_report(1e-6j, 2e-6j, M)
    assert r.Lpi is None
    assert r.linearAbsorptionLength is not None and r.nonlinearGainLength is not None
    assert phase_after_length(r, 1.0) == 0.0


def test_no_imaginary_part_has_no_length():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        r = selfphase_report(1e-6, 1e-5, M)
    assert r.linearAbsorptionLength is None and r.signNotes["linear"] == "none"


def test_phase_after_length():
    r = selfphase_report(0, 3e-6, M)
    assert phase_after_length(r, r.Lpi) == pytest.approx(math.pi)
    assert phase_after_length(r, r.Lpi / 2) == pytest.approx(math.pi / 2)


def test_doubling_intensity_halves_lpi():
    a = selfphase_report(0, 3e-6, M)
    b = selfphase_report(0, 6e-6, M)
    assert b.Lpi == pytest.approx(a.Lpi / 2)


@given(st.floats(1e-9, 1e-3), st.floats(0, 10), st.floats(0, 10))
def test_phase_linear_in_length(chi3, L1, L2):
    r = selfphase_report(0, chi3, M)
    assert phase_after_length(r, L1 + L2) == pytest.approx(
        phase_after_length(r, L1) + phase_after_length(r, L2), rel=1e-12, abs=1e-300)


def test_lpi_inverse_in_density():
    # absolute chi scales with N, so L_pi scales as 1/N
    a = selfphase_report(0, 1e-6 * M.chi_unit, M)
    denser = MediumParams(density=2e20, wavelength=589.2e-9, temperature=547.6, atomMass=3.8e-26)
    b = selfphase_report(0, 1e-6 * denser.chi_unit, denser)
    assert b.Lpi == pytest.approx(a.Lpi / 2)
