"""Propagation observables from the probe susceptibilities.

Uses the dilute-medium index ``n = sqrt(1 + chi) ~ 1 + chi / 2``.  The
intensity-dependent index change is therefore ``n2 I = Re[chi3Scaled] / 2``
and the accumulated self-phase after a length ``L`` is ``n2 I k L``.
Absorption and gain lengths are field-amplitude 1/e lengths
``lambda / (pi |Im chi|)``; intensity 1/e lengths ``lambda / (2 pi |Im chi|)``
are half of those.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass, field
from typing import Optional

from .atom import MediumParams

RE_TOLERANCE = 1e-12


class DegenerateResponse(UserWarning):
    """Re[chi3Scaled] vanishes, so no finite L_pi exists."""


def _sign(x: float) -> str:
    if x > 0:
        return "absorptive"
    if x < 0:
        return "gain"
    return "none"


def _length(k: float, im: float) -> Optional[float]:
    return None if im == 0 else 1.0 / (k * abs(im) / 2.0)


@dataclass(frozen=True)
class PropagationReport:
    n2I: float
    phasePerMeter: float
    Lpi: Optional[float]
    linearAbsorptionLength: Optional[float]
    nonlinearGainLength: Optional[float]
    linearAbsorptionLengthIntensity: Optional[float] = None
    nonlinearGainLengthIntensity: Optional[float] = None
    signNotes: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def selfphase_report(chi1: complex, chi3Scaled: complex, m: MediumParams) -> PropagationReport:
    """Self-phase and absorption scales for absolute (not normalized) susceptibilities.

    When Re[chi3Scaled] vanishes a :class:`DegenerateResponse` warning is
    issued and ``Lpi`` is None.
    """
    chi1 = complex(chi1)
    chi3Scaled = complex(chi3Scaled)
    k = m.wavenumber
    n2I = chi3Scaled.real / 2.0
    phasePerMeter = k * n2I
    if abs(chi3Scaled.real) <= RE_TOLERANCE * abs(chi3Scaled) or phasePerMeter == 0:
        warnings.warn("Re[chi3Scaled] is zero; L_pi is undefined", DegenerateResponse, stacklevel=2)
        Lpi = None
    else:
        Lpi = math.pi / abs(phasePerMeter)
    # field amplitude decays as exp(-k Im(chi) z / 2)
    linLen = _length(k, chi1.imag)
    nlLen = _length(k, chi3Scaled.imag)
    return PropagationReport(
        n2I=n2I,
        phasePerMeter=phasePerMeter,
        Lpi=Lpi,
        linearAbsorptionLength=linLen,
        nonlinearGainLength=nlLen,
        linearAbsorptionLengthIntensity=None if linLen is None else linLen / 2,
        nonlinearGainLengthIntensity=None if nlLen is None else nlLen / 2,
        signNotes={"linear": _sign(chi1.imag), "nonlinear": _sign(chi3Scaled.imag)},
    )


def phase_after_length(report: PropagationReport, L: float) -> float:
    """Nonlinear phase ``n2 I k L`` in rad."""
    return report.phasePerMeter * L
