"""Parameter sets of the reference figures.

Figures 2 and 3 are in units of the natural linewidth.  Figure 4 describes
a sodium vapor with argon buffer gas; its Rabi frequencies and detunings
are quoted as bare "GHz" and :func:`calibrate_units` decides whether that
means 1e9 rad/s or 2 pi 1e9 rad/s by comparing L_pi against 2.9 cm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .atom import ATOMIC_MASS_UNIT, MediumParams, ProbeSpec, SystemParams
from .broadening import (DEFAULT_NODES, doppler_average_scan, doppler_linewidth_fwhm,
                         gauss_hermite_rule, most_probable_speed, temperature_for_linewidth)
from .propagation import selfphase_report

SODIUM_MASS = 22.98976928 * ATOMIC_MASS_UNIT
SODIUM_D1_WAVELENGTH = 589.2e-9
SODIUM_LINEWIDTH = 2 * math.pi * 9.76e6
VAPOR_TEMPERATURE = 547.6
REFERENCE_LPI = 0.029

PLAIN_GHZ = 1e9
ANGULAR_GHZ = 2 * math.pi * 1e9
# outcome of calibrate_units(); checked by the test suite
FIG4_UNIT = PLAIN_GHZ
FIG4_LPI_DETUNING = -17.8

# fraction of the full Doppler width used by panels (b)-(d); panel (a) is sub-natural
_FIG4_FRACTIONS = {"fig4a": None, "fig4b": 0.5, "fig4c": 0.9, "fig4d": 1.0}
_SUBNATURAL_FRACTION = 0.5  # panel (a): FWHM of half a natural linewidth
_FIG3_DELTA31 = {"fig3a": 0.0, "fig3b": 0.7, "fig3c": 1.5, "fig3d": 1.7}

PRESET_NAMES = ("fig2",) + tuple(_FIG3_DELTA31) + tuple(_FIG4_FRACTIONS)


@dataclass(frozen=True)
class Preset:
    """Everything needed to reproduce one figure panel.

    ``units`` is "gamma" (rates in natural linewidths) or "si" (rad/s).
    Panels with a medium are Doppler averaged with ``nodes`` velocities.
    """

    name: str
    system: SystemParams
    probe: ProbeSpec
    grid: np.ndarray
    units: str
    medium: Optional[MediumParams] = None
    nodes: int = DEFAULT_NODES


def sodium_medium(temperature: float = VAPOR_TEMPERATURE) -> MediumParams:
    """Na vapor at 1e20 m^-3 with Ar buffer gas at 3.95e23 m^-3, co-propagating beams."""
    return MediumParams(density=1.0e20, wavelength=SODIUM_D1_WAVELENGTH,
                        temperature=temperature, atomMass=SODIUM_MASS,
                        selfCollisionConst=1.50e-13, bufferCollisionConst=2.53e-15,
                        bufferDensity=3.95e23)


def fig4_system(unit: float = FIG4_UNIT) -> SystemParams:
    g = SODIUM_LINEWIDTH
    return SystemParams(omega31=30 * unit, omega32=25 * unit, omega42=60 * unit,
                        delta31=1.6 * unit, gamma31=g, gamma32=g, gamma41=g, gamma42=g,
                        dephasing="optical")


def fig4_temperature(name: str) -> float:
    """Temperature giving the Doppler width of a Fig. 4 panel."""
    m = sodium_medium()
    frac = _FIG4_FRACTIONS[name]
    if frac is None:
        fwhm = _SUBNATURAL_FRACTION * SODIUM_LINEWIDTH
        return temperature_for_linewidth(fwhm, SODIUM_MASS, m.wavenumber)
    return VAPOR_TEMPERATURE * frac ** 2


def get_preset(name: str, unit: float = FIG4_UNIT) -> Preset:
    if name == "fig2":
        return Preset(name, SystemParams(omega31=50.0, omega42=100.0), ProbeSpec(),
                      np.linspace(-120.0, 120.0, 2401), "gamma")
    if name in _FIG3_DELTA31:
        p = SystemParams(omega31=50.0, omega32=34.0, omega42=100.0, delta31=_FIG3_DELTA31[name])
        return Preset(name, p, ProbeSpec(), np.linspace(-40.0, -10.0, 601), "gamma")
    if name in _FIG4_FRACTIONS:
        return Preset(name, fig4_system(unit), ProbeSpec(),
                      np.linspace(-25.0, -5.0, 401) * unit, "si",
                      medium=sodium_medium(fig4_temperature(name)))
    raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")


def fig4_response_at(delta41: float, unit: float = FIG4_UNIT, nodes: int = DEFAULT_NODES,
                     name: str = "fig4d", system: Optional[SystemParams] = None):
    """Absolute ``(chi1, chi3Scaled)`` of a Fig. 4 panel at one probe detuning (rad/s)."""
    pre = get_preset(name, unit)
    q = gauss_hermite_rule(most_probable_speed(pre.medium.temperature, SODIUM_MASS), nodes)
    c = doppler_average_scan(system or pre.system, pre.probe, pre.medium, [delta41], q,
                             normalized=False)
    return c.chi1[0], c.chi3Scaled[0]


def calibrate_units(nodes: int = DEFAULT_NODES, target: float = REFERENCE_LPI) -> dict:
    """L_pi at the Fig. 4(d) operating point under both readings of "GHz".

    Returns ``{"unit": chosen, "candidates": {unit: Lpi}}`` with the unit
    whose L_pi lies closest to ``target``.
    """
    medium = sodium_medium()
    out = {}
    for unit in (PLAIN_GHZ, ANGULAR_GHZ):
        chi1, chi3 = fig4_response_at(FIG4_LPI_DETUNING * unit, unit, nodes)
        out[unit] = selfphase_report(chi1, chi3, medium).Lpi
    best = min(out, key=lambda u: math.inf if out[u] is None else abs(out[u] - target))
    return {"unit": best, "candidates": out}


def full_doppler_width() -> float:
    m = sodium_medium()
    return doppler_linewidth_fwhm(VAPOR_TEMPERATURE, SODIUM_MASS, m.wavenumber)
