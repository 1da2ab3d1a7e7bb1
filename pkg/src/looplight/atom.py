"""Parameter records and unit conversions for the double-Lambda loop atom.

Levels 1 and 2 are ground states, 3 and 4 excited states.  The three
control fields drive 1-3, 2-3 and 2-4; the probe drives 1-4.  All
frequencies are angular (rad/s).  In "gamma" units every frequency is a
multiple of the natural linewidth and the numbers are used as-is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import scipy.constants as _sc

ATOMIC_MASS_UNIT = _sc.physical_constants["atomic mass constant"][0]


@dataclass(frozen=True)
class PhysicalConstants:
    kB: float = _sc.k
    c: float = _sc.c
    eps0: float = _sc.epsilon_0
    hbar: float = _sc.hbar


CONSTANTS = PhysicalConstants()


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


@dataclass(frozen=True)
class SystemParams:
    """Driven four-level atom: Rabi magnitudes, dipole phases, detunings, decays.

    ``delta_jk`` is laser frequency minus transition frequency.  ``gammaC`` is
    the collisional dephasing rate; ``dephasing`` selects which coherences it
    acts on: ``"all"`` (every off-diagonal element) or ``"optical"`` (only the
    ground-excited coherences, leaving rho12 and rho34 untouched).
    """

    omega31: float = 0.0
    omega32: float = 0.0
    omega42: float = 0.0
    phi31: float = 0.0
    phi32: float = 0.0
    phi42: float = 0.0
    phi41: float = 0.0
    delta31: float = 0.0
    delta32: float = 0.0
    delta42: float = 0.0
    delta41: float = 0.0
    gamma31: float = 1.0
    gamma32: float = 1.0
    gamma41: float = 1.0
    gamma42: float = 1.0
    gammaC: float = 0.0
    dephasing: str = "all"

    def __post_init__(self):
        for name in ("omega31", "omega32", "omega42"):
            _require(getattr(self, name) >= 0, f"{name} must be >= 0")
        for name in ("gamma31", "gamma32", "gamma41", "gamma42"):
            _require(getattr(self, name) > 0, f"{name} must be > 0")
        _require(self.gammaC >= 0, "gammaC must be >= 0")
        _require(self.dephasing in ("all", "optical"), "dephasing must be 'all' or 'optical'")

    @property
    def multiphoton_detuning(self) -> float:
        return multiphoton_detuning(self)

    @property
    def loop_phase(self) -> float:
        return loop_phase(self)

    def with_(self, **changes) -> "SystemParams":
        return replace(self, **changes)


def multiphoton_detuning(p: SystemParams) -> float:
    """Detuning mismatch around the loop; zero means a true steady state exists."""
    return p.delta41 + p.delta32 - p.delta31 - p.delta42


def loop_phase(p: SystemParams) -> float:
    return p.phi41 + p.phi32 - p.phi31 - p.phi42


@dataclass(frozen=True)
class ProbeSpec:
    """Probe Rabi frequency, either absolute or relative to the weakest control.

    With ``relativeStrength`` set, the probe is that fraction of the weakest
    *nonzero* control Rabi frequency (see :meth:`resolve`).
    """

    omega41: Optional[float] = None
    relativeStrength: Optional[float] = 0.1

    def __post_init__(self):
        if self.omega41 is not None:
            _require(self.omega41 >= 0, "omega41 must be >= 0")
        else:
            _require(self.relativeStrength is not None,
                     "either omega41 or relativeStrength is required")
        if self.relativeStrength is not None:
            _require(self.relativeStrength >= 0, "relativeStrength must be >= 0")

    def resolve(self, p: SystemParams) -> float:
        """Probe Rabi frequency in rad/s for the controls in ``p``."""
        if self.omega41 is not None:
            return float(self.omega41)
        controls = [w for w in (p.omega31, p.omega32, p.omega42) if w > 0]
        if not controls:
            return 0.0
        return self.relativeStrength * min(controls)


@dataclass(frozen=True)
class MediumParams:
    """Vapor cell description.

    ``fieldDirections`` holds direction cosines of the (31, 32, 42, 41) beams
    relative to the probe axis; ``wavenumberScales`` multiplies the probe
    wavenumber for each field when computing Doppler shifts.
    """

    density: float
    wavelength: float
    temperature: float
    atomMass: float
    selfCollisionConst: float = 0.0
    bufferCollisionConst: float = 0.0
    bufferDensity: float = 0.0
    fieldDirections: tuple = (1.0, 1.0, 1.0, 1.0)
    wavenumberScales: tuple = (1.0, 1.0, 1.0, 1.0)

    def __post_init__(self):
        _require(self.density > 0, "density must be > 0")
        _require(self.wavelength > 0, "wavelength must be > 0")
        _require(self.temperature > 0, "temperature must be > 0")
        _require(self.atomMass > 0, "atomMass must be > 0")
        for name in ("selfCollisionConst", "bufferCollisionConst", "bufferDensity"):
            _require(getattr(self, name) >= 0, f"{name} must be >= 0")
        dirs = tuple(float(d) for d in self.fieldDirections)
        scales = tuple(float(s) for s in self.wavenumberScales)
        _require(len(dirs) == 4 and len(scales) == 4,
                 "fieldDirections and wavenumberScales need 4 entries (31, 32, 42, 41)")
        _require(all(-1.0 <= d <= 1.0 for d in dirs), "direction cosines must lie in [-1, 1]")
        _require(dirs[3] == 1.0, "probe direction cosine must be +1")
        object.__setattr__(self, "fieldDirections", dirs)
        object.__setattr__(self, "wavenumberScales", scales)

    @property
    def wavenumber(self) -> float:
        return 2 * math.pi / self.wavelength

    @property
    def chi_unit(self) -> float:
        """Plot normalization 3/(8 pi^2) lambda^3 N."""
        return 3.0 / (8.0 * math.pi ** 2) * self.wavelength ** 3 * self.density


def dipole_moment_from_decay(gamma41: float, lambda41: float,
                             const: PhysicalConstants = CONSTANTS) -> float:
    """Transition dipole (C m) from the spontaneous decay rate.

    Inverts gamma = omega^3 d^2 / (3 pi eps0 hbar c^3).
    """
    _require(gamma41 > 0 and lambda41 > 0, "gamma41 and lambda41 must be > 0")
    omega = 2 * math.pi * const.c / lambda41
    return math.sqrt(3 * math.pi * const.eps0 * const.hbar * const.c ** 3 * gamma41 / omega ** 3)


def field_amplitude(omega41: float, d41: float, const: PhysicalConstants = CONSTANTS) -> float:
    return const.hbar * omega41 / d41


def rabi_from_field(e41: float, d41: float, const: PhysicalConstants = CONSTANTS) -> float:
    return e41 * d41 / const.hbar


def intensity_from_field(e41: float, const: PhysicalConstants = CONSTANTS) -> float:
    return 0.5 * const.eps0 * const.c * e41 ** 2


def field_from_intensity(intensity: float, const: PhysicalConstants = CONSTANTS) -> float:
    return math.sqrt(2 * intensity / (const.eps0 * const.c))


def probe_intensity(omega41: float, d41: float, const: PhysicalConstants = CONSTANTS) -> float:
    """Cycle-averaged probe intensity (W/m^2) for Rabi frequency ``omega41``."""
    _require(omega41 >= 0 and d41 > 0, "omega41 must be >= 0 and d41 > 0")
    return intensity_from_field(field_amplitude(omega41, d41, const), const)
