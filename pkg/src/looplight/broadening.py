"""Doppler and collisional broadening.

Thermal motion shifts each field's detuning by ``-k_j v cos(theta_j)``; the
response is averaged over a Maxwell distribution of the velocity component
along the probe axis using Gauss-Hermite quadrature.  Collisions add a
velocity-independent dephasing rate ``gammaC``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.polynomial.hermite import hermgauss

from .atom import CONSTANTS, MediumParams, ProbeSpec, SystemParams
from .response import ABSOLUTE, NORMALIZED, ResponseCurve, _check_grid, response_batch

DEFAULT_NODES = 64
# hard-sphere Na-Ar cross-section, order of magnitude only
HARD_SPHERE_CROSS_SECTION = 3e-19

# order of the per-field tuples in MediumParams
_FIELD_ORDER = ("delta31", "delta32", "delta42", "delta41")


def most_probable_speed(T: float, m: float) -> float:
    if T <= 0 or m <= 0:
        raise ValueError("T and m must be > 0")
    return math.sqrt(2 * CONSTANTS.kB * T / m)


def doppler_linewidth_fwhm(T: float, m: float, k: float) -> float:
    """Doppler FWHM in rad/s for wavenumber ``k``."""
    if T < 0 or m <= 0 or k <= 0:
        raise ValueError("need T >= 0, m > 0, k > 0")
    return k * math.sqrt(8 * math.log(2) * CONSTANTS.kB * T / m)


def temperature_for_linewidth(fwhm: float, m: float, k: float) -> float:
    """Inverse of :func:`doppler_linewidth_fwhm`."""
    return m * (fwhm / k) ** 2 / (8 * math.log(2) * CONSTANTS.kB)


def collision_rate(Ns: float, Nb: float, Cs: float, Cb: float) -> float:
    """Collisional coherence decay rate ``Cs Ns + Cb Nb`` (1/s)."""
    if min(Ns, Nb, Cs, Cb) < 0:
        raise ValueError("collision inputs must be >= 0")
    return Cs * Ns + Cb * Nb


def medium_collision_rate(m: MediumParams) -> float:
    return collision_rate(m.density, m.bufferDensity, m.selfCollisionConst, m.bufferCollisionConst)


@dataclass(frozen=True)
class MeanFreePath:
    lambdaMFP: Optional[float]
    dickeRegime: bool


def mean_free_path_diagnostic(m: MediumParams,
                              crossSection: float = HARD_SPHERE_CROSS_SECTION) -> MeanFreePath:
    """Buffer-gas mean free path ``1 / (sqrt(2) Nb sigma)``.

    ``lambdaMFP`` is None without buffer gas.  ``dickeRegime`` flags a mean
    free path below the probe wavelength.
    """
    if m.bufferDensity == 0:
        return MeanFreePath(None, False)
    lam = 1.0 / (math.sqrt(2) * m.bufferDensity * crossSection)
    return MeanFreePath(lam, lam < m.wavelength)


@dataclass(frozen=True)
class VelocityQuadrature:
    """Velocities along the probe axis and their probabilities."""

    nodes: np.ndarray
    weights: np.ndarray
    vm: float

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.shape != weights.shape or nodes.ndim != 1:
            raise ValueError("nodes and weights must be matching 1-d arrays")
        if abs(weights.sum() - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1")
        for name, arr in (("nodes", nodes), ("weights", weights)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def expectation(self, f) -> float:
        return float(np.dot(self.weights, f(self.nodes)))


def gauss_hermite_rule(vm: float, nNodes: int = DEFAULT_NODES) -> VelocityQuadrature:
    """Rule for the weight ``exp(-(v/vm)^2) / (sqrt(pi) vm)``.

    ``vm = 0`` collapses to a single node at rest.
    """
    if nNodes < 2 or nNodes % 2:
        raise ValueError("nNodes must be even and >= 2")
    if vm < 0:
        raise ValueError("vm must be >= 0")
    if vm == 0:
        return VelocityQuadrature(np.zeros(1), np.ones(1), 0.0)
    x, w = hermgauss(nNodes)
    # enforce exact mirror symmetry
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    return VelocityQuadrature(vm * x, w / w.sum(), float(vm))


def thermal_quadrature(m: MediumParams, nNodes: int = DEFAULT_NODES) -> VelocityQuadrature:
    return gauss_hermite_rule(most_probable_speed(m.temperature, m.atomMass), nNodes)


def doppler_shifts(m: MediumParams, v: float, frequencyScale: float = 1.0) -> dict:
    """Detuning shift per field for an atom with velocity ``v`` along the probe.

    ``frequencyScale`` converts rad/s to the detuning unit in use.
    """
    k = m.wavenumber
    return {name: -k * scale * v * cos / frequencyScale
            for name, cos, scale in zip(_FIELD_ORDER, m.fieldDirections, m.wavenumberScales)}


def with_collisions(p: SystemParams, m: MediumParams, frequencyScale: float = 1.0) -> SystemParams:
    """``p`` with ``gammaC`` set from the medium's collision rate."""
    return p.with_(gammaC=medium_collision_rate(m) / frequencyScale)


def doppler_average_scan(p: SystemParams, probe: ProbeSpec, m: MediumParams, grid,
                         q: VelocityQuadrature, maxOrder: int = 3,
                         frequencyScale: float = 1.0, normalized: bool = True,
                         probeOnly: bool = False, applyCollisions: bool = True) -> ResponseCurve:
    """Velocity-averaged response over a probe-detuning grid.

    Every field's detuning is shifted per node.  With ``applyCollisions``
    ``gammaC`` is replaced by the medium's collision rate before solving;
    otherwise ``p.gammaC`` is used as given.  ``frequencyScale`` is the size
    of one detuning unit in rad/s.  With ``probeOnly`` only the probe
    detuning is shifted, which is plain convolution of the unbroadened
    curve.  A NaN at any node leaves a gap.
    """
    grid = _check_grid(grid)
    if applyCollisions:
        p = with_collisions(p, m, frequencyScale)
    params, probeShift = [], []
    for v in q.nodes:
        sh = doppler_shifts(m, float(v), frequencyScale)
        probeShift.append(sh["delta41"])
        if probeOnly:
            params.append(p)
        else:
            params.append(p.with_(delta31=p.delta31 + sh["delta31"],
                                  delta32=p.delta32 + sh["delta32"],
                                  delta42=p.delta42 + sh["delta42"]))
    c1, c3, _ = response_batch(params, probe, grid, np.array(probeShift), maxOrder)
    # fixed node order keeps the sum bitwise reproducible
    avg1 = np.zeros(grid.size, dtype=complex)
    avg3 = np.zeros(grid.size, dtype=complex)
    for i, w in enumerate(q.weights):
        avg1 += w * c1[i]
        avg3 += w * c3[i]
    pref = 1.0 if normalized else m.chi_unit
    return ResponseCurve(grid, pref * avg1, pref * avg3,
                         NORMALIZED if normalized else ABSOLUTE)
