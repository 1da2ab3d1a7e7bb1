"""Linear and third-order probe susceptibilities and detuning scans.

Only the ``m = 1`` harmonic oscillates at the probe frequency, so

    chi1        = (3 / 8 pi^2) lambda^3 N gamma41 [R_1^(1)]_13
    chi3Scaled  = (3 / 8 pi^2) lambda^3 N gamma41 Omega41^2 [R_3^(1)]_13

where ``chi3Scaled`` is (3/4) E41^2 chi3.  Without a medium the prefactor
(3 / 8 pi^2) lambda^3 N is dropped and ``unitsNote`` is :data:`NORMALIZED`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .atom import MediumParams, ProbeSpec, SystemParams
from .floquet import FloquetSolution, solve_hierarchy_batch
from .liouvillian import PROBE_COMPONENT, build_liouvillian

_CHUNK = 2048

# fixed interface token for curves in units of (3 / 8 pi^2) lambda^3 N
NORMALIZED = "paper-normalized"
ABSOLUTE = "absolute"


def _prefactor(m: Optional[MediumParams]) -> float:
    return 1.0 if m is None else m.chi_unit


def chi1(s: FloquetSolution, m: Optional[MediumParams], gamma41: float = 1.0) -> complex:
    """Linear susceptibility from ``[R_1^(1)]_13``.

    ``gamma41`` must be the rate used to build the solution.
    """
    if s.maxOrder < 1:
        raise ValueError("need maxOrder >= 1")
    return complex(_prefactor(m) * gamma41 * s.coefficient(1, 1)[PROBE_COMPONENT])


def chi3_scaled(s: FloquetSolution, m: Optional[MediumParams], omega41: float,
                gamma41: float = 1.0) -> complex:
    """``(3/4) E41^2 chi3`` from ``[R_3^(1)]_13``."""
    if s.maxOrder < 3:
        raise ValueError("need maxOrder >= 3")
    return complex(_prefactor(m) * gamma41 * omega41 ** 2 * s.coefficient(3, 1)[PROBE_COMPONENT])


@dataclass(frozen=True)
class ResponseCurve:
    """Susceptibilities on a probe-detuning grid; gaps are NaN."""

    grid: np.ndarray
    chi1: np.ndarray
    chi3Scaled: np.ndarray
    unitsNote: str = NORMALIZED

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        if grid.ndim != 1 or grid.size == 0:
            raise ValueError("grid must be a nonempty 1-d sequence")
        if np.any(np.diff(grid) <= 0):
            raise ValueError("grid must be strictly increasing")
        c1 = np.asarray(self.chi1, dtype=complex)
        c3 = np.asarray(self.chi3Scaled, dtype=complex)
        if c1.shape != grid.shape or c3.shape != grid.shape:
            raise ValueError("chi arrays must match the grid length")
        for name, arr in (("grid", grid), ("chi1", c1), ("chi3Scaled", c3)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def gaps(self) -> np.ndarray:
        """Mask of grid points where the hierarchy could not be solved."""
        return ~(np.isfinite(self.chi1) & np.isfinite(self.chi3Scaled))

    def __len__(self):
        return self.grid.size


def _check_grid(grid) -> np.ndarray:
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("grid must be nonempty")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be strictly increasing")
    return grid


def response_batch(params: Sequence[SystemParams], probe: ProbeSpec, grid: np.ndarray,
                   probeShift: Optional[np.ndarray] = None, maxOrder: int = 3):
    """Raw ``(chi1, chi3Scaled)`` per (parameter set, grid point), unnormalized.

    ``params[i]`` supplies everything except ``delta41``, which runs over
    ``grid + probeShift[i]``.  ``M0`` and ``Sigma0`` do not depend on
    ``delta41``, so each parameter set is built once.  Returns arrays of
    shape ``(len(params), len(grid))`` with NaN where a shift was singular.
    """
    grid = np.asarray(grid, dtype=float)
    nP, nG = len(params), grid.size
    shift = np.zeros(nP) if probeShift is None else np.asarray(probeShift, dtype=float)
    builds = [build_liouvillian(p) for p in params]
    M0 = np.repeat(np.stack([L.M0 for L in builds]), nG, axis=0)
    S0 = np.repeat(np.stack([L.Sigma0 for L in builds]), nG, axis=0)
    Delta = np.concatenate([
        p.with_(delta41=0.0).multiphoton_detuning + grid + sh for p, sh in zip(params, shift)])
    wanted = {(1, 1), (3, 1)} if maxOrder >= 3 else {(1, 1)}
    # probe couplings carry no parameter dependence, any build will do
    parts = [solve_hierarchy_batch(M0[i:i + _CHUNK], S0[i:i + _CHUNK], builds[0],
                                   Delta[i:i + _CHUNK], maxOrder=maxOrder, orders=wanted)
             for i in range(0, M0.shape[0], _CHUNK)]
    coeffs = {key: np.concatenate([c[key] for c, _ in parts]) for key in wanted}
    ok = np.concatenate([k for _, k in parts])
    g41 = np.repeat([p.gamma41 for p in params], nG)
    om41 = np.repeat([probe.resolve(p) for p in params], nG)
    c1 = g41 * coeffs[(1, 1)][:, PROBE_COMPONENT]
    if (3, 1) in coeffs:
        c3 = g41 * om41 ** 2 * coeffs[(3, 1)][:, PROBE_COMPONENT]
    else:
        c3 = np.full(c1.shape, np.nan + 0j)
    return c1.reshape(nP, nG), c3.reshape(nP, nG), ok.reshape(nP, nG)


def scan(p: SystemParams, probe: ProbeSpec, m: Optional[MediumParams], grid,
         maxOrder: int = 3) -> ResponseCurve:
    """Response over a grid of probe detunings ``delta41``.

    Without a medium the curve is in units of (3 / 8 pi^2) lambda^3 N.
    Points with a singular shifted generator are left as NaN gaps.
    """
    grid = _check_grid(grid)
    c1, c3, _ = response_batch([p], probe, grid, maxOrder=maxOrder)
    pref = _prefactor(m)
    return ResponseCurve(grid, pref * c1[0], pref * c3[0],
                         NORMALIZED if m is None else ABSOLUTE)


def local_maxima(values: np.ndarray) -> np.ndarray:
    """Indices of strict interior local maxima; points at or beside a NaN never qualify."""
    v = np.asarray(values, dtype=float)
    mid = v[1:-1]
    mask = (mid > v[:-2]) & (mid > v[2:])
    return np.nonzero(mask)[0] + 1
