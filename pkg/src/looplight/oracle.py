"""Time-domain reference solutions of the loop master equation.

``integrate`` runs fixed-step RK4 on ``dR/dt = M(t) R - Sigma(t)`` with the
full probe time dependence, starting from all population in level 1.
``extract_harmonics`` projects the long-time tail onto
``exp(-i m (Delta t - phi))``.  ``harmonic_balance`` solves the truncated
Fourier system exactly, with no expansion in the probe strength.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .atom import ProbeSpec, SystemParams
from .liouvillian import DIM, build_liouvillian, vector_to_density

STEP_SAFETY = 0.05


class StepTooCoarse(ValueError):
    """The RK4 step does not resolve the fastest frequency in the problem."""


class InsufficientTail(ValueError):
    """The trajectory is too short for the requested harmonic projection."""


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    params: SystemParams
    omega41: float
    dt: float

    def densities(self) -> np.ndarray:
        """Full 4x4 density matrices at every stored time."""
        return np.stack([vector_to_density(R) for R in self.states])

    def to_csv(self, path) -> None:
        """Write time plus re/im pairs of the 15 components."""
        header = ["t"]
        for j in range(DIM):
            header += [f"re{j + 1}", f"im{j + 1}"]
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            for t, R in zip(self.times, self.states):
                row = [repr(float(t))]
                for z in R:
                    row += [repr(float(z.real)), repr(float(z.imag))]
                w.writerow(row)


def fastest_rate(p: SystemParams, omega41: float) -> float:
    """The scale the RK4 step must resolve."""
    Delta = abs(p.multiphoton_detuning)
    omegas = p.omega31 + p.omega32 + p.omega42 + omega41
    gammas = max(p.gamma31, p.gamma32, p.gamma41, p.gamma42) + p.gammaC
    detunings = max(abs(p.delta31), abs(p.delta32), abs(p.delta42), abs(p.delta41))
    return max(Delta + omegas, gammas, detunings)


def max_step(p: SystemParams, omega41: float) -> float:
    return STEP_SAFETY / fastest_rate(p, omega41)


def settle_time(p: SystemParams) -> float:
    """Twenty of the slowest radiative lifetimes."""
    return 20.0 / min(p.gamma31, p.gamma32, p.gamma41, p.gamma42)


def period_step(p: SystemParams, omega41: float) -> tuple[float, int]:
    """Largest admissible step dividing ``2 pi / |Delta|`` exactly, and steps per period.

    At ``Delta = 0`` returns ``(max_step, 0)``.
    """
    dtMax = max_step(p, omega41)
    Delta = p.multiphoton_detuning
    if Delta == 0:
        return dtMax, 0
    T = 2 * math.pi / abs(Delta)
    n = math.ceil(T / dtMax)
    return T / n, n


def integrate(p: SystemParams, probe: ProbeSpec, tFinal: float, dt: float,
              storeFrom: float = 0.0, stride: int = 1) -> Trajectory:
    """Fixed-step RK4 from ``rho11 = 1``.

    States are kept for ``t >= storeFrom`` at every ``stride``-th step.

    Raises
    ------
    StepTooCoarse
        If ``dt`` exceeds 0.05 over the fastest rate.
    """
    omega41 = probe.resolve(p)
    limit = max_step(p, omega41)
    if dt > limit * (1 + 1e-12):
        raise StepTooCoarse(f"dt={dt:.3g} exceeds {limit:.3g}")
    if tFinal <= 0 or dt <= 0:
        raise ValueError("tFinal and dt must be > 0")
    L = build_liouvillian(p)
    Delta, phi = p.multiphoton_detuning, p.loop_phase
    # rows: M0, Mminus, Mplus stacked for one matmul per stage
    big = np.vstack([L.M0, L.Mminus, L.Mplus])
    S0, Sm, Sp = L.Sigma0, L.SigmaMinus, L.SigmaPlus

    nSteps = int(round(tFinal / dt))
    half = 0.5 * dt

    def rhs(R, up, down):
        y = big @ R
        return (y[:DIM] + up * y[DIM:2 * DIM] + down * y[2 * DIM:]
                - S0 - up * Sm - down * Sp)

    R = np.zeros(DIM, dtype=complex)
    R[0] = 1.0
    times, states = [], []
    first = int(math.ceil(storeFrom / dt - 1e-9))
    if first <= 0:
        times.append(0.0)
        states.append(R.copy())
    for k in range(nSteps):
        t = k * dt
        u0 = omega41 * np.exp(1j * (Delta * t - phi))
        uh = omega41 * np.exp(1j * (Delta * (t + half) - phi))
        u1 = omega41 * np.exp(1j * (Delta * (t + dt) - phi))
        d0, dh, d1 = u0.conjugate(), uh.conjugate(), u1.conjugate()
        k1 = rhs(R, u0, d0)
        k2 = rhs(R + half * k1, uh, dh)
        k3 = rhs(R + half * k2, uh, dh)
        k4 = rhs(R + dt * k3, u1, d1)
        R = R + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        step = k + 1
        if step >= first and (step - first) % stride == 0:
            times.append(step * dt)
            states.append(R.copy())
    return Trajectory(np.array(times), np.array(states), p, omega41, dt)


def extract_harmonics(tr: Trajectory, Delta: float, mRange: int,
                      periods: int = 10, phi: Optional[float] = None) -> dict:
    """Fourier coefficients ``c_m`` of the tail, ``R(t) = sum_m c_m e^{-i m (Delta t - phi)}``.

    The window is the last ``periods`` whole periods, sampled without the
    duplicated endpoint so the rectangle rule is exact for the harmonics.
    For ``Delta = 0`` only ``m = 0`` exists and is a plain tail average
    over the last tenth of the trajectory.
    """
    phi = tr.params.loop_phase if phi is None else phi
    if len(tr.times) < 2:
        raise InsufficientTail("need at least two stored samples")
    step = float(tr.times[1] - tr.times[0])
    if Delta == 0:
        n = max(2, len(tr.times) // 10)
        return {0: tr.states[-n:].mean(axis=0)}
    if periods < 10:
        raise InsufficientTail("need at least 10 periods")
    T = 2 * math.pi / abs(Delta)
    perPeriod = int(round(T / step))
    if perPeriod < 2 or abs(perPeriod * step - T) > 1e-9 * T:
        raise InsufficientTail("stored sample spacing does not divide the period")
    n = perPeriod * periods
    if len(tr.times) < n + 1:
        raise InsufficientTail(f"tail has {len(tr.times) - 1} steps, need {n}")
    t = tr.times[-n - 1:-1]
    R = tr.states[-n - 1:-1]
    theta = Delta * t - phi
    return {m: (R * np.exp(1j * m * theta)[:, None]).mean(axis=0)
            for m in range(-mRange, mRange + 1)}


def steady_harmonics(p: SystemParams, probe: ProbeSpec, mRange: int = 3,
                     periods: int = 10, refine: int = 1) -> dict:
    """Integrate past the transient and return the tail harmonics.

    ``refine`` divides the admissible step further (2 halves it).
    """
    omega41 = probe.resolve(p)
    dt, perPeriod = period_step(p, omega41)
    dt /= refine
    Delta = p.multiphoton_detuning
    settle = settle_time(p)
    if perPeriod == 0:
        tr = integrate(p, probe, settle * 1.5, dt, storeFrom=settle)
        return extract_harmonics(tr, 0.0, mRange)
    T = 2 * math.pi / abs(Delta)
    nPer = math.ceil(settle / T) + periods
    tr = integrate(p, probe, nPer * T, dt, storeFrom=(nPer - periods - 1) * T)
    return extract_harmonics(tr, Delta, mRange, periods)


def harmonic_balance(p: SystemParams, omega41: float, mMax: int = 12) -> dict:
    """Exact periodic solution truncated at harmonics ``|m| <= mMax``.

    Solves ``(M0 + i m Delta) c_m + Omega41 (Mminus c_{m+1} + Mplus c_{m-1})
    = Sigma_m`` as one dense system; the result includes every order in
    the probe strength.  At ``Delta = 0`` the time-independent problem is
    solved directly and returned as ``{0: R}``.
    """
    L = build_liouvillian(p)
    Delta, phi = p.multiphoton_detuning, p.loop_phase
    if Delta == 0:
        M, S = L.at(omega41, 0.0, phi, 0.0)
        return {0: np.linalg.solve(M, S)}
    ms = list(range(-mMax, mMax + 1))
    size = len(ms) * DIM
    A = np.zeros((size, size), dtype=complex)
    b = np.zeros(size, dtype=complex)
    eye = np.eye(DIM)
    for i, m in enumerate(ms):
        blk = slice(i * DIM, (i + 1) * DIM)
        A[blk, blk] = L.M0 + 1j * m * Delta * eye
        if i + 1 < len(ms):
            A[blk, (i + 1) * DIM:(i + 2) * DIM] = omega41 * L.Mminus
        if i > 0:
            A[blk, (i - 1) * DIM:i * DIM] = omega41 * L.Mplus
    b[ms.index(0) * DIM:(ms.index(0) + 1) * DIM] = L.Sigma0
    b[ms.index(1) * DIM:(ms.index(1) + 1) * DIM] = omega41 * L.SigmaPlus
    b[ms.index(-1) * DIM:(ms.index(-1) + 1) * DIM] = omega41 * L.SigmaMinus
    x = np.linalg.solve(A, b)
    return {m: x[i * DIM:(i + 1) * DIM] for i, m in enumerate(ms)}
