"""Perturbative Fourier hierarchy for the loop master equation.

The long-time solution is expanded as

    R(t) = sum_n sum_m R_n^(m) Omega41^n exp(-i m (Delta t - phi)),

with ``|m| <= n`` and ``m = n (mod 2)``.  Each coefficient solves a
time-independent linear system

    (M0 + i m Delta) R_n^(m) = delta_{n1} Sigma_m
                               - Mminus R_{n-1}^(m+1) - Mplus R_{n-1}^(m-1),

and ``M0 R_0^(0) = Sigma0``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
from scipy.linalg.lapack import zgecon

from .liouvillian import DIM, PROBE_COMPONENT, DecomposedLiouvillian

COND_LIMIT = 1e12


class SingularGenerator(ArithmeticError):
    """A shifted generator ``M0 + i m Delta`` is numerically singular."""

    def __init__(self, shift: int, cond: float):
        self.shift = shift
        self.cond = cond
        super().__init__(f"M0 + i*{shift}*Delta is singular (condition estimate {cond:.3g})")


def harmonics(n: int) -> range:
    """Harmonic indices carried by order ``n``."""
    return range(-n, n + 1, 2)


@dataclass(frozen=True)
class FloquetSolution:
    coefficients: dict
    maxOrder: int
    Delta: float
    phi: float = 0.0

    def coefficient(self, n: int, m: int) -> np.ndarray:
        """``R_n^(m)``; identically zero outside the allowed index set."""
        vec = self.coefficients.get((n, m))
        if vec is None:
            return np.zeros(DIM, dtype=complex)
        return vec

    def harmonic_sum(self, omega41: float, m: int, max_order: int | None = None) -> np.ndarray:
        """``sum_n R_n^(m) Omega41^n`` over the computed orders."""
        top = self.maxOrder if max_order is None else min(max_order, self.maxOrder)
        out = np.zeros(DIM, dtype=complex)
        for n in range(abs(m), top + 1, 2):
            out += self.coefficients[(n, m)] * omega41 ** n
        return out

    def reconstruct(self, omega41: float, t: float = 0.0, phi: float | None = None,
                    max_order: int | None = None) -> np.ndarray:
        """Interaction-picture 15-vector ``R(t)``."""
        phi = self.phi if phi is None else phi
        top = self.maxOrder if max_order is None else min(max_order, self.maxOrder)
        out = np.zeros(DIM, dtype=complex)
        for (n, m), vec in self.coefficients.items():
            if n <= top:
                out += vec * omega41 ** n * np.exp(-1j * m * (self.Delta * t - phi))
        return out


def _shift_factor(M0: np.ndarray, m: int, Delta: float):
    A = M0 + 1j * m * Delta * np.eye(DIM)
    with warnings.catch_warnings():
        # singularity is reported through the condition estimate below
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(A, check_finite=True)
    anorm = np.linalg.norm(A, 1)
    rcond, info = zgecon(lu, anorm, norm="1")
    cond = np.inf if rcond == 0 or info != 0 else 1.0 / rcond
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise SingularGenerator(m, cond)
    return lu, piv


def solve_hierarchy(L: DecomposedLiouvillian, Delta: float, maxOrder: int = 3,
                    phi: float = 0.0) -> FloquetSolution:
    """Coefficients ``R_n^(m)`` for ``n <= maxOrder``.

    Raises
    ------
    SingularGenerator
        If any required shifted matrix has a 1-norm condition estimate above 1e12.
    """
    if maxOrder < 1:
        raise ValueError("maxOrder must be >= 1")
    factors: dict = {}

    def solve(m, rhs):
        # at Delta = 0 every shift is the same matrix
        key = m if Delta != 0 else 0
        if key not in factors:
            factors[key] = _shift_factor(L.M0, m, Delta)
        return sla.lu_solve(factors[key], rhs)

    sigma = {0: L.Sigma0, 1: L.SigmaPlus, -1: L.SigmaMinus}
    coeffs = {(0, 0): solve(0, L.Sigma0.astype(complex))}
    zero = np.zeros(DIM, dtype=complex)
    for n in range(1, maxOrder + 1):
        for m in harmonics(n):
            rhs = -(L.Mminus @ coeffs.get((n - 1, m + 1), zero)
                    + L.Mplus @ coeffs.get((n - 1, m - 1), zero))
            if n == 1:
                rhs = rhs + sigma[m]
            coeffs[(n, m)] = solve(m, rhs)
    return FloquetSolution(coeffs, maxOrder, float(Delta), float(phi))


def solve_hierarchy_batch(M0: np.ndarray, Sigma0: np.ndarray, L: DecomposedLiouvillian,
                          Delta: np.ndarray, maxOrder: int = 3, orders=None):
    """Vectorized hierarchy over a stack of generators.

    ``M0`` has shape ``(B, 15, 15)`` and ``Sigma0`` shape ``(B, 15)``; the
    probe couplings are taken from ``L`` (they depend on nothing else).  Returns ``(coeffs, ok)``
    where ``coeffs[(n, m)]`` has shape ``(B, 15)`` and ``ok`` flags points
    whose shifted generators were all well conditioned.  Failed points hold NaN.
    ``orders`` limits which ``(n, m)`` pairs are retained (all by default).
    """
    M0 = np.asarray(M0, dtype=complex)
    Delta = np.broadcast_to(np.asarray(Delta, dtype=float), M0.shape[:1])
    B = M0.shape[0]
    eye = np.eye(DIM)
    ok = np.ones(B, dtype=bool)
    inverses = {}

    def inverse(m):
        if m not in inverses:
            A = M0 + 1j * m * Delta[:, None, None] * eye
            with np.errstate(all="ignore"):
                try:
                    inv = np.linalg.inv(A)
                except np.linalg.LinAlgError:
                    inv = np.stack([_safe_inv(a) for a in A])
                cond = np.linalg.norm(A, 1, axis=(1, 2)) * np.linalg.norm(inv, 1, axis=(1, 2))
            bad = ~np.isfinite(cond) | (cond > COND_LIMIT)
            ok[bad] = False
            inv[bad] = np.nan
            inverses[m] = inv
        return inverses[m]

    def apply(m, rhs):
        return np.einsum("bij,bj->bi", inverse(m), rhs)

    sigma = {1: L.SigmaPlus, -1: L.SigmaMinus}
    coeffs = {(0, 0): apply(0, np.broadcast_to(Sigma0, (B, DIM)).astype(complex))}
    zero = np.zeros((B, DIM), dtype=complex)
    for n in range(1, maxOrder + 1):
        for m in harmonics(n):
            rhs = -(coeffs.get((n - 1, m + 1), zero) @ L.Mminus.T
                    + coeffs.get((n - 1, m - 1), zero) @ L.Mplus.T)
            if n == 1:
                rhs = rhs + sigma[m]
            coeffs[(n, m)] = apply(m, rhs)
    if orders is not None:
        coeffs = {key: val for key, val in coeffs.items() if key in orders}
    return coeffs, ok


def _safe_inv(a):
    try:
        return np.linalg.inv(a)
    except np.linalg.LinAlgError:
        return np.full_like(a, np.nan)


def reconstruct_coherence_41(s: FloquetSolution, omega41: float, phi41: float, t: float,
                             probeFrequencyTerm: float = 0.0) -> complex:
    """Schrodinger-picture ``rho41(t)`` from the hierarchy coefficients.

    ``probeFrequencyTerm`` is the probe laser frequency; each ``(n, m)`` term
    oscillates at ``probeFrequencyTerm + (m - 1) Delta``.
    """
    total = 0j
    for (n, m), vec in s.coefficients.items():
        freq = probeFrequencyTerm + (m - 1) * s.Delta
        phase = phi41 + (m - 1) * s.phi
        total += vec[PROBE_COMPONENT] * omega41 ** n * np.exp(-1j * freq * t) * np.exp(1j * phase)
    return complex(total)
