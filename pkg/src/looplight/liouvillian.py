"""Matrix-vector form of the loop master equation.

The density matrix is flattened row-major, ``rho[a, b] -> 4*a + b``, and the
last element (rho44) is removed with the trace condition, leaving the
15-vector ``R = (rho11, rho12, ..., rho43)`` that obeys

    dR/dt + Sigma = M R.

``M`` and ``Sigma`` split into a time-independent part and the coefficients
of ``Omega41 exp(-+ i (Delta t - phi))``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .atom import SystemParams, loop_phase, multiphoton_detuning

DIM = 15
PROBE_COMPONENT = 12  # zero-based index of rho41

BASIS_ORDER = tuple(f"rho{a + 1}{b + 1}" for a in range(4) for b in range(4))[:DIM]
POPULATIONS = (0, 5, 10)  # rho11, rho22, rho33
OFF_DIAGONAL = tuple(4 * a + b for a in range(4) for b in range(4) if a != b)
# ground-excited coherences only: rho13, rho14, rho23, rho24 and conjugates
OPTICAL_COHERENCES = tuple(4 * a + b for a in range(4) for b in range(4) if (a < 2) != (b < 2))
DEPHASING_SETS = {"all": OFF_DIAGONAL, "optical": OPTICAL_COHERENCES}

# (upper, lower) level index pairs, zero-based
_DECAY_CHANNELS = (("gamma31", 2, 0), ("gamma32", 2, 1), ("gamma41", 3, 0), ("gamma42", 3, 1))


def _ket_bra(a: int, b: int) -> np.ndarray:
    op = np.zeros((4, 4), dtype=complex)
    op[a, b] = 1.0
    return op


def _commutator_super(h: np.ndarray) -> np.ndarray:
    """Superoperator of rho -> -i [h, rho] in row-major vectorization."""
    eye = np.eye(4)
    return -1j * (np.kron(h, eye) - np.kron(eye, h.T))


def _dissipator_super(c: np.ndarray) -> np.ndarray:
    eye = np.eye(4)
    cdc = c.conj().T @ c
    return np.kron(c, c.conj()) - 0.5 * (np.kron(cdc, eye) + np.kron(eye, cdc.T))


def control_hamiltonian(p: SystemParams) -> np.ndarray:
    """Interaction-picture Hamiltonian (units of hbar) without the probe."""
    h = np.diag([0.0,
                 p.delta32 - p.delta31,
                 -p.delta31,
                 p.delta32 - p.delta31 - p.delta42]).astype(complex)
    for omega, a, b in ((p.omega31, 2, 0), (p.omega32, 2, 1), (p.omega42, 3, 1)):
        h[a, b] -= omega / 2
        h[b, a] -= omega / 2
    return h


def full_generators(p: SystemParams) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """16x16 superoperators ``(L0, Lplus, Lminus)``.

    ``Lplus`` multiplies ``Omega41 exp(-i(Delta t - phi))`` and ``Lminus``
    multiplies ``Omega41 exp(+i(Delta t - phi))``.
    """
    L0 = _commutator_super(control_hamiltonian(p))
    for name, upper, lower in _DECAY_CHANNELS:
        L0 += getattr(p, name) * _dissipator_super(_ket_bra(lower, upper))
    if p.gammaC:
        idx = DEPHASING_SETS[p.dephasing]
        L0[idx, idx] -= p.gammaC
    Lplus = _commutator_super(-0.5 * _ket_bra(3, 0))
    Lminus = _commutator_super(-0.5 * _ket_bra(0, 3))
    return L0, Lplus, Lminus


def _eliminate_rho44(L: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Substitute rho44 = 1 - rho11 - rho22 - rho33; return ``(M, Sigma)``."""
    col44 = L[:DIM, DIM]
    M = L[:DIM, :DIM].copy()
    for k in POPULATIONS:
        M[:, k] -= col44
    return M, -col44.copy()


@dataclass(frozen=True)
class DecomposedLiouvillian:
    """Time-independent pieces of ``M(t)`` and ``Sigma(t)``.

    ``Mplus``/``SigmaPlus`` are the coefficients of ``Omega41 e^{-i(Delta t - phi)}``
    and ``Mminus``/``SigmaMinus`` those of ``Omega41 e^{+i(Delta t - phi)}``.
    """

    M0: np.ndarray
    Mplus: np.ndarray
    Mminus: np.ndarray
    Sigma0: np.ndarray
    SigmaPlus: np.ndarray
    SigmaMinus: np.ndarray
    basisOrder: tuple = BASIS_ORDER

    def __post_init__(self):
        for name in ("M0", "Mplus", "Mminus", "Sigma0", "SigmaPlus", "SigmaMinus"):
            arr = getattr(self, name)
            arr.setflags(write=False)

    def at(self, omega41: float, Delta: float, phi: float, t: float) -> tuple[np.ndarray, np.ndarray]:
        """Full ``(M(t), Sigma(t))`` for a probe of Rabi frequency ``omega41``."""
        up = omega41 * np.exp(1j * (Delta * t - phi))
        down = omega41 * np.exp(-1j * (Delta * t - phi))
        M = self.M0 + self.Mminus * up + self.Mplus * down
        S = self.Sigma0 + self.SigmaMinus * up + self.SigmaPlus * down
        return M, S


def build_liouvillian(p: SystemParams) -> DecomposedLiouvillian:
    L0, Lplus, Lminus = full_generators(p)
    M0, S0 = _eliminate_rho44(L0)
    Mp, Sp = _eliminate_rho44(Lplus)
    Mm, Sm = _eliminate_rho44(Lminus)
    return DecomposedLiouvillian(M0, Mp, Mm, S0, Sp, Sm)


def vector_to_density(R: np.ndarray) -> np.ndarray:
    """Rebuild the 4x4 density matrix from a 15-vector (or a stack of them)."""
    R = np.asarray(R)
    rho44 = 1.0 - R[..., 0] - R[..., 5] - R[..., 10]
    full = np.concatenate([R, rho44[..., None]], axis=-1)
    return full.reshape(R.shape[:-1] + (4, 4))


def density_to_vector(rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho)
    return rho.reshape(rho.shape[:-2] + (16,))[..., :DIM].copy()


# --------------------------------------------------------------------------
# Reference matrix table, transcribed element by element (1-based indices).
# Each chain lists (kind, j, k, factor, conjugated); kind "M" or "S".
# --------------------------------------------------------------------------

_CHAIN_DECAY = [("M", 1, 1, 1, False), ("M", 1, 6, 1, False), ("M", 6, 6, 1, False),
                ("M", 11, 11, 2, False), ("S", 1, None, 1, False), ("S", 6, None, 1, False)]
_CHAIN_31 = [("M", 1, 3, 1, True), ("M", 1, 9, 1, False), ("M", 2, 10, 1, False),
             ("M", 3, 4, 1, False), ("M", 4, 12, 1, False), ("M", 5, 7, 1, True),
             ("M", 9, 11, 1, False), ("M", 13, 15, 1, True)]
_CHAIN_32 = [("M", 2, 3, 1, True), ("M", 5, 9, 1, False), ("M", 6, 7, 1, True),
             ("M", 6, 10, 1, False), ("M", 7, 11, 1, False), ("M", 8, 12, 1, False),
             ("M", 10, 11, 1, True), ("M", 14, 15, 1, True)]
_CHAIN_41 = [("M", 1, 4, 1, True), ("M", 1, 13, 1, False), ("M", 2, 14, 1, False),
             ("M", 3, 15, 1, False), ("M", 4, 1, 2, True), ("M", 4, 6, 1, True),
             ("M", 4, 11, 1, True), ("M", 5, 8, 1, True), ("M", 9, 12, 1, True),
             ("M", 13, 1, 2, False), ("M", 13, 6, 1, False), ("M", 13, 11, 1, False),
             ("S", 4, None, 1, True), ("S", 13, None, 1, False)]
_CHAIN_42 = [("M", 2, 4, 1, True), ("M", 5, 13, 1, False), ("M", 6, 8, 1, True),
             ("M", 6, 14, 1, False), ("M", 7, 15, 1, False), ("M", 8, 1, 1, True),
             ("M", 8, 6, 2, True), ("M", 8, 11, 1, True), ("M", 10, 12, 1, True),
             ("M", 14, 1, 1, False), ("M", 14, 6, 2, False), ("M", 14, 11, 1, False),
             ("S", 8, None, 1, True), ("S", 14, None, 1, False)]
_ZERO_EXCEPTIONS = [(6, 4), (11, 4), (6, 13), (11, 13), (1, 8), (11, 8), (1, 14), (11, 14)]

# Entries where the printed table disagrees with the master equation.
APPENDIX_FLAGGED = {
    (7, 8): "printed 'M_{7,8} = M_{10,10}' line; no rho24 term exists in the rho23 equation",
    (8, 7): "symmetric partner of the printed M_{7,8}",
    (10, 10): "assigned twice (M_{7,7}^* and the M_{7,8} line) with conflicting values",
    (8, 8): "missing from the table (evidently the intended target of the M_{7,8} line)",
    (14, 14): "missing from the table (conjugate partner of M_{8,8})",
    (3, 4): "Omega31 entry printed at (3,4); the rho13 equation couples to rho33, not rho14",
    (4, 3): "symmetric partner of the printed M_{3,4}",
    (3, 11): "Omega31 coupling rho13 <- rho33 absent from the table",
    (11, 3): "Omega31 coupling rho33 <- rho13 absent from the table",
    (9, 11): "Omega31 entry listed without conjugation (compare M_{10,11}^* in the Omega32 chain)",
    (11, 9): "symmetric partner of M_{9,11}",
    (1, 4): "probe phase factor printed as exp(+i(..)); the rho11 equation carries exp(-i(..)) here",
    (1, 13): "probe phase factor printed as exp(-i(..)); the rho11 equation carries exp(+i(..)) here",
    (2, 14): "probe phase factor printed as exp(-i(..)); the rho12 equation carries exp(+i(..)) here",
    (3, 15): "probe phase factor printed as exp(-i(..)); the rho13 equation carries exp(+i(..)) here",
    (5, 8): "probe phase factor printed as exp(+i(..)); the rho21 equation carries exp(-i(..)) here",
    (9, 12): "probe phase factor printed as exp(+i(..)); the rho31 equation carries exp(-i(..)) here",
}


def appendix_reference(gammaR: float, p: SystemParams, omega41: float,
                       t: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    """``(M(t), Sigma(t))`` assembled from the transcribed reference table.

    Applies the table's rules literally: unlisted entries vanish, a listed
    ``M_{j,k}`` also sets ``M_{k,j}`` unless that entry is listed itself,
    and the zero exceptions override.  Only meaningful for equal decay rates
    ``gammaR`` and no collisional dephasing.  Returned with 0-based indices.
    """
    Delta = multiphoton_detuning(p)
    phi = loop_phase(p)
    half_i = 0.5j
    chains = [
        (_CHAIN_DECAY, -gammaR),
        (_CHAIN_31, half_i * p.omega31),
        (_CHAIN_32, half_i * p.omega32),
        (_CHAIN_41, half_i * omega41 * np.exp(-1j * (Delta * t - phi))),
        (_CHAIN_42, half_i * p.omega42),
    ]
    diagonal = [
        (3, 3, -gammaR - 1j * p.delta31, False), (9, 9, -gammaR - 1j * p.delta31, True),
        (4, 4, -gammaR - 1j * (p.delta31 + p.delta42 - p.delta32), False),
        (13, 13, -gammaR - 1j * (p.delta31 + p.delta42 - p.delta32), True),
        (7, 7, -gammaR - 1j * p.delta32, False), (10, 10, -gammaR - 1j * p.delta32, True),
        (7, 8, -gammaR - 1j * p.delta32, False), (10, 10, -gammaR - 1j * p.delta32, False),
        (12, 12, -2 * gammaR - 1j * (p.delta42 - p.delta32), False),
        (15, 15, -2 * gammaR - 1j * (p.delta42 - p.delta32), True),
        (2, 2, -1j * (p.delta31 - p.delta32), False), (5, 5, -1j * (p.delta31 - p.delta32), True),
    ]

    listed = {}
    sigma = np.zeros(DIM, dtype=complex)
    for chain, value in chains:
        for kind, j, k, factor, conj in chain:
            v = factor * (np.conj(value) if conj else value)
            if kind == "S":
                sigma[j - 1] = v
            else:
                listed[(j, k)] = v
    for j, k, value, conj in diagonal:
        listed[(j, k)] = np.conj(value) if conj else value

    M = np.zeros((DIM, DIM), dtype=complex)
    for (j, k), v in listed.items():
        M[j - 1, k - 1] = v
        if (k, j) not in listed:
            M[k - 1, j - 1] = v
    for j, k in _ZERO_EXCEPTIONS:
        M[j - 1, k - 1] = 0.0
    return M, sigma
