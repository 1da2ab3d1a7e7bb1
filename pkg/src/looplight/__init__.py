"""Linear and third-order probe response of a closed-loop double-Lambda atom."""

__version__ = "0.1.0"

from .atom import (CONSTANTS, MediumParams, PhysicalConstants, ProbeSpec, SystemParams,
                   dipole_moment_from_decay, loop_phase, multiphoton_detuning, probe_intensity)
from .broadening import (VelocityQuadrature, collision_rate, doppler_average_scan,
                         doppler_linewidth_fwhm, gauss_hermite_rule, mean_free_path_diagnostic,
                         most_probable_speed)
from .floquet import FloquetSolution, SingularGenerator, reconstruct_coherence_41, solve_hierarchy
from .liouvillian import DecomposedLiouvillian, appendix_reference, build_liouvillian
from .oracle import InsufficientTail, StepTooCoarse, Trajectory, extract_harmonics, integrate
from .propagation import DegenerateResponse, PropagationReport, phase_after_length, selfphase_report
from .response import ResponseCurve, chi1, chi3_scaled, scan

__all__ = [
    "CONSTANTS", "MediumParams", "PhysicalConstants", "ProbeSpec", "SystemParams",
    "dipole_moment_from_decay", "loop_phase", "multiphoton_detuning", "probe_intensity",
    "VelocityQuadrature", "collision_rate", "doppler_average_scan", "doppler_linewidth_fwhm",
    "gauss_hermite_rule", "mean_free_path_diagnostic", "most_probable_speed",
    "FloquetSolution", "SingularGenerator", "reconstruct_coherence_41", "solve_hierarchy",
    "DecomposedLiouvillian", "appendix_reference", "build_liouvillian",
    "InsufficientTail", "StepTooCoarse", "Trajectory", "extract_harmonics", "integrate",
    "DegenerateResponse", "PropagationReport", "phase_after_length", "selfphase_report",
    "ResponseCurve", "chi1", "chi3_scaled", "scan",
]
