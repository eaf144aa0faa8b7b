"""Floquet sideband spectrum of a charged particle on a ring threaded by an ac flux."""
from __future__ import annotations

__version__ = "0.1.0"

from ._backend import BACKEND
from .errors import (
    DegenerateError,
    DomainError,
    InconsistencyError,
    IntegrationError,
    RegimeError,
    ResourceError,
    RingFloquetError,
    TruncationError,
    VerificationError,
)
from .fields import SolenoidField, approx_error, field_exact, field_lowfreq
from .lab import FeasibilityGrid, build_grid, feasibility_bounds, feasibility_scan, loop_current, persistent_current
from .model import (
    DriveConfig,
    ModeParams,
    RingConfig,
    dimensionless,
    energy_shifted,
    energy_static,
    flux_quantum,
    flux_ratio,
    validity,
)
from .oracle import OracleReport, PhaseTrace, coefficients_dft, phase_analytic, phase_ode, static_limit_check
from .specfun import BesselArray, jn, jn_array, y01
from .spectrum import (
    PeakInfo,
    QuasiEnergySpectrum,
    WeightTable,
    coefficients_full,
    coefficients_n0,
    coefficients_series,
    find_peak,
    level_diagram,
    sidebands,
)

__all__ = [
    "BACKEND",
    "BesselArray",
    "DegenerateError",
    "DomainError",
    "DriveConfig",
    "FeasibilityGrid",
    "InconsistencyError",
    "IntegrationError",
    "ModeParams",
    "OracleReport",
    "PeakInfo",
    "PhaseTrace",
    "QuasiEnergySpectrum",
    "RegimeError",
    "ResourceError",
    "RingConfig",
    "RingFloquetError",
    "SolenoidField",
    "TruncationError",
    "VerificationError",
    "WeightTable",
    "approx_error",
    "build_grid",
    "coefficients_dft",
    "coefficients_full",
    "coefficients_n0",
    "coefficients_series",
    "dimensionless",
    "energy_shifted",
    "energy_static",
    "feasibility_bounds",
    "feasibility_scan",
    "field_exact",
    "field_lowfreq",
    "find_peak",
    "flux_quantum",
    "flux_ratio",
    "jn",
    "jn_array",
    "level_diagram",
    "loop_current",
    "persistent_current",
    "phase_analytic",
    "phase_ode",
    "sidebands",
    "static_limit_check",
    "validity",
    "y01",
]
