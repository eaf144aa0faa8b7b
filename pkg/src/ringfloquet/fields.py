"""Fields of an ac-driven solenoid outside its windings.

The exterior vector potential is the outgoing cylindrical wave

    A_phi = (Phi0 / 2a) J1(ka) [J1(k rho) sin wt - Y1(k rho) cos wt],   k = w / c,

with the prefactor fixed so that it reduces to Phi0 cos(wt) / (2 pi rho) as
k -> 0. E = -dA/dt and B_z = (1/rho) d(rho A)/d rho follow in closed form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError, DomainError, RegimeError
from .model import DriveConfig
from .specfun import jn_array, y01

APPROX_PHASES = 256
MAX_K_RHO = 0.3


@dataclass(frozen=True)
class SolenoidField:
    a_phi: float  # T m
    e_phi: float  # V / m
    b_z: float  # T
    rho: float
    t: float


def _j01(x: float) -> tuple[float, float]:
    v = jn_array(x, 1).values
    return float(v[0]), float(v[1])


def field_exact(drive: DriveConfig, rho: float, t: float) -> SolenoidField:
    """Exact exterior A, E, B at radius ``rho`` and time ``t``.

    Raises:
        DomainError: rho inside the solenoid.
        DegenerateError: omega = 0 (a static flux has no wave solution; use
            :func:`field_lowfreq`).
    """
    a = drive.solenoid_radius
    if not rho > a:
        raise DomainError(f"rho={rho} is not outside the solenoid radius {a}")
    if drive.omega == 0:
        raise DegenerateError("omega = 0: use field_lowfreq for a static flux")
    k = drive.wavenumber
    w = drive.omega
    amp = drive.flux_amplitude / (2.0 * a) * _j01(k * a)[1]
    j0, j1 = _j01(k * rho)
    y0, y1 = y01(k * rho)
    s, c = math.sin(w * t), math.cos(w * t)
    return SolenoidField(
        a_phi=amp * (j1 * s - y1 * c),
        e_phi=-amp * w * (j1 * c + y1 * s),
        b_z=amp * k * (j0 * s - y0 * c),
        rho=rho,
        t=t,
    )


def field_lowfreq(drive: DriveConfig, rho: float, t: float) -> SolenoidField:
    """Quasi-static limit: A = Phi0 cos(wt) / (2 pi rho), no exterior B."""
    if not rho > drive.solenoid_radius:
        raise DomainError(f"rho={rho} is not outside the solenoid radius {drive.solenoid_radius}")
    w = drive.omega
    scale = drive.flux_amplitude / (2.0 * math.pi * rho)
    return SolenoidField(
        a_phi=scale * math.cos(w * t),
        e_phi=scale * w * math.sin(w * t),
        b_z=0.0,
        rho=rho,
        t=t,
    )


def approx_error(drive: DriveConfig, rho: float) -> float:
    """max_t |A_exact - A_lowfreq| / max_t |A_lowfreq| over one period (256 phases).

    Raises:
        RegimeError: k rho >= 0.3, where the comparison stops meaning much.
    """
    k_rho = drive.wavenumber * rho
    if k_rho >= MAX_K_RHO:
        raise RegimeError(f"k rho = {k_rho:.3g} is outside the quasi-static regime (< {MAX_K_RHO})")
    if drive.omega == 0 or drive.flux_amplitude == 0:
        return 0.0
    ts = np.arange(APPROX_PHASES) * (2.0 * math.pi / (APPROX_PHASES * drive.omega))
    exact = np.array([field_exact(drive, rho, t).a_phi for t in ts])
    low = np.array([field_lowfreq(drive, rho, t).a_phi for t in ts])
    return float(np.max(np.abs(exact - low)) / np.max(np.abs(low)))
