"""Physical parameters of the ring and the solenoid drive.

Everything that carries SI units lives here. Downstream modules work with
:class:`ModeParams`, whose alpha, beta and flux ratio are unit-free.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import ELECTRON_MASS, ELEMENTARY_CHARGE, HBAR, MU_0, SPEED_OF_LIGHT
from .errors import DegenerateError, DomainError, InconsistencyError

VALID_KR = 1e-3
MARGINAL_KR = 1e-1
FLUX_CONSISTENCY_RTOL = 1e-12


def flux_quantum(charge: float = ELEMENTARY_CHARGE) -> float:
    """Magnetic flux quantum 2 pi hbar / charge, in weber."""
    return 2.0 * math.pi * HBAR / charge


def flux_ratio(flux: float, charge: float = ELEMENTARY_CHARGE) -> float:
    return flux / flux_quantum(charge)


def solenoid_flux(turns_density: float, current_amplitude: float, solenoid_radius: float) -> float:
    """Flux mu_0 n I pi a^2 of an ideal long solenoid."""
    return MU_0 * turns_density * current_amplitude * math.pi * solenoid_radius**2


@dataclass(frozen=True)
class RingConfig:
    mass: float = ELECTRON_MASS
    charge: float = ELEMENTARY_CHARGE
    radius: float = 1e-6
    n: int = 0

    def __post_init__(self):
        if not self.mass > 0:
            raise DomainError(f"mass must be > 0, got {self.mass}")
        if not self.radius > 0:
            raise DomainError(f"radius must be > 0, got {self.radius}")
        if self.charge == 0:
            raise DomainError("charge must be nonzero")
        if int(self.n) != self.n:
            raise DomainError(f"n must be an integer, got {self.n}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def energy_scale(self) -> float:
        """hbar^2 / (2 m R^2) in joule."""
        return HBAR**2 / (2.0 * self.mass * self.radius**2)


@dataclass(frozen=True)
class DriveConfig:
    """Sinusoidal solenoid drive, flux(t) = flux_amplitude * cos(omega t).

    ``turns_density`` and ``current_amplitude`` are optional; when both are
    set, ``flux_amplitude`` has to match the solenoid flux they imply.
    """

    flux_amplitude: float
    omega: float
    solenoid_radius: float = 1e-7
    turns_density: float = 0.0
    current_amplitude: float = 0.0

    def __post_init__(self):
        if not self.omega >= 0:
            raise DomainError(f"omega must be >= 0, got {self.omega}")
        if not self.solenoid_radius > 0:
            raise DomainError(f"solenoid_radius must be > 0, got {self.solenoid_radius}")
        if self.turns_density < 0 or self.current_amplitude < 0:
            raise DomainError("turns_density and current_amplitude must be >= 0")
        if self.has_windings:
            expected = self.winding_flux
            if abs(self.flux_amplitude - expected) > FLUX_CONSISTENCY_RTOL * abs(expected):
                raise InconsistencyError(
                    f"flux_amplitude={self.flux_amplitude!r} disagrees with the winding flux "
                    f"mu0*n*I*pi*a^2={expected!r}"
                )

    @classmethod
    def from_solenoid(cls, turns_density, current_amplitude, solenoid_radius, omega):
        flux = solenoid_flux(turns_density, current_amplitude, solenoid_radius)
        return cls(flux, omega, solenoid_radius, turns_density, current_amplitude)

    @property
    def has_windings(self) -> bool:
        return self.turns_density * self.current_amplitude > 0

    @property
    def winding_flux(self) -> float:
        return solenoid_flux(self.turns_density, self.current_amplitude, self.solenoid_radius)

    @property
    def wavenumber(self) -> float:
        return self.omega / SPEED_OF_LIGHT


@dataclass(frozen=True)
class ModeParams:
    """Dimensionless drive strengths for one angular-momentum mode.

    The accumulated phase is E'_n t / hbar + alpha sin(wt) + beta sin(2wt);
    ``energy_scale`` is hbar^2/(2 m R^2) and ``hbar_omega`` the drive quantum.
    """

    alpha: float
    beta: float
    flux_ratio: float
    n: int
    hbar_omega: float
    energy_scale: float

    @property
    def omega(self) -> float:
        return self.hbar_omega / HBAR

    @property
    def kappa(self) -> float:
        """energy_scale / hbar_omega."""
        return self.energy_scale / self.hbar_omega

    @classmethod
    def from_dimensionless(
        cls,
        n: int,
        *,
        alpha: float | None = None,
        beta: float | None = None,
        flux_ratio: float | None = None,
        omega: float = 1.0,
    ) -> "ModeParams":
        """Build a mode from any two of (alpha, beta, flux_ratio).

        With alpha = 2 kappa n f and beta = kappa f^2 / 4 (kappa = energy
        scale over hbar omega), two of the three fix the third and kappa. For
        n = 0 alpha carries no information, so beta alone is accepted and the
        flux ratio defaults to 1. Energies come out in joule for a drive at
        ``omega`` rad/s (1 by default, so energies / hbar read as rad/s).
        """
        n = int(n)
        if omega <= 0:
            raise DomainError("omega must be > 0")
        if n == 0:
            if alpha not in (None, 0, 0.0):
                raise InconsistencyError("alpha must be 0 for n = 0")
            if beta is None:
                raise DomainError("n = 0 needs beta")
            if beta < 0:
                raise DomainError("beta must be >= 0")
            f = 1.0 if flux_ratio is None else float(flux_ratio)
            if beta == 0:
                kappa = 1.0
                f = 0.0 if flux_ratio is None else f
                if f != 0:
                    raise InconsistencyError("beta = 0 with nonzero flux ratio")
            else:
                if f == 0:
                    raise InconsistencyError("beta > 0 needs a nonzero flux ratio")
                kappa = 4.0 * beta / f**2
            alpha = 0.0
        else:
            given = sum(v is not None for v in (alpha, beta, flux_ratio))
            if given < 2:
                raise DomainError("n != 0 needs two of alpha, beta, flux_ratio")
            if alpha is not None and flux_ratio is not None:
                f = float(flux_ratio)
                if alpha == 0 or f == 0:
                    if alpha != 0 or f != 0:
                        raise InconsistencyError("alpha and flux_ratio must vanish together")
                    kappa = 1.0
                else:
                    kappa = alpha / (2.0 * n * f)
                implied = kappa * f * f / 4.0
                if beta is not None and not math.isclose(beta, implied, rel_tol=1e-12, abs_tol=1e-300):
                    raise InconsistencyError(f"beta={beta} but alpha, flux_ratio imply {implied}")
                beta = implied
            elif alpha is not None:
                if alpha == 0:
                    if beta != 0:
                        raise InconsistencyError("alpha = 0 with beta != 0 needs n = 0")
                    f, kappa = 0.0, 1.0
                else:
                    f = 8.0 * n * beta / alpha
                    kappa = alpha / (2.0 * n * f) if f != 0 else math.inf
                    if not math.isfinite(kappa):
                        raise DegenerateError("beta = 0 with alpha != 0 has no finite energy scale")
            else:
                f = float(flux_ratio)
                if f == 0:
                    raise DegenerateError("flux_ratio = 0 leaves beta unconstrained")
                kappa = 4.0 * beta / f**2
                alpha = 2.0 * kappa * n * f
            if kappa <= 0:
                raise InconsistencyError("alpha, beta and flux_ratio imply a negative energy scale")
        hbar_omega = HBAR * omega
        return cls(float(alpha), float(beta), float(f), n, hbar_omega, kappa * hbar_omega)


def energy_static(n: int, flux_ratio: float, energy_scale: float) -> float:
    """E_n = energy_scale * (n + flux_ratio)^2 for a constant flux."""
    return energy_scale * (n + flux_ratio) ** 2


def energy_shifted(n: int, flux_ratio: float, energy_scale: float) -> float:
    """Time-averaged level E'_n = energy_scale * (n^2 + flux_ratio^2 / 2) under an ac flux."""
    return energy_scale * (n * n + 0.5 * flux_ratio * flux_ratio)


def dimensionless(ring: RingConfig, drive: DriveConfig) -> ModeParams:
    """Reduce a physical ring + drive to :class:`ModeParams`.

    Raises:
        DegenerateError: for a static drive (omega = 0); use :func:`energy_static`.
    """
    if drive.omega == 0:
        raise DegenerateError("omega = 0 is the static limit; use energy_static instead")
    f = flux_ratio(drive.flux_amplitude, ring.charge)
    prefactor = HBAR / (ring.mass * ring.radius**2 * drive.omega)
    alpha = ring.n * prefactor * f
    beta = prefactor * f * f / 8.0
    return ModeParams(
        alpha=alpha,
        beta=beta,
        flux_ratio=f,
        n=ring.n,
        hbar_omega=HBAR * drive.omega,
        energy_scale=ring.energy_scale,
    )


@dataclass(frozen=True)
class ValidityReport:
    kR: float
    ka: float
    status: str  # "valid", "marginal" or "invalid"
    flux_consistent: bool | None
    flux_mismatch: float | None
    solenoid_inside_ring: bool

    @property
    def valid(self) -> bool:
        return self.status == "valid"


def validity(ring: RingConfig, drive: DriveConfig) -> ValidityReport:
    """Check the low-frequency regime ka < kR << 1 and the winding flux."""
    k = drive.wavenumber
    kR = k * ring.radius
    if kR <= VALID_KR:
        status = "valid"
    elif kR <= MARGINAL_KR:
        status = "marginal"
    else:
        status = "invalid"
    consistent = mismatch = None
    if drive.has_windings:
        expected = drive.winding_flux
        mismatch = abs(drive.flux_amplitude - expected) / abs(expected)
        consistent = mismatch <= FLUX_CONSISTENCY_RTOL
    return ValidityReport(
        kR=kR,
        ka=k * drive.solenoid_radius,
        status=status,
        flux_consistent=consistent,
        flux_mismatch=mismatch,
        solenoid_inside_ring=drive.solenoid_radius < ring.radius,
    )
