"""Measurable quantities: the loop current and the (R, omega) feasibility scan."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .constants import ELECTRON_MASS, ELEMENTARY_CHARGE, HBAR
from .errors import DomainError
from .model import VALID_KR, DriveConfig, RingConfig, dimensionless, flux_quantum

PAPER_RADIUS_RANGE = (1e-7, 1e-3)
PAPER_OMEGA_RANGE = (10.0, 1000.0)
GRID_SAMPLES = 25


def persistent_current(ring: RingConfig) -> float:
    """Time-independent part q n hbar / (2 pi m R^2), in ampere."""
    return ring.charge * ring.n * HBAR / (2.0 * math.pi * ring.mass * ring.radius**2)


def loop_current(ring: RingConfig, drive: DriveConfig, t):
    """Loop current q n hbar/(2 pi m R^2) - q^2 Phi0 cos(wt)/(4 pi^2 m R^2).

    This is the charge times the probability current of the normalized ring
    mode, so the result is in ampere. ``t`` may be a scalar or an array.
    """
    q, m, r2 = ring.charge, ring.mass, ring.radius**2
    drive_term = q * q * drive.flux_amplitude / (4.0 * math.pi**2 * m * r2)
    out = persistent_current(ring) - drive_term * np.cos(drive.omega * np.asarray(t, dtype=float))
    return float(out) if np.ndim(out) == 0 else out


def _check_range(name: str, rng: tuple[float, float]) -> tuple[float, float]:
    lo, hi = float(rng[0]), float(rng[1])
    if not (0 < lo <= hi) or not math.isfinite(hi):
        raise DomainError(f"{name} must be positive and ordered, got {rng}")
    return lo, hi


def _mode(flux_ratio, n, radius, omega, mass, charge):
    ring = RingConfig(mass=mass, charge=charge, radius=radius, n=n)
    drive = DriveConfig(flux_amplitude=flux_ratio * flux_quantum(charge), omega=omega, solenoid_radius=radius / 2)
    return ring, drive, dimensionless(ring, drive)


def feasibility_bounds(
    flux_ratio: float,
    n: int,
    radius_range: tuple[float, float] = PAPER_RADIUS_RANGE,
    omega_range: tuple[float, float] = PAPER_OMEGA_RANGE,
    mass: float = ELECTRON_MASS,
    charge: float = ELEMENTARY_CHARGE,
) -> tuple[float, float, float, float]:
    """(alpha_min, alpha_max, beta_min, beta_max) over the (R, omega) box.

    alpha and beta both go as 1/(omega R^2), so the box corners carry the extremes.
    """
    radii = _check_range("radius_range", radius_range)
    omegas = _check_range("omega_range", omega_range)
    alphas, betas = [], []
    for r, w in itertools.product(radii, omegas):
        p = _mode(flux_ratio, n, r, w, mass, charge)[2]
        alphas.append(p.alpha)
        betas.append(p.beta)
    return min(alphas), max(alphas), min(betas), max(betas)


@dataclass(frozen=True)
class FeasibilityGrid:
    """Log-spaced (R, omega) samples with their drive strengths.

    Arrays have shape (len(radii), len(omegas)); ``valid`` is kR <= 1e-3.
    """

    radius_range: tuple[float, float]
    omega_range: tuple[float, float]
    flux_ratio: float
    n: int
    radii: np.ndarray
    omegas: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    kR: np.ndarray
    valid: np.ndarray
    mass: float = ELECTRON_MASS
    charge: float = ELEMENTARY_CHARGE


def build_grid(
    flux_ratio: float,
    n: int,
    radius_range: tuple[float, float] = PAPER_RADIUS_RANGE,
    omega_range: tuple[float, float] = PAPER_OMEGA_RANGE,
    samples: int | tuple[int, int] = GRID_SAMPLES,
    mass: float = ELECTRON_MASS,
    charge: float = ELEMENTARY_CHARGE,
) -> FeasibilityGrid:
    radius_range = _check_range("radius_range", radius_range)
    omega_range = _check_range("omega_range", omega_range)
    n_r, n_w = (samples, samples) if isinstance(samples, int) else samples
    if n_r < 1 or n_w < 1:
        raise DomainError("samples must be >= 1")
    radii = np.geomspace(*radius_range, n_r) if n_r > 1 else np.array([radius_range[0]])
    omegas = np.geomspace(*omega_range, n_w) if n_w > 1 else np.array([omega_range[0]])
    shape = (n_r, n_w)
    alpha, beta, kR = np.empty(shape), np.empty(shape), np.empty(shape)
    for i, r in enumerate(radii):
        for j, w in enumerate(omegas):
            ring, drive, p = _mode(flux_ratio, n, float(r), float(w), mass, charge)
            alpha[i, j], beta[i, j] = p.alpha, p.beta
            kR[i, j] = drive.wavenumber * ring.radius
    return FeasibilityGrid(
        radius_range, omega_range, float(flux_ratio), int(n), radii, omegas,
        alpha, beta, kR, kR <= VALID_KR, mass, charge,
    )


@dataclass(frozen=True)
class ScanHit:
    radius: float
    omega: float
    alpha: float
    beta: float
    kR: float
    valid: bool
    rank: int
    distance: float  # log10-space distance to the window centres


@dataclass(frozen=True)
class ScanResult:
    hits: tuple[ScanHit, ...]
    nearest_miss: ScanHit | None = None
    advisory: str = ""


def _log_gap(v: float, lo: float, hi: float) -> float:
    # log10 distance outside [lo, hi]; 0 inside
    if not v > 0:
        return math.inf
    lv = math.log10(v)
    return max(math.log10(lo) - lv, lv - math.log10(hi), 0.0)


def feasibility_scan(
    grid: FeasibilityGrid,
    alpha_window: tuple[float, float],
    beta_window: tuple[float, float],
) -> ScanResult:
    """Grid points with alpha and beta inside the windows, ranked by log distance to the window centres.

    An empty match is not an error: the result then names the nearest miss.
    """
    a_lo, a_hi = _check_range("alpha_window", alpha_window)
    b_lo, b_hi = _check_range("beta_window", beta_window)
    a_mid = 0.5 * (math.log10(a_lo) + math.log10(a_hi))
    b_mid = 0.5 * (math.log10(b_lo) + math.log10(b_hi))

    def distance(a: float, b: float) -> float:
        if not (a > 0 and b > 0):
            return math.inf
        return math.hypot(math.log10(a) - a_mid, math.log10(b) - b_mid)

    inside, best_miss, best_gap = [], None, math.inf
    for i, j in itertools.product(range(grid.radii.size), range(grid.omegas.size)):
        a, b = float(grid.alpha[i, j]), float(grid.beta[i, j])
        point = (float(grid.radii[i]), float(grid.omegas[j]), a, b, float(grid.kR[i, j]), bool(grid.valid[i, j]))
        if a_lo <= a <= a_hi and b_lo <= b <= b_hi:
            inside.append((distance(a, b), point))
        else:
            gap = math.hypot(_log_gap(a, a_lo, a_hi), _log_gap(b, b_lo, b_hi))
            if gap < best_gap:
                best_gap, best_miss = gap, point
    inside.sort(key=lambda item: (item[0], item[1][0], item[1][1]))
    hits = tuple(ScanHit(*pt, rank=k + 1, distance=d) for k, (d, pt) in enumerate(inside))
    if hits:
        return ScanResult(hits)
    miss = None
    msg = "no grid point falls inside the requested windows"
    if best_miss is not None:
        miss = ScanHit(*best_miss, rank=0, distance=distance(best_miss[2], best_miss[3]))
        msg += (
            f"; nearest miss R={miss.radius:.3g} m, omega={miss.omega:.3g} rad/s "
            f"(alpha={miss.alpha:.3g}, beta={miss.beta:.3g}, {best_gap:.2f} decades outside)"
        )
    return ScanResult((), miss, msg)
