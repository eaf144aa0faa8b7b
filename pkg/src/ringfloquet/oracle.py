"""Independent routes to the same physics, used to cross-check ``spectrum``.

* the closed-form accumulated phase f(t) and its two equivalent forms;
* C_r as FFT coefficients of the unit-modulus signal exp(-i(alpha sin + beta sin 2));
* direct RK4 integration of the single-mode Schroedinger equation;
* the omega -> 0 limit back to the static-flux energies.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np
import scipy.fft

from ._backend import kernels, thread_cap
from .constants import HBAR
from .errors import DomainError, IntegrationError, InconsistencyError, ResourceError, VerificationError
from .model import DriveConfig, ModeParams, RingConfig, dimensionless, energy_shifted, energy_static
from .spectrum import EDGE_TOL, WeightTable, quiet_edge, window_halfwidth

DEFAULT_OVERSAMPLE = 4
MAX_FFT_POINTS = 1 << 25
IMAG_RESIDUE_TOL = 1e-10
NORM_DRIFT_LIMIT = 1e-8
MIN_STEPS = 1000
DEFAULT_STEPS = 1 << 14
# largest phase advance per step for the automatic step count
AUTO_STEP_ADVANCE = 0.004
MAX_STEPS = 1 << 24


@dataclass(frozen=True)
class PhaseTrace:
    """Accumulated phase f(t) (joule second) on a time grid.

    ``phase`` gives the wavefunction's phase angle, -f(t)/hbar.
    """

    times: np.ndarray
    phase_values: np.ndarray
    params: ModeParams
    norm_drift: float = 0.0

    @property
    def phase(self) -> np.ndarray:
        return -self.phase_values / HBAR


def phase_analytic(t, params: ModeParams):
    """Closed-form f(t) for the driven mode; works on scalars and arrays.

    Evaluated as written (n^2 t + 2 n f sin(wt)/w + f^2/2 (t + sin(2wt)/2w),
    times the energy scale) and cross-checked against the rearranged form
    E'_n t + hbar (alpha sin wt + beta sin 2wt).

    Raises:
        InconsistencyError: the two forms disagree (params not self-consistent).
    """
    w = params.omega
    if not w > 0:
        raise DomainError("phase_analytic needs omega > 0")
    t = np.asarray(t, dtype=float)
    n, f, s = params.n, params.flux_ratio, params.energy_scale
    sin1 = np.sin(w * t)
    sin2 = np.sin(2.0 * w * t)
    direct = s * (n * n * t + 2.0 * n * f * sin1 / w + 0.5 * f * f * (t + sin2 / (2.0 * w)))
    e_shift = energy_shifted(n, f, s)
    folded = e_shift * t + HBAR * (params.alpha * sin1 + params.beta * sin2)
    scale = np.maximum(np.abs(direct), s * (n * n + f * f + abs(n * f)) * np.abs(t))
    bad = np.abs(direct - folded) > 1e-12 * np.maximum(scale, 1e-300)
    if np.any(bad):
        raise InconsistencyError("ModeParams alpha/beta do not match its energy scale and flux ratio")
    return float(direct) if direct.ndim == 0 else direct


def fft_length(r_max: int, oversample: int) -> int:
    target = oversample * (2 * r_max + 2)
    return 1 << max(0, math.ceil(math.log2(target)))


def sample_signal(alpha: float, beta: float, n_points: int) -> np.ndarray:
    """exp(-i(alpha sin t + beta sin 2t)) on t_j = 2 pi j / N."""
    theta = np.arange(n_points) * (2.0 * np.pi / n_points)
    phase = alpha * np.sin(theta)
    phase += beta * np.sin(2.0 * theta)
    del theta
    return np.exp(-1j * phase)


def coefficients_dft(
    alpha: float,
    beta: float,
    oversample: int = DEFAULT_OVERSAMPLE,
    max_points: int = MAX_FFT_POINTS,
) -> WeightTable:
    """C_r = (1/N) sum_j s_j e^{-i r t_j} over the full index window.

    With s(t) = sum_k G_k e^{-ikt} (Jacobi-Anger on each factor,
    G_k = sum_s J_{k-2s}(alpha) J_s(beta)), the transform picks out
    G_{-r} = sum_s (-1)^r J_{r+2s}(alpha) J_s(beta), i.e. the series
    weight itself. The weights are real because the phase is odd in t;
    any imaginary residue above 1e-10 is treated as a failure.

    The returned window is the standard half-width, widened until a run of
    weights below the 1e-12 edge tolerance begins (the transform length is
    doubled if that would reach N/4).

    Raises:
        ResourceError: transform length above ``max_points``.
        VerificationError: imaginary residue too large.
    """
    if oversample < 2:
        raise DomainError("oversample must be >= 2")
    if beta < 0:
        raise DomainError("beta must be >= 0")
    r_base = window_halfwidth(alpha, beta)
    n_points = fft_length(r_base, oversample)
    while True:
        if n_points > max_points:
            raise ResourceError(
                f"FFT length {n_points} exceeds cap {max_points}; reduce |alpha| + 2 beta "
                f"(now {abs(alpha) + 2 * beta:.4g}) or the oversampling factor"
            )
        spectrum = scipy.fft.fft(sample_signal(alpha, beta, n_points), overwrite_x=True, workers=thread_cap())
        quarter = n_points // 4
        k = np.arange(quarter)
        # largest of |C_k| and |C_-k| for 0 <= k < N/4
        rim = np.maximum(np.abs(spectrum[k]), np.abs(spectrum[-k % n_points]))
        r_max = quiet_edge(rim / n_points, r_base, 0.5 * EDGE_TOL)
        if r_max < quarter:
            break
        del spectrum
        n_points *= 2
    idx = np.arange(-r_max, r_max + 1)
    c = spectrum[idx % n_points] / n_points
    del spectrum
    residue = float(np.max(np.abs(c.imag)))
    if residue > IMAG_RESIDUE_TOL:
        raise VerificationError(f"imaginary residue {residue:.3g} in FFT weights")
    weights = np.ascontiguousarray(c.real)
    weights.setflags(write=False)
    return WeightTable(float(alpha), float(beta), idx, weights, "dft")


def auto_steps(params: ModeParams) -> int:
    """Power-of-two step count keeping the per-step phase advance <= 0.004 rad."""
    rate = params.kappa * (abs(params.n) + abs(params.flux_ratio)) ** 2
    need = 2.0 * math.pi * rate / AUTO_STEP_ADVANCE
    steps = max(DEFAULT_STEPS, 1 << max(0, math.ceil(math.log2(max(need, 1.0)))))
    if steps > MAX_STEPS:
        raise ResourceError(
            f"one drive period needs {steps} RK4 steps (cap {MAX_STEPS}); "
            f"energy_scale / (hbar omega) = {params.kappa:.3g} is too large, raise omega"
        )
    return steps


def phase_ode(ring: RingConfig, drive: DriveConfig, steps_per_period: int | None = None) -> PhaseTrace:
    """Integrate i hbar dc/dt = S (n + f cos wt)^2 c over one drive period with RK4.

    ``steps_per_period=None`` picks :func:`auto_steps`.

    Raises:
        ResourceError: more than 2^24 steps requested or implied.
        DomainError: fewer than 1000 steps, or a step so long the phase
            advance per step reaches pi/2 (unwrapping would be ambiguous).
        IntegrationError: |c| drifts from 1 by more than 1e-8.
    """
    params = dimensionless(ring, drive)
    if steps_per_period is None:
        steps_per_period = auto_steps(params)
    if steps_per_period < MIN_STEPS:
        raise DomainError(f"steps_per_period must be >= {MIN_STEPS}")
    if steps_per_period > MAX_STEPS:
        raise ResourceError(f"steps_per_period above the cap {MAX_STEPS}")
    kappa = params.kappa
    h = 2.0 * math.pi / steps_per_period
    if kappa * (abs(params.n) + abs(params.flux_ratio)) ** 2 * h >= 0.5 * math.pi:
        raise DomainError("phase advance per step too large; raise steps_per_period")
    phase, drift = kernels.rk4_phase(kappa, float(params.n), params.flux_ratio, int(steps_per_period))
    if drift > NORM_DRIFT_LIMIT:
        raise IntegrationError(f"norm drift {drift:.3g} exceeds {NORM_DRIFT_LIMIT}")
    times = np.arange(steps_per_period + 1) * (h / drive.omega)
    return PhaseTrace(times, -HBAR * phase, params, norm_drift=drift)


def converged_phase_ode(
    ring: RingConfig,
    drive: DriveConfig,
    rtol: float = 1e-10,
    start_steps: int | None = None,
    max_steps: int = MAX_STEPS,
) -> PhaseTrace:
    """Halve the RK4 step until the end-of-period phase settles to ``rtol``."""
    steps = start_steps or auto_steps(dimensionless(ring, drive))
    trace = phase_ode(ring, drive, steps)
    while steps * 2 <= max_steps:
        finer = phase_ode(ring, drive, steps * 2)
        a, b = trace.phase_values[-1], finer.phase_values[-1]
        trace, steps = finer, steps * 2
        if abs(a - b) <= rtol * max(abs(b), 1e-300):
            break
    return trace


@dataclass(frozen=True)
class StaticLimitReport:
    omegas: tuple[float, ...]
    deviations: tuple[float, ...]
    limit_energy: float
    monotone: bool
    order: float  # fitted slope of log(deviation) vs log(omega); nan when all zero


def static_limit_check(
    params_at: Callable[[float], ModeParams],
    omega_sequence: Sequence[float],
    t_star: float,
) -> StaticLimitReport:
    """Track f(t*)/t* toward the static level E_n as omega decreases."""
    omegas = [float(w) for w in omega_sequence]
    if len(omegas) < 4:
        raise DomainError("need at least 4 frequencies")
    if any(b >= a for a, b in zip(omegas, omegas[1:])) or omegas[-1] <= 0:
        raise DomainError("omega_sequence must be strictly decreasing and positive")
    devs = []
    limit = math.nan
    for w in omegas:
        p = params_at(w)
        limit = energy_static(p.n, p.flux_ratio, p.energy_scale)
        devs.append(abs(phase_analytic(t_star, p) / t_star - limit))
    monotone = all(b <= a for a, b in zip(devs, devs[1:]))
    positive = [(w, d) for w, d in zip(omegas, devs) if d > 0]
    if len(positive) >= 2:
        x = np.log([w for w, _ in positive])
        y = np.log([d for _, d in positive])
        order = float(np.polyfit(x, y, 1)[0])
    else:
        order = math.nan
    return StaticLimitReport(tuple(omegas), tuple(devs), limit, monotone, order)


@dataclass
class OracleReport:
    """Outcome of one cross-check, in the JSON shape the CLI writes."""

    check: str
    params: dict = field(default_factory=dict)
    max_abs_error: float = 0.0
    tolerance: float = 0.0
    passed: bool = False

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d
