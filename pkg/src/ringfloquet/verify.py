"""Verification suites behind ``ringfloquet verify``.

Each check returns an :class:`~ringfloquet.oracle.OracleReport`. The quick
suite keeps every instance small; the full suite adds the large-beta
closed-form/FFT comparison and more random instances.
"""
from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .constants import HBAR
from .model import DriveConfig, ModeParams, RingConfig, dimensionless, energy_shifted, flux_quantum
from .oracle import OracleReport, coefficients_dft, phase_analytic, phase_ode, static_limit_check
from .spectrum import coefficients_n0, coefficients_series, find_peak

TRIANGLE_TOL = 1e-10
PARSEVAL_TOL = 1e-9
PARSEVAL_TOL_LARGE = 1e-6
ODE_RTOL = 1e-8
FAULT_SIZE = 1e-3


def max_diff(a, b) -> float:
    """Largest |difference| of two full tables over their common window."""
    r = min(a.r_max, b.r_max)
    sa = a.weights[a.r_max - r : a.r_max + r + 1]
    sb = b.weights[b.r_max - r : b.r_max + r + 1]
    return float(np.max(np.abs(sa - sb)))


def _random_pairs(rng: np.random.Generator, count: int, cap: float = 100.0):
    for _ in range(count):
        yield float(rng.uniform(-cap, cap)), float(rng.uniform(0.0, cap))


def check_triangle(count: int, seed: int = 1) -> OracleReport:
    """Series vs FFT (and closed form at alpha = 0) on random |alpha|, beta <= 100."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    pairs = list(_random_pairs(rng, count))
    pairs[0] = (0.0, pairs[0][1])
    for alpha, beta in pairs:
        dft = coefficients_dft(alpha, beta)
        ser = coefficients_series((alpha, beta), dft.r)
        worst = max(worst, float(np.max(np.abs(ser.weights - dft.weights))))
        if alpha == 0.0:
            worst = max(worst, max_diff(coefficients_n0(beta), dft))
    return OracleReport("oracle_triangle", {"instances": count, "seed": seed}, worst, TRIANGLE_TOL, worst <= TRIANGLE_TOL)


def check_parseval(pairs, inject_fault: bool = False) -> OracleReport:
    """sum C_r^2 = 1 on each (alpha, beta); ``inject_fault`` nudges one weight by 1e-3.

    The tolerance is 1e-9 up to max(|alpha|, 2 beta) = 1e4 and 1e-6 beyond;
    the report carries the loosest tolerance that was applied.
    """
    worst = 0.0
    tol_used = PARSEVAL_TOL
    ok = True
    for alpha, beta in pairs:
        table = coefficients_n0(beta) if alpha == 0.0 else coefficients_dft(alpha, beta)
        w = table.weights
        if inject_fault:
            w = w.copy()
            w[int(np.argmax(np.abs(w)))] += FAULT_SIZE
        tol = PARSEVAL_TOL if max(abs(alpha), 2 * beta) <= 1e4 else PARSEVAL_TOL_LARGE
        dev = abs(float(np.dot(w, w)) - 1.0)
        ok &= dev <= tol
        worst = max(worst, dev)
        tol_used = max(tol_used, tol)
    params = {"instances": len(pairs), "fault_injected": inject_fault}
    return OracleReport("parseval", params, worst, tol_used, ok)


def check_parity(betas) -> OracleReport:
    """Odd-r weights of the n = 0 closed form are exactly zero."""
    worst = 0.0
    for beta in betas:
        t = coefficients_n0(beta)
        worst = max(worst, float(np.max(np.abs(t.weights[t.r % 2 != 0]), initial=0.0)))
    return OracleReport("n0_parity", {"betas": list(betas)}, worst, 0.0, worst == 0.0)


def check_sign_flip(count: int, seed: int = 2) -> OracleReport:
    """Table at -alpha equals (-1)^r times the table at alpha."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for alpha, beta in _random_pairs(rng, count):
        a = coefficients_dft(alpha, beta)
        b = coefficients_dft(-alpha, beta)
        signs = np.where(a.r % 2 == 0, 1.0, -1.0)
        worst = max(worst, float(np.max(np.abs(b.weights - signs * a.weights))))
    return OracleReport("sign_flip", {"instances": count, "seed": seed}, worst, 1e-12, worst <= 1e-12)


def check_peak_law(betas) -> OracleReport:
    """|r_peak - 2 beta| <= 5 beta^(1/3) for the n = 0 closed form."""
    worst = 0.0
    ok = True
    for beta in betas:
        peak = find_peak(coefficients_n0(beta))
        excess = abs(peak.r_peak - 2 * beta) / (5 * beta ** (1 / 3))
        worst = max(worst, excess)
        ok &= excess <= 1.0
    return OracleReport("r_peak_law", {"betas": list(betas)}, worst, 1.0, ok)


def check_large_beta(beta: float = 1e6) -> OracleReport:
    """Closed form against FFT at large beta."""
    err = max_diff(coefficients_n0(beta), coefficients_dft(0.0, beta))
    return OracleReport("large_beta_closed_vs_fft", {"beta": beta}, err, TRIANGLE_TOL, err <= TRIANGLE_TOL)


def check_static_limit() -> OracleReport:
    """f(t*)/t* approaches E_n monotonically as omega drops over three decades."""
    ring = RingConfig(n=1, radius=1e-6)
    flux = 0.3 * flux_quantum()
    t_star = 1.0

    def params_at(w: float) -> ModeParams:
        return dimensionless(ring, DriveConfig(flux, w))

    omegas = [1e-1, 1e-2, 1e-3, 1e-4]
    rep = static_limit_check(params_at, omegas, t_star)
    ok = rep.monotone and rep.order >= 1.0 - 1e-6
    # error: relative deviation at the smallest omega; tolerance: at the largest
    scale = abs(rep.limit_energy)
    return OracleReport(
        "static_limit",
        {"omegas": omegas, "t_star": t_star, "order": rep.order},
        rep.deviations[-1] / scale,
        rep.deviations[0] / scale,
        ok,
    )


def _ode_instance(n: int, f: float, alpha: float, radius: float = 1e-6) -> tuple[RingConfig, DriveConfig]:
    ring = RingConfig(n=n, radius=radius)
    scale = ring.energy_scale
    # alpha = 2 kappa n f with kappa = S / (hbar omega)
    omega = 2.0 * scale * n * f / (alpha * HBAR)
    return ring, DriveConfig(f * flux_quantum(), omega)


def ode_error(ring: RingConfig, drive: DriveConfig, samples: int = 64) -> tuple[float, float]:
    """(worst relative phase error against -f(t)/hbar at ``samples`` times, norm drift)."""
    trace = phase_ode(ring, drive)
    steps = trace.times.size - 1
    idx = np.linspace(0, steps, samples + 1).astype(int)[1:]
    exact = phase_analytic(trace.times[idx], trace.params)
    got = trace.phase_values[idx]
    return float(np.max(np.abs(got - exact) / np.abs(exact))), trace.norm_drift


def check_phase_ode(count: int, seed: int = 3) -> OracleReport:
    rng = np.random.default_rng(seed)
    worst = drift = 0.0
    for _ in range(count):
        n = int(rng.integers(1, 4))
        f = float(rng.uniform(0.2, 2.0))
        alpha = float(rng.uniform(0.5, 10.0))
        err, d = ode_error(*_ode_instance(n, f, alpha))
        worst, drift = max(worst, err), max(drift, d)
    ok = worst <= ODE_RTOL and drift <= 1e-10
    return OracleReport("phase_ode", {"instances": count, "seed": seed, "norm_drift": drift}, worst, ODE_RTOL, ok)


def check_phase_period() -> OracleReport:
    """f(2 pi / omega) = E'_n 2 pi / omega."""
    ring, drive = _ode_instance(1, 1.1, 5.0)
    p = dimensionless(ring, drive)
    period = 2 * math.pi / p.omega
    expect = energy_shifted(p.n, p.flux_ratio, p.energy_scale) * period
    err = abs(phase_analytic(period, p) - expect) / abs(expect)
    return OracleReport("phase_period", {"n": 1, "flux_ratio": 1.1}, err, 1e-12, err <= 1e-12)


def run_suite(suite: str = "quick", inject_fault: bool = False) -> list[OracleReport]:
    if suite not in ("quick", "full"):
        raise ValueError(f"unknown suite {suite!r}")
    full = suite == "full"
    parseval_pairs = [(0.0, 0.0), (3.0, 2.0), (0.0, 1e3), (1e3, 137.5)]
    if full:
        parseval_pairs += [(0.0, 1e6), (1e6, 1.375e5)]
    peak_betas = [1e3, 1e4, 1e5] + ([1e6] if full else [])
    checks: list[Callable[[], OracleReport]] = [
        lambda: check_triangle(50 if full else 8),
        lambda: check_parseval(parseval_pairs, inject_fault),
        lambda: check_parity([0.0, 1.5, 1e3] + ([1e6] if full else [])),
        lambda: check_sign_flip(20 if full else 4),
        lambda: check_peak_law(peak_betas),
        check_static_limit,
        check_phase_period,
        lambda: check_phase_ode(10 if full else 2),
    ]
    if full:
        checks.append(check_large_beta)
    return [c() for c in checks]
