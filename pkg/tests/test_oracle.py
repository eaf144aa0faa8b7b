from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ringfloquet.constants import HBAR
from ringfloquet.errors import DomainError, InconsistencyError, ResourceError
from ringfloquet.model import DriveConfig, ModeParams, RingConfig, dimensionless, energy_shifted, flux_quantum
from ringfloquet.oracle import (
    DEFAULT_STEPS,
    OracleReport,
    auto_steps,
    coefficients_dft,
    converged_phase_ode,
    phase_analytic,
    phase_ode,
    sample_signal,
    static_limit_check,
)
from ringfloquet.spectrum import coefficients_n0, coefficients_series


def mode(n=1, f=1.1, alpha=5.0) -> tuple[RingConfig, DriveConfig]:
    ring = RingConfig(n=n, radius=1e-6)
    # alpha = 2 kappa n f; for n = 0 take kappa = 1
    omega = 2 * ring.energy_scale * n * f / (alpha * HBAR) if n else ring.energy_scale / HBAR
    return ring, DriveConfig(f * flux_quantum(), omega)


def test_phase_at_zero_and_full_period():
    p = dimensionless(*mode())
    assert phase_analytic(0.0, p) == 0.0
    period = 2 * math.pi / p.omega
    assert phase_analytic(period, p) == pytest.approx(energy_shifted(1, 1.1, p.energy_scale) * period, rel=1e-12)


def test_phase_short_time_recovers_static_energy():
    p = dimensionless(*mode())
    t = 1e-6 / p.omega
    static = p.energy_scale * (p.n + p.flux_ratio) ** 2
    assert phase_analytic(t, p) / t == pytest.approx(static, rel=1e-10)


def test_phase_rejects_inconsistent_params():
    p = dimensionless(*mode())
    bad = ModeParams(p.alpha * 1.01, p.beta, p.flux_ratio, p.n, p.hbar_omega, p.energy_scale)
    with pytest.raises(InconsistencyError):
        phase_analytic(np.linspace(0, 1 / p.omega, 5), bad)


def test_dft_no_drive():
    t = coefficients_dft(0.0, 0.0)
    assert t.weight(0) == pytest.approx(1.0, abs=1e-15)
    assert np.max(np.abs(np.delete(t.weights, t.r_max))) <= 1e-15


def test_dft_matches_tight_series():
    dft = coefficients_dft(3.0, 2.0)
    ser = coefficients_series((3.0, 2.0), range(-20, 21), tol=1e-15)
    got = np.array([dft.weight(r) for r in range(-20, 21)])
    assert np.max(np.abs(got - ser.weights)) <= 1e-12


def test_dft_matches_closed_form():
    dft = coefficients_dft(0.0, 1e3)
    closed = coefficients_n0(1e3)
    r_max = min(dft.r_max, closed.r_max)
    diff = [abs(dft.weight(r) - closed.weight(r)) for r in range(-r_max, r_max + 1)]
    assert max(diff) <= 1e-10


@given(st.floats(-1e3, 1e3), st.floats(0, 1e3), st.sampled_from([64, 1024, 4096]))
def test_signal_has_unit_modulus(alpha, beta, n):
    s = sample_signal(alpha, beta, n)
    assert np.max(np.abs(np.abs(s) - 1.0)) <= 1e-15


def test_dft_resource_cap():
    with pytest.raises(ResourceError):
        coefficients_dft(1e6, 0.0, max_points=1 << 20)
    with pytest.raises(DomainError):
        coefficients_dft(1.0, 1.0, oversample=1)


def test_ode_drive_off():
    ring = RingConfig(n=2, radius=1e-6)
    drive = DriveConfig(0.0, ring.energy_scale / HBAR)
    trace = phase_ode(ring, drive)
    expect = -ring.energy_scale * 4 * trace.times / HBAR
    assert np.max(np.abs(trace.phase - expect)) <= 1e-10 * np.max(np.abs(expect))


def test_ode_matches_closed_form():
    ring, drive = mode(1, 1.1, 5.0)
    trace = converged_phase_ode(ring, drive)
    idx = np.linspace(0, trace.times.size - 1, 65).astype(int)[1:]
    exact = -phase_analytic(trace.times[idx], trace.params) / HBAR
    assert np.max(np.abs(trace.phase[idx] - exact) / np.abs(exact)) <= 1e-8


def test_ode_n0_period_slope():
    ring, drive = mode(0, 0.5)
    trace = phase_ode(ring, drive)
    slope = trace.phase[-1] / trace.times[-1]
    e0 = energy_shifted(0, 0.5, ring.energy_scale)
    assert slope == pytest.approx(-e0 / HBAR, rel=1e-9)


def test_ode_norm_drift_at_default_steps():
    for n, f, alpha in [(1, 0.2, 10.0), (3, 2.0, 10.0), (1, 1.1, 5.0)]:
        ring, drive = mode(n, f, alpha)
        assert phase_ode(ring, drive).norm_drift <= 1e-10


def test_auto_steps_floor():
    assert auto_steps(dimensionless(*mode(1, 1.0, 1.0))) >= DEFAULT_STEPS


def test_ode_step_limits():
    ring, drive = mode()
    with pytest.raises(DomainError):
        phase_ode(ring, drive, 999)
    ring, drive = mode(1, 0.01, 1e3)
    with pytest.raises(DomainError):
        phase_ode(ring, drive, 1000)
    with pytest.raises(ResourceError):
        phase_ode(ring, drive)


def test_static_limit_shrinks():
    ring = RingConfig(n=1, radius=1e-6)

    def at(w):
        return dimensionless(ring, DriveConfig(0.4 * flux_quantum(), w))

    rep = static_limit_check(at, [1e-1, 1e-2, 1e-3, 1e-4], 1.0)
    assert rep.monotone and rep.order >= 1.0


def test_static_limit_no_flux_and_n0():
    ring = RingConfig(n=2, radius=1e-6)
    rep = static_limit_check(lambda w: dimensionless(ring, DriveConfig(0.0, w)), [1, 0.1, 0.01, 0.001], 1.0)
    assert rep.deviations == (0.0, 0.0, 0.0, 0.0)
    ring0 = RingConfig(n=0, radius=1e-6)
    rep = static_limit_check(lambda w: dimensionless(ring0, DriveConfig(flux_quantum(), w)), [1, 0.1, 0.01, 0.001], 1.0)
    assert rep.limit_energy == pytest.approx(ring0.energy_scale, rel=1e-14)


def test_static_limit_needs_decreasing_sequence():
    with pytest.raises(DomainError):
        static_limit_check(lambda w: None, [1, 2, 0.1, 0.01], 1.0)
    with pytest.raises(DomainError):
        static_limit_check(lambda w: None, [1, 0.1, 0.01], 1.0)


def test_report_json_shape():
    d = OracleReport("x", {"a": 1}, 1e-13, 1e-10, True).to_dict()
    assert d == {"check": "x", "params": {"a": 1}, "max_abs_error": 1e-13, "tolerance": 1e-10, "pass": True}
