from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ringfloquet.constants import SPEED_OF_LIGHT
from ringfloquet.errors import DegenerateError, DomainError, RegimeError
from ringfloquet.fields import approx_error, field_exact, field_lowfreq
from ringfloquet.model import DriveConfig

RHO = 1.0
A = 0.1


def drive_at(k_rho: float, flux: float = 1e-10) -> DriveConfig:
    return DriveConfig(flux, k_rho * SPEED_OF_LIGHT / RHO, solenoid_radius=A)


def test_zero_current_gives_zero_fields():
    d = DriveConfig.from_solenoid(1e4, 0.0, A, 1e3)
    f = field_exact(d, RHO, 0.3e-3)
    assert (f.a_phi, f.e_phi, f.b_z) == (0.0, 0.0, 0.0)


@pytest.mark.parametrize("k_rho", [1e-4, 1e-3, 1e-2, 0.2])
@pytest.mark.parametrize("phase", [0.1, 1.3, 2.9, 4.4])
def test_e_is_minus_time_derivative(k_rho, phase):
    d = drive_at(k_rho)
    period = 2 * math.pi / d.omega
    h = 1e-4 * period
    t = phase / d.omega
    fd = -(field_exact(d, RHO, t + h).a_phi - field_exact(d, RHO, t - h).a_phi) / (2 * h)
    e = field_exact(d, RHO, t).e_phi
    amp = d.flux_amplitude * d.omega / (2 * math.pi * RHO)
    assert abs(fd - e) <= 1e-6 * amp


@pytest.mark.parametrize("t_phase", [0.0, 0.7])
def test_b_is_curl_of_a(t_phase):
    d = drive_at(1e-3)
    t = t_phase / d.omega
    h = 1e-4 * RHO

    def rho_a(r):
        return r * field_exact(d, r, t).a_phi

    curl = (rho_a(RHO + h) - rho_a(RHO - h)) / (2 * h) / RHO
    b = field_exact(d, RHO, t).b_z
    assert abs(curl - b) <= 1e-4 * abs(b)


def test_lowfreq_cases():
    d = drive_at(1e-3)
    f = field_lowfreq(d, RHO, (math.pi / 2) / d.omega)
    assert abs(f.a_phi) <= 1e-16 * d.flux_amplitude
    assert f.b_z == 0.0
    assert f.e_phi == pytest.approx(d.flux_amplitude * d.omega / (2 * math.pi * RHO), rel=1e-15)


@given(st.floats(0.0, 2 * math.pi), st.floats(1e-3, 1e3))
def test_lowfreq_e_is_exact_derivative(phase, omega):
    d = DriveConfig(1e-12, omega, solenoid_radius=A)
    t = phase / omega
    f = field_lowfreq(d, RHO, t)
    assert f.e_phi == pytest.approx(d.flux_amplitude * omega * math.sin(omega * t) / (2 * math.pi * RHO), rel=1e-14, abs=0)
    assert f.a_phi == pytest.approx(d.flux_amplitude * math.cos(omega * t) / (2 * math.pi * RHO), rel=1e-14, abs=0)


def test_exact_tends_to_lowfreq():
    d = drive_at(1e-6)
    for t in np.linspace(0, 2 * math.pi / d.omega, 7):
        assert field_exact(d, RHO, t).a_phi == pytest.approx(field_lowfreq(d, RHO, t).a_phi, abs=1e-9 * 1e-10)


def test_approx_error_fitted_constant():
    # fit err = c1 (k rho)^2 from two points, then check kρ = 1e-3
    c1 = approx_error(drive_at(3e-3), RHO) / 9e-6
    assert 0.1 <= c1 <= 10
    assert approx_error(drive_at(1e-3), RHO) <= c1 * 1e-6 * 1.5


def test_approx_error_roughly_quadratic():
    ratio = approx_error(drive_at(1e-2), RHO) / approx_error(drive_at(1e-3), RHO)
    # (k rho)^2 up to a slowly varying log(k rho) factor
    assert 50 <= ratio <= 150


def test_approx_error_vanishes_as_omega_drops():
    errs = [approx_error(drive_at(k), RHO) for k in (1e-3, 1e-5, 1e-7)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] <= 1e-12
    assert approx_error(DriveConfig(1e-10, 0.0, solenoid_radius=A), RHO) == 0.0


def test_domain_checks():
    with pytest.raises(RegimeError):
        approx_error(drive_at(0.3), RHO)
    with pytest.raises(DomainError):
        field_exact(drive_at(1e-3), A, 0.0)
    with pytest.raises(DomainError):
        field_lowfreq(drive_at(1e-3), A / 2, 0.0)
    with pytest.raises(DegenerateError):
        field_exact(DriveConfig(1e-10, 0.0, solenoid_radius=A), RHO, 0.0)
