from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ringfloquet.constants import ELECTRON_MASS, ELEMENTARY_CHARGE, HBAR
from ringfloquet.errors import DegenerateError, DomainError, InconsistencyError
from ringfloquet.model import (
    DriveConfig,
    ModeParams,
    RingConfig,
    dimensionless,
    energy_shifted,
    energy_static,
    flux_quantum,
    flux_ratio,
    solenoid_flux,
    validity,
)

S = 2.5e-23


def electron(n=1, radius=1.0):
    return RingConfig(mass=ELECTRON_MASS, charge=ELEMENTARY_CHARGE, radius=radius, n=n)


def test_flux_quantum_value():
    assert flux_quantum() == pytest.approx(4.1357e-15, rel=1e-4)
    assert flux_quantum() * ELEMENTARY_CHARGE / (2 * math.pi * HBAR) == pytest.approx(1.0, rel=1e-15)
    assert flux_ratio(flux_quantum()) == 1.0


def test_energy_static_cases():
    assert energy_static(0, 0, S) == 0.0
    assert energy_static(0, 0.5, S) == 0.25 * S
    for n in range(-3, 4):
        assert energy_static(n, 1, S) == energy_static(n + 1, 0, S)


def test_energy_shifted_cases():
    assert energy_shifted(0, 0, S) == 0.0
    assert energy_shifted(1, 0, S) == S
    assert energy_shifted(1, 1.1, S) - energy_shifted(0, 1.1, S) == pytest.approx(S, rel=1e-14)


@pytest.mark.parametrize("omega_r2,alpha,beta", [(1e-3, 1.16e-1, 1.45e-2), (1e-13, 1.16e9, 1.45e8)])
def test_dimensionless_paper_bounds(omega_r2, alpha, beta):
    p = dimensionless(electron(1, 1.0), DriveConfig(flux_quantum(), omega_r2))
    assert p.alpha == pytest.approx(alpha, rel=0.01)
    assert p.beta == pytest.approx(beta, rel=0.01)


def test_zero_flux_gives_zero_drive():
    p = dimensionless(electron(), DriveConfig(0.0, 10.0))
    assert p.alpha == 0.0 and p.beta == 0.0


def test_static_drive_is_degenerate():
    with pytest.raises(DegenerateError):
        dimensionless(electron(), DriveConfig(flux_quantum(), 0.0))


@given(st.floats(1e-3, 1e3), st.floats(-3.0, 3.0), st.integers(-5, 5), st.floats(1e-7, 1e-3))
def test_homogeneous_in_omega(lam, f, n, radius):
    ring = electron(n, radius)
    a = dimensionless(ring, DriveConfig(f * flux_quantum(), 100.0))
    b = dimensionless(ring, DriveConfig(f * flux_quantum(), 100.0 * lam))
    assert b.alpha == pytest.approx(a.alpha / lam, rel=1e-13, abs=0)
    assert b.beta == pytest.approx(a.beta / lam, rel=1e-13, abs=0)


@given(st.floats(-4.0, 4.0), st.integers(-6, 6).filter(bool), st.floats(1.0, 1e4))
def test_alpha_beta_identity(f, n, omega):
    p = dimensionless(electron(n, 1e-6), DriveConfig(f * flux_quantum(), omega))
    assert p.beta * 8 * n == pytest.approx(p.alpha * p.flux_ratio, rel=1e-14, abs=1e-300)


@given(st.integers(-50, 50), st.floats(-10, 10))
def test_reflection_symmetry(n, f):
    assert energy_static(n, f, S) == energy_static(-n, -f, S)


def test_validity_cases():
    assert validity(electron(radius=1e-3), DriveConfig(1e-15, 1e3)).status == "valid"
    assert validity(electron(radius=1e-3), DriveConfig(1e-15, 1e3)).kR == pytest.approx(3.3e-9, rel=0.02)
    rep = validity(electron(), DriveConfig(1e-15, 0.0))
    assert rep.kR == 0.0 and rep.valid
    assert validity(electron(radius=1.0), DriveConfig(1e-15, 3e8)).status == "invalid"
    assert validity(electron(radius=1.0), DriveConfig(1e-15, 3e6, solenoid_radius=0.1)).status == "marginal"


def test_winding_flux_consistency():
    d = DriveConfig.from_solenoid(1e4, 0.01, 1e-7, 50.0)
    assert d.flux_amplitude == solenoid_flux(1e4, 0.01, 1e-7)
    rep = validity(electron(radius=1e-6), d)
    assert rep.flux_consistent and rep.solenoid_inside_ring
    with pytest.raises(InconsistencyError):
        DriveConfig(d.flux_amplitude * 1.001, 50.0, 1e-7, 1e4, 0.01)


@pytest.mark.parametrize(
    "kwargs", [dict(mass=0.0), dict(radius=-1.0), dict(charge=0.0), dict(n=1.5)]
)
def test_ring_rejects_bad_values(kwargs):
    with pytest.raises(DomainError):
        RingConfig(**kwargs)


def test_drive_rejects_bad_values():
    with pytest.raises(DomainError):
        DriveConfig(1.0, -1.0)
    with pytest.raises(DomainError):
        DriveConfig(1.0, 1.0, solenoid_radius=0.0)


def test_from_dimensionless_round_trip():
    p = ModeParams.from_dimensionless(1, alpha=1e3, flux_ratio=1.1)
    assert p.beta == pytest.approx(137.5, rel=1e-14)
    q = ModeParams.from_dimensionless(1, alpha=1e6, beta=1.375e5)
    assert q.flux_ratio == pytest.approx(1.1, rel=1e-14)
    assert q.kappa == pytest.approx(1e6 / 2.2, rel=1e-14)
    z = ModeParams.from_dimensionless(0, beta=1e3)
    assert z.alpha == 0.0 and z.flux_ratio == 1.0
    assert z.kappa == pytest.approx(4e3, rel=1e-14)
    with pytest.raises(InconsistencyError):
        ModeParams.from_dimensionless(0, alpha=1.0, beta=1.0)
    with pytest.raises(InconsistencyError):
        ModeParams.from_dimensionless(1, alpha=1e3, beta=1.0, flux_ratio=1.1)
    with pytest.raises(DomainError):
        ModeParams.from_dimensionless(1, alpha=1e3)
