from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ringfloquet.errors import DomainError
from ringfloquet.lab import (
    PAPER_OMEGA_RANGE,
    PAPER_RADIUS_RANGE,
    build_grid,
    feasibility_bounds,
    feasibility_scan,
    loop_current,
    persistent_current,
)
from ringfloquet.model import DriveConfig, RingConfig, dimensionless, flux_quantum


def test_current_vanishes_without_n_and_flux():
    assert loop_current(RingConfig(n=0), DriveConfig(0.0, 10.0), 0.3) == 0.0


def test_current_zero_at_quarter_period_for_n0():
    d = DriveConfig(flux_quantum(), 10.0)
    ring = RingConfig(n=0)
    amplitude = abs(loop_current(ring, d, 0.0))
    # cos(pi/2) is 6e-17 in floating point
    assert abs(loop_current(ring, d, (math.pi / 2) / 10.0)) <= 1e-15 * amplitude


def test_persistent_value_for_electron():
    ring = RingConfig(n=1, radius=1e-6)
    assert loop_current(ring, DriveConfig(0.0, 5.0), 0.1) == pytest.approx(2.95e-12, rel=5e-3)
    assert persistent_current(ring) == pytest.approx(2.95e-12, rel=5e-3)


def test_time_average_is_persistent_term():
    ring = RingConfig(n=2, radius=3e-7)
    d = DriveConfig(0.7 * flux_quantum(), 40.0)
    t = np.arange(512) * (2 * math.pi / d.omega / 512)
    mean = float(np.mean(loop_current(ring, d, t)))
    assert abs(mean - persistent_current(ring)) <= 1e-12 * abs(persistent_current(ring))


@given(st.floats(1e-7, 1e-3), st.floats(1.1, 10.0), st.floats(0, 1))
def test_inverse_square_radius(radius, scale, t):
    d = DriveConfig(0.3 * flux_quantum(), 7.0)
    a = loop_current(RingConfig(n=1, radius=radius), d, t)
    b = loop_current(RingConfig(n=1, radius=radius * scale), d, t)
    assert b == pytest.approx(a / scale**2, rel=1e-12)


def test_paper_bounds():
    a_min, a_max, b_min, b_max = feasibility_bounds(1.0, 1, PAPER_RADIUS_RANGE, PAPER_OMEGA_RANGE)
    assert a_min == pytest.approx(1.16e-1, rel=0.01)
    assert a_max == pytest.approx(1.16e9, rel=0.01)
    assert b_min == pytest.approx(1.45e-2, rel=0.01)
    assert b_max == pytest.approx(1.45e8, rel=0.01)


def test_bounds_zero_flux_and_scaling():
    assert feasibility_bounds(0.0, 1) == (0.0, 0.0, 0.0, 0.0)
    one = feasibility_bounds(1.0, 1)
    two = feasibility_bounds(2.0, 1)
    assert two[1] == pytest.approx(2 * one[1], rel=1e-14)
    assert two[3] == pytest.approx(4 * one[3], rel=1e-14)


@given(st.floats(0.1, 10), st.floats(0.1, 10), st.floats(0.1, 10), st.floats(0.1, 10))
def test_bounds_monotone_in_box(r_lo, r_hi, w_lo, w_hi):
    inner = feasibility_bounds(1.0, 1, (1e-6, 1e-5), (1e2, 1e3))
    outer = feasibility_bounds(1.0, 1, (1e-6 / (1 + r_lo), 1e-5 * (1 + r_hi)), (1e2 / (1 + w_lo), 1e3 * (1 + w_hi)))
    assert outer[0] <= inner[0] and outer[1] >= inner[1]
    assert outer[2] <= inner[2] and outer[3] >= inner[3]


def test_bounds_reject_bad_ranges():
    with pytest.raises(DomainError):
        feasibility_bounds(1.0, 1, (1e-3, 1e-7))
    with pytest.raises(DomainError):
        feasibility_bounds(1.0, 1, (0.0, 1e-7))


def test_grid_samples_recompute_exactly():
    g = build_grid(1.1, 1)
    assert g.alpha.shape == (25, 25)
    for i in (0, 7, 24):
        for j in (0, 12, 24):
            ring = RingConfig(radius=float(g.radii[i]), n=1)
            p = dimensionless(ring, DriveConfig(1.1 * flux_quantum(), float(g.omegas[j])))
            assert (p.alpha, p.beta) == (g.alpha[i, j], g.beta[i, j])
    assert np.array_equal(g.valid, g.kR <= 1e-3)


def test_scan_paper_windows():
    res = feasibility_scan(build_grid(1.0, 1), (1e3, 1e6), (1e2, 1e5))
    assert res.hits
    assert [h.rank for h in res.hits] == list(range(1, len(res.hits) + 1))
    assert all(1e3 <= h.alpha <= 1e6 and 1e2 <= h.beta <= 1e5 for h in res.hits)
    d = [h.distance for h in res.hits]
    assert d == sorted(d)


def test_scan_empty_reports_nearest_miss():
    res = feasibility_scan(build_grid(1.0, 1), (1e10, 1e12), (1e10, 1e12))
    assert res.hits == ()
    assert res.nearest_miss is not None and res.nearest_miss.alpha == pytest.approx(1.16e9, rel=0.01)
    assert "nearest miss" in res.advisory


def test_scan_single_point_grid():
    g = build_grid(1.0, 1, (2e-6, 2e-6), (50.0, 50.0), samples=1)
    a, b = float(g.alpha[0, 0]), float(g.beta[0, 0])
    res = feasibility_scan(g, (a / 2, a * 2), (b / 2, b * 2))
    assert res.hits[0].rank == 1 and res.hits[0].radius == 2e-6
