from __future__ import annotations

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ringfloquet.errors import DomainError, ResourceError
from ringfloquet.specfun import MAX_ORDER, jn, jn_array, y01

mpmath.mp.dps = 40


def series_j(n: int, x) -> mpmath.mpf:
    """Ascending power series for J_n in 40-digit arithmetic."""
    x = mpmath.mpf(x)
    q = -(x * x) / 4
    term = (x / 2) ** n / mpmath.factorial(n)
    total = term
    k = 0
    while abs(term) > mpmath.mpf(10) ** -45 * max(abs(total), mpmath.mpf(10) ** -300) or k < 5:
        k += 1
        term *= q / (k * (k + n))
        total += term
    return total


def test_order_zero_at_origin():
    assert jn_array(0, 3).values.tolist() == [1.0, 0.0, 0.0, 0.0]


def test_recurrence_at_1e3():
    v = jn_array(1e3, 2).values
    assert abs(v[0] + v[2] - (2 / 1e3) * v[1]) <= 1e-10


def test_far_order_underflows_to_zero():
    arr = jn_array(1e3, 10**6)
    assert arr[10**6] == 0.0
    assert len(arr) == 10**6 + 1


def test_jn_scalar_cases():
    assert jn(0, 0) == 1.0
    for x in (0.3, 7.0, 250.0):
        assert jn(-3, x) == -jn(3, x)
        assert jn(-4, x) == jn(4, x)


def test_first_zero_of_j0_from_bisection():
    lo, hi = mpmath.mpf(2), mpmath.mpf(3)
    for _ in range(120):
        mid = (lo + hi) / 2
        if series_j(0, lo) * series_j(0, mid) <= 0:
            hi = mid
        else:
            lo = mid
    x0 = float((lo + hi) / 2)
    assert abs(jn(0, x0)) <= 1e-10


def test_y1_small_argument():
    y1 = y01(1e-6)[1]
    expect = -2 / (math.pi * 1e-6)
    assert abs(y1 - expect) <= 1e-4 * abs(expect)


@pytest.mark.parametrize("x", [0.1, 1.0, 10.0])
def test_wronskian(x):
    y0, y1 = y01(x)
    j = jn_array(x, 1).values
    lhs = j[1] * y0 - j[0] * y1
    rhs = 2 / (math.pi * x)
    assert abs(lhs - rhs) <= 1e-8 * rhs


def test_y0_against_quadrature():
    # Y_0(x) = (4/pi^2) int_0^{pi/2} cos(x cos t) (gamma + log(2 x sin^2 t)) dt
    x = mpmath.mpf("2.5")
    integral = mpmath.quad(
        lambda t: mpmath.cos(x * mpmath.cos(t)) * (mpmath.euler + mpmath.log(2 * x * mpmath.sin(t) ** 2)),
        [0, mpmath.pi / 4, mpmath.pi / 2],
    )
    oracle = float(4 / mpmath.pi**2 * integral)
    assert abs(y01(2.5)[0] - oracle) <= 1e-8


@pytest.mark.parametrize("x,tol", [(1e-3, 1e-10), (1.0, 1e-10), (1e3, 1e-10), (1e6, 1e-8)])
def test_normalization_and_recurrence(x, tol):
    n_max = math.ceil(x + 10 * x ** (1 / 3) + 50)
    arr = jn_array(x, n_max)
    assert arr.normalization_residual() <= tol
    assert arr.recurrence_residual() <= 1e-10
    assert np.all(np.abs(arr.values) <= 1.0)
    assert np.all(np.isfinite(arr.values))


@pytest.mark.parametrize("x", [1e-3, 1.0, 1e3, 1e6])
def test_completeness(x):
    k = math.ceil(x + 10 * x ** (1 / 3) + 50)
    v = jn_array(x, k).values
    total = v[0] ** 2 + 2 * float(np.dot(v[1:], v[1:]))
    assert abs(total - 1.0) <= 1e-9


@pytest.mark.parametrize("x", [0.5, 3.7, 11.3, 19.9])
def test_against_power_series(x):
    vals = jn_array(x, 30).values
    for n in range(31):
        ref = series_j(n, x)
        assert abs(vals[n] - float(ref)) <= 1e-10 * abs(float(ref))


def test_values_are_read_only():
    arr = jn_array(5.0, 4)
    with pytest.raises(ValueError):
        arr.values[0] = 2.0


def test_tiny_argument_path():
    v = jn_array(1e-25, 3).values
    assert v[0] == 1.0
    assert v[1] == pytest.approx(5e-26, rel=1e-15)


@given(st.floats(0.0, 5e3), st.integers(0, 400))
def test_scalar_matches_array(x, order):
    arr = jn_array(x, order + 5).values
    assert abs(jn(order, x) - arr[order]) <= 1e-12


@given(st.floats(1e-6, 1e4), st.integers(1, 200))
def test_parity_identity(x, order):
    assert jn(-order, x) == (-1) ** order * jn(order, x)


@pytest.mark.parametrize("x", [-1.0, math.nan, math.inf])
def test_bad_argument(x):
    with pytest.raises(DomainError):
        jn_array(x, 3)


def test_order_cap():
    with pytest.raises(ResourceError):
        jn_array(1.0, MAX_ORDER + 1)
    with pytest.raises(ResourceError):
        jn(-(MAX_ORDER + 1), 1.0)
    with pytest.raises(DomainError):
        jn_array(1.0, -1)


@pytest.mark.parametrize("x", [0.0, -2.0])
def test_y01_domain(x):
    with pytest.raises(DomainError):
        y01(x)


@pytest.mark.parametrize("x", [0.01, 0.7, 5.0, 11.99, 12.0, 30.0, 60.0])
def test_y01_against_mpmath(x):
    y0, y1 = y01(x)
    assert abs(y0 - float(mpmath.bessely(0, x))) <= 1e-11
    assert abs(y1 - float(mpmath.bessely(1, x))) <= 1e-11 * max(1.0, abs(y1))
