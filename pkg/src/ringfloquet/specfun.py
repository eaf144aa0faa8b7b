"""Bessel functions of integer order for large orders and arguments.

``jn_array`` returns a whole ladder J_0(x)..J_N(x) in one backward (Miller)
recurrence sweep, which is the only practical way to get a million orders at
x ~ 1e6 to absolute accuracy ~1e-13. ``y01`` covers the two second-kind
functions needed for the solenoid field.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import DomainError, ResourceError

MAX_ORDER = 20_000_000
UNDERFLOW = 1e-300

_LOG_UNDERFLOW = math.log(UNDERFLOW)
_LOG_NORM_CUTOFF = math.log(1e-20)
_EULER_GAMMA = 0.5772156649015329
_SMALL_X = 1e-20
# both branches stay below ~4e-13 absolute error at the switch
_SERIES_LIMIT = 12.0


@dataclass(frozen=True)
class BesselArray:
    """J_k(argument) for k = 0..n_max, with zeros past the underflow edge."""

    argument: float
    values: np.ndarray
    n_max: int

    def __getitem__(self, k):
        return self.values[k]

    def __len__(self):
        return self.n_max + 1

    def normalization_residual(self) -> float:
        """|J_0 + 2 sum J_2k - 1| over the stored orders."""
        v = self.values
        return abs(v[0] + 2.0 * v[2::2].sum() - 1.0)

    def recurrence_residual(self) -> float:
        """Largest scaled residual of J_{k-1} + J_{k+1} = (2k/x) J_k."""
        v = self.values
        x = self.argument
        if self.n_max < 2 or x == 0.0:
            return 0.0
        k = np.arange(1, self.n_max)
        res = np.abs(v[:-2] + v[2:] - (2.0 * k / x) * v[1:-1])
        return float(np.max(res / np.maximum(1.0, np.abs(v[1:-1]))))


def _log_j_debye(nu: float, x: float) -> float:
    # Debye's asymptotic for nu > x: J_nu(nu sech a) ~ exp(nu (tanh a - a)) / sqrt(2 pi nu tanh a)
    a = math.acosh(nu / x)
    t = math.tanh(a)
    return -nu * (a - t) - 0.5 * math.log(2.0 * math.pi * nu * t)


def order_below(x: float, log_level: float) -> int:
    """Smallest integer order above ``x`` at which log|J| drops under ``log_level``."""
    lo = math.floor(x) + 1
    if _log_j_debye(lo, x) < log_level:
        return lo
    hi = lo
    step = max(16, int(x ** (1.0 / 3.0)))
    while _log_j_debye(hi, x) >= log_level:
        lo = hi
        hi += step
        step *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _log_j_debye(mid, x) < log_level:
            hi = mid
        else:
            lo = mid
    return hi


def start_order(n_needed: int, x: float) -> int:
    """Order at which the downward sweep is seeded."""
    return n_needed + max(64, math.ceil(10.0 * (x + 1.0) ** (1.0 / 3.0)))


def _check_args(x: float, n_max: int) -> None:
    if not math.isfinite(x) or x < 0.0:
        raise DomainError(f"Bessel argument must be finite and >= 0, got {x!r}")
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    if n_max > MAX_ORDER:
        raise ResourceError(f"n_max={n_max} exceeds the order cap {MAX_ORDER}")


def _small_argument(x: float, n_max: int) -> np.ndarray:
    # leading term (x/2)^k / k! is exact to double precision when x < 1e-20
    out = np.zeros(n_max + 1)
    log_half = math.log(x) - math.log(2.0)
    for k in range(n_max + 1):
        lv = k * log_half - math.lgamma(k + 1.0)
        if lv < _LOG_UNDERFLOW:
            break
        out[k] = math.exp(lv)
    return out


def jn_array(x: float, n_max: int) -> BesselArray:
    """J_0(x) .. J_{n_max}(x) by normalized backward recurrence.

    Orders whose magnitude is below 1e-300 are stored as exact zeros, which is
    also what keeps the sweep cheap when ``n_max`` is far above ``x``.

    Raises:
        DomainError: ``x`` negative or not finite.
        ResourceError: ``n_max`` above 2e7.
    """
    x = float(x)
    n_max = int(n_max)
    _check_args(x, n_max)
    if x == 0.0:
        out = np.zeros(n_max + 1)
        out[0] = 1.0
    elif x < _SMALL_X:
        out = _small_argument(x, n_max)
    else:
        n_cut = order_below(x, _LOG_UNDERFLOW)
        n_keep = min(n_max, n_cut)
        n_needed = max(n_keep, order_below(x, _LOG_NORM_CUTOFF))
        vals = kernels.bessel_backward(x, start_order(n_needed, x), n_keep)
        vals[np.abs(vals) < UNDERFLOW] = 0.0
        if n_keep < n_max:
            out = np.zeros(n_max + 1)
            out[: n_keep + 1] = vals
        else:
            out = vals
    out.setflags(write=False)
    return BesselArray(argument=x, values=out, n_max=n_max)


def jn(order: int, x: float) -> float:
    """Single J_order(x); negative orders via J_{-n} = (-1)^n J_n."""
    order = int(order)
    m = abs(order)
    if m > MAX_ORDER:
        raise ResourceError(f"|order|={m} exceeds the order cap {MAX_ORDER}")
    v = float(jn_array(x, m).values[m])
    if order < 0 and m % 2 == 1:
        v = -v
    return v


def _y01_series(x: float) -> tuple[float, float]:
    q = 0.25 * x * x
    half = 0.5 * x
    log_term = math.log(half) + _EULER_GAMMA

    j0 = 0.0
    y0_sum = 0.0
    t0 = 1.0  # (-q)^k / (k!)^2
    harmonic = 0.0
    j1 = 0.0
    y1_sum = 0.0
    t1 = 1.0  # (-q)^k / (k! (k+1)!)
    for k in range(60):
        if k > 0:
            t0 *= -q / (k * k)
            t1 *= -q / (k * (k + 1))
            harmonic += 1.0 / k
        j0 += t0
        y0_sum += t0 * harmonic
        j1 += t1
        # psi(k+1) + psi(k+2) = -2 gamma + 2 H_k + 1/(k+1)
        y1_sum += t1 * (-2.0 * _EULER_GAMMA + 2.0 * harmonic + 1.0 / (k + 1))
        if k > 2 and abs(t0) < 1e-18 and abs(t1) < 1e-18:
            break
    j1 *= half
    y0 = (2.0 / math.pi) * (log_term * j0 - y0_sum)
    y1 = -2.0 / (math.pi * x) + (2.0 / math.pi) * math.log(half) * j1 - (half / math.pi) * y1_sum
    return y0, y1


def _y_asymptotic(nu: int, x: float) -> float:
    mu = 4.0 * nu * nu
    p = 0.0
    q = 0.0
    term = 1.0
    last = math.inf
    for k in range(60):
        if k > 0:
            term *= (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        mag = abs(term)
        if mag > last or mag < 1e-17:
            break
        last = mag
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2 == 0:
            p += sign * term
        else:
            q += sign * term
    chi = x - (0.5 * nu + 0.25) * math.pi
    return math.sqrt(2.0 / (math.pi * x)) * (p * math.sin(chi) + q * math.cos(chi))


def y01(x: float) -> tuple[float, float]:
    """Return (Y_0(x), Y_1(x)); ascending series below 12, Hankel asymptotics above."""
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"Y_0, Y_1 need x > 0, got {x!r}")
    if x < _SERIES_LIMIT:
        return _y01_series(x)
    return _y_asymptotic(0, x), _y_asymptotic(1, x)
