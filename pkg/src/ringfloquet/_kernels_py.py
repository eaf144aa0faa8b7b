"""Pure-Python implementations of the hot loops.

Selected at import time when the compiled ``_kernels`` extension is missing
(or when ``RINGFLOQUET_PURE_PYTHON=1``). Every function here has an identical
signature and result in the Cython module; the benchmark in ``benchmarks/``
times the two against each other.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

_RESCALE_AT = 1e250
_RESCALE_BY = 1e-250


def bessel_backward(x: float, n_start: int, n_keep: int) -> np.ndarray:
    """Miller backward recurrence for J_0(x) .. J_{n_keep}(x).

    Runs J_{k-1} = (2k/x) J_k - J_{k+1} downward from ``n_start`` with a zero
    seed above it, rescaling on the way down to stay finite, then normalizes
    with J_0 + 2 * sum_k J_{2k} = 1. Requires x > 0 and n_start >= n_keep.
    """
    out = np.zeros(n_keep + 1)
    b_next = 0.0
    b = 1e-30
    even_sum = b if n_start % 2 == 0 else 0.0
    if n_start <= n_keep:
        out[n_start] = b
    two_over_x = 2.0 / x
    for k in range(n_start, 0, -1):
        b_prev = k * two_over_x * b - b_next
        b_next = b
        b = b_prev
        km1 = k - 1
        if km1 <= n_keep:
            out[km1] = b
        if km1 % 2 == 0:
            even_sum += b if km1 == 0 else 2.0 * b
        if abs(b) > _RESCALE_AT:
            b *= _RESCALE_BY
            b_next *= _RESCALE_BY
            even_sum *= _RESCALE_BY
            top = min(n_start, n_keep)
            if km1 <= top:
                out[km1:top + 1] *= _RESCALE_BY
    out /= even_sum
    return out


def series_coefficient(
    ja: np.ndarray,
    alpha_negative: bool,
    jb: np.ndarray,
    tail_a: np.ndarray,
    tail_b: np.ndarray,
    r: int,
    s_cap: int,
    tol: float,
) -> tuple[float, int, float, bool]:
    """Symmetric partial sums of sum_s (-1)^r J_{r+2s}(alpha) J_s(beta).

    ``ja`` holds J_k(|alpha|) for k >= 0 and ``jb`` holds J_s(beta);
    ``tail_a[i]`` and ``tail_b[i]`` are the suffix sums of |ja| and |jb| from
    index i (one trailing zero each). The pair s = +m, -m is added at step m.
    Summation stops once the increment is below ``tol`` and the neglected
    tail, bounded by either suffix sum, is below ``tol`` as well. Returns
    (value, m, previous partial, converged).
    """
    na = ja.shape[0]
    nb = jb.shape[0]
    abs_r = -r if r < 0 else r

    def j_alpha(k: int) -> float:
        idx = -k if k < 0 else k
        if idx >= na:
            return 0.0
        v = ja[idx]
        # J_{-k} = (-1)^k J_k and J_k(-x) = (-1)^k J_k(x)
        flip = (k < 0) != alpha_negative
        if flip and idx % 2 == 1:
            v = -v
        return v

    total = j_alpha(r) * jb[0]
    prev = total
    m = 0
    converged = False
    while m < s_cap:
        m += 1
        jbm = jb[m] if m < nb else 0.0
        jb_neg = -jbm if m % 2 == 1 else jbm
        d = j_alpha(r + 2 * m) * jbm + j_alpha(r - 2 * m) * jb_neg
        prev = total
        total += d
        if abs(d) < tol:
            # every |s| > m term has |J_s(beta)| <= 1 and |J_{r+2s}(alpha)| <= 1
            tb = 2.0 * tail_b[min(m + 1, nb)]
            ka = 2 * (m + 1) - abs_r
            ta = 2.0 * tail_a[min(max(ka, 0), na)]
            if tb < tol or ta < tol:
                converged = True
                break
    if r % 2 != 0:
        total = -total
        prev = -prev
    return float(total), m, float(prev), converged


def rk4_phase(kappa: float, n: float, flux: float, steps: int) -> tuple[np.ndarray, float]:
    """Integrate dc/dtau = -i kappa (n + flux cos tau)^2 c over tau in [0, 2 pi].

    Classical fourth-order Runge-Kutta, c(0) = 1. Returns the unwrapped phase
    of c at every step (length steps + 1) and the largest | |c| - 1 | seen.
    """
    h = 2.0 * math.pi / steps
    phase = np.empty(steps + 1)
    phase[0] = 0.0
    c = 1.0 + 0.0j
    acc = 0.0
    drift = 0.0

    def rate(tau: float) -> complex:
        g = n + flux * math.cos(tau)
        return -1j * kappa * g * g

    for i in range(steps):
        tau = i * h
        r1 = rate(tau)
        r2 = rate(tau + 0.5 * h)
        r4 = rate(tau + h)
        k1 = r1 * c
        k2 = r2 * (c + 0.5 * h * k1)
        k3 = r2 * (c + 0.5 * h * k2)
        k4 = r4 * (c + h * k3)
        c_new = c + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        acc += cmath.phase(c_new * c.conjugate())
        c = c_new
        phase[i + 1] = acc
        dev = abs(abs(c) - 1.0)
        if dev > drift:
            drift = dev
    return phase, drift
