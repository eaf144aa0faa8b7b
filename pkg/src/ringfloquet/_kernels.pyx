# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops. Mirrors ``_kernels_py`` line for line."""
import numpy as np

cimport numpy as cnp
from libc.math cimport cos, fabs, atan2, M_PI

cnp.import_array()

cdef double _RESCALE_AT = 1e250
cdef double _RESCALE_BY = 1e-250


def bessel_backward(double x, long n_start, long n_keep):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out_arr = np.zeros(n_keep + 1)
    cdef double[::1] out = out_arr
    cdef double b_next = 0.0
    cdef double b = 1e-30
    cdef double b_prev, even_sum
    cdef double two_over_x = 2.0 / x
    cdef long k, km1, j, top
    even_sum = b if n_start % 2 == 0 else 0.0
    if n_start <= n_keep:
        out[n_start] = b
    top = n_start if n_start < n_keep else n_keep
    for k in range(n_start, 0, -1):
        b_prev = k * two_over_x * b - b_next
        b_next = b
        b = b_prev
        km1 = k - 1
        if km1 <= n_keep:
            out[km1] = b
        if km1 % 2 == 0:
            if km1 == 0:
                even_sum += b
            else:
                even_sum += 2.0 * b
        if fabs(b) > _RESCALE_AT:
            b *= _RESCALE_BY
            b_next *= _RESCALE_BY
            even_sum *= _RESCALE_BY
            if km1 <= top:
                for j in range(km1, top + 1):
                    out[j] *= _RESCALE_BY
    for j in range(n_keep + 1):
        out[j] /= even_sum
    return out_arr


cdef inline double _j_alpha(const double[::1] ja, long na, bint alpha_negative, long k) nogil:
    cdef long idx = -k if k < 0 else k
    cdef double v
    cdef bint flip
    if idx >= na:
        return 0.0
    v = ja[idx]
    flip = (k < 0) != alpha_negative
    if flip and idx % 2 == 1:
        v = -v
    return v


def series_coefficient(const double[::1] ja, bint alpha_negative, const double[::1] jb,
                       const double[::1] tail_a, const double[::1] tail_b,
                       long r, long s_cap, double tol):
    cdef long na = ja.shape[0]
    cdef long nb = jb.shape[0]
    cdef long abs_r = -r if r < 0 else r
    cdef double total, prev, d, jbm, jb_neg, tb, ta
    cdef long m = 0, ka
    cdef bint converged = False
    with nogil:
        total = _j_alpha(ja, na, alpha_negative, r) * jb[0]
        prev = total
        while m < s_cap:
            m += 1
            jbm = jb[m] if m < nb else 0.0
            jb_neg = -jbm if m % 2 == 1 else jbm
            d = (_j_alpha(ja, na, alpha_negative, r + 2 * m) * jbm
                 + _j_alpha(ja, na, alpha_negative, r - 2 * m) * jb_neg)
            prev = total
            total += d
            if fabs(d) < tol:
                tb = 2.0 * tail_b[m + 1 if m + 1 < nb else nb]
                ka = 2 * (m + 1) - abs_r
                if ka < 0:
                    ka = 0
                if ka > na:
                    ka = na
                ta = 2.0 * tail_a[ka]
                if tb < tol or ta < tol:
                    converged = True
                    break
    if r % 2 != 0:
        total = -total
        prev = -prev
    return total, m, prev, converged


def rk4_phase(double kappa, double n, double flux, long steps):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] phase_arr = np.empty(steps + 1)
    cdef double[::1] phase = phase_arr
    cdef double h = 2.0 * M_PI / steps
    cdef double cr = 1.0, ci = 0.0
    cdef double acc = 0.0, drift = 0.0, dev, mag
    cdef double w1, w2, w4
    cdef double k1r, k1i, k2r, k2i, k3r, k3i, k4r, k4i, yr, yi, nr, ni
    cdef double g, tau
    cdef long i
    phase[0] = 0.0
    with nogil:
        for i in range(steps):
            tau = i * h
            # rates are purely imaginary: k = -i w c  ->  (w ci, -w cr)
            g = n + flux * cos(tau)
            w1 = kappa * g * g
            g = n + flux * cos(tau + 0.5 * h)
            w2 = kappa * g * g
            g = n + flux * cos(tau + h)
            w4 = kappa * g * g
            k1r = w1 * ci
            k1i = -w1 * cr
            yr = cr + 0.5 * h * k1r
            yi = ci + 0.5 * h * k1i
            k2r = w2 * yi
            k2i = -w2 * yr
            yr = cr + 0.5 * h * k2r
            yi = ci + 0.5 * h * k2i
            k3r = w2 * yi
            k3i = -w2 * yr
            yr = cr + h * k3r
            yi = ci + h * k3i
            k4r = w4 * yi
            k4i = -w4 * yr
            nr = cr + (h / 6.0) * (k1r + 2.0 * k2r + 2.0 * k3r + k4r)
            ni = ci + (h / 6.0) * (k1i + 2.0 * k2i + 2.0 * k3i + k4i)
            # arg(c_new * conj(c_old))
            acc += atan2(ni * cr - nr * ci, nr * cr + ni * ci)
            cr = nr
            ci = ni
            phase[i + 1] = acc
            mag = (cr * cr + ci * ci) ** 0.5
            dev = fabs(mag - 1.0)
            if dev > drift:
                drift = dev
    return phase_arr, drift
