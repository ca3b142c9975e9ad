# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel core: scalar C loops for the Sturm counts and the
first-order radial integrator.  Mirrors _ref.py exactly; the selector in
kernels/__init__.py falls back to the numpy versions when this extension
failed to build."""

from libc.math cimport exp, fabs, hypot, isnan, sqrt

import numpy as np

cimport numpy as cnp

cnp.import_array()

cdef double _SAFMIN = 2.2250738585072014e-308


def tridiag_count(double[::1] d, double[::1] e, double[::1] shifts):
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t nt = shifts.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.zeros(nt, dtype=np.int64)
    cdef long long[::1] count = out
    cdef double pivmin = 1.0, q, t, ee
    cdef Py_ssize_t i, k
    for i in range(n - 1):
        ee = e[i] * e[i]
        if ee > pivmin:
            pivmin = ee
    pivmin *= _SAFMIN
    for k in range(nt):
        t = shifts[k]
        q = d[0] - t
        if q < 0:
            count[k] += 1
        for i in range(1, n):
            if fabs(q) < pivmin:
                q = -pivmin
            q = (d[i] - t) - (e[i - 1] * e[i - 1]) / q
            if isnan(q):
                q = -pivmin
            if q < 0:
                count[k] += 1
    return out


def product_count_upper(double[::1] alpha, double[::1] beta, double[::1] shifts):
    cdef Py_ssize_t m = alpha.shape[0]
    cdef Py_ssize_t nt = shifts.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.zeros(nt, dtype=np.int64)
    cdef long long[::1] count = out
    cdef double pivmin = 1.0, s, u, t, bb
    cdef Py_ssize_t i, k
    for i in range(m):
        bb = beta[i] * beta[i]
        if bb > pivmin:
            pivmin = bb
    pivmin *= _SAFMIN
    for k in range(nt):
        t = shifts[k]
        s = -t
        for i in range(m):
            u = alpha[i] * alpha[i] + s
            if u < 0:
                count[k] += 1
            if fabs(u) < pivmin:
                u = -pivmin
            s = -t + s * (beta[i] * beta[i] / u)
            if isnan(s):
                s = -t
        if s < 0:
            count[k] += 1
    return out


def product_count_lower(double[::1] alpha, double[::1] beta, double[::1] shifts):
    cdef Py_ssize_t m = alpha.shape[0]
    cdef Py_ssize_t nt = shifts.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.zeros(nt, dtype=np.int64)
    cdef long long[::1] count = out
    cdef double pivmin = 1.0, s, u, t, aa
    cdef Py_ssize_t i, k
    for i in range(m):
        aa = alpha[i] * alpha[i]
        if aa > pivmin:
            pivmin = aa
    pivmin *= _SAFMIN
    for k in range(nt):
        t = shifts[k]
        s = alpha[0] * alpha[0] - t
        for i in range(m):
            u = beta[i] * beta[i] + s
            if u < 0:
                count[k] += 1
            if i < m - 1:
                if fabs(u) < pivmin:
                    u = -pivmin
                s = -t + alpha[i + 1] * alpha[i + 1] * (s / u)
                if isnan(s):
                    s = -t
    return out


cdef inline void _rhs(double s, double y0, double y1, double j, double coupling,
                      double eps, double* f0, double* f1) noexcept nogil:
    cdef double r = exp(s)
    f0[0] = r * (-(j / r) * y0 - (1.0 - coupling / r - eps) * y1)
    f1[0] = r * ((j / r) * y1 - (1.0 + coupling / r + eps) * y0)


def dirac_mismatch(double eps, double coupling, double j, double s_min,
                   double s_max, Py_ssize_t n_steps, Py_ssize_t i_match):
    cdef double nu = sqrt(j * j - coupling * coupling)
    cdef double omega = sqrt(1.0 - eps * eps)
    cdef double h = (s_max - s_min) / (n_steps - 1)
    cdef double y0, y1, norm, s, m
    cdef double a0, a1, b0, b1, c0, c1, d0, d1
    cdef double g_out, h_out, g_in, h_in
    cdef Py_ssize_t k

    y0 = coupling
    y1 = j + nu
    norm = hypot(y0, y1)
    y0 /= norm
    y1 /= norm
    s = s_min
    for k in range(i_match):
        _rhs(s, y0, y1, j, coupling, eps, &a0, &a1)
        _rhs(s + h / 2, y0 + h / 2 * a0, y1 + h / 2 * a1, j, coupling, eps, &b0, &b1)
        _rhs(s + h / 2, y0 + h / 2 * b0, y1 + h / 2 * b1, j, coupling, eps, &c0, &c1)
        _rhs(s + h, y0 + h * c0, y1 + h * c1, j, coupling, eps, &d0, &d1)
        y0 += h / 6 * (a0 + 2 * b0 + 2 * c0 + d0)
        y1 += h / 6 * (a1 + 2 * b1 + 2 * c1 + d1)
        m = fabs(y0) + fabs(y1)
        if m > 1e100:
            y0 /= m
            y1 /= m
        s = s_min + (k + 1) * h
    norm = hypot(y0, y1)
    g_out = y0 / norm
    h_out = y1 / norm

    y0 = omega
    y1 = 1.0 + eps
    norm = hypot(y0, y1)
    y0 /= norm
    y1 /= norm
    s = s_max
    for k in range(n_steps - 1 - i_match):
        _rhs(s, y0, y1, j, coupling, eps, &a0, &a1)
        _rhs(s - h / 2, y0 - h / 2 * a0, y1 - h / 2 * a1, j, coupling, eps, &b0, &b1)
        _rhs(s - h / 2, y0 - h / 2 * b0, y1 - h / 2 * b1, j, coupling, eps, &c0, &c1)
        _rhs(s - h, y0 - h * c0, y1 - h * c1, j, coupling, eps, &d0, &d1)
        y0 -= h / 6 * (a0 + 2 * b0 + 2 * c0 + d0)
        y1 -= h / 6 * (a1 + 2 * b1 + 2 * c1 + d1)
        m = fabs(y0) + fabs(y1)
        if m > 1e100:
            y0 /= m
            y1 /= m
        s = s_max - (k + 1) * h
    norm = hypot(y0, y1)
    g_in = y0 / norm
    h_in = y1 / norm

    return g_out * h_in - h_out * g_in
