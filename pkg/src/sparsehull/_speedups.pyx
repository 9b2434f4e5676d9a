# cython: language_level=3
"""Compiled inner loops for the greedy solver.

Mirrors sparsehull._kernels_py function for function; see there for the
semantics. Summations run in index order, argmin keeps the first minimum.
"""

import numpy as np

from libc.math cimport fabs, pow


cdef double _max_abs(const double* u, Py_ssize_t d) noexcept nogil:
    cdef Py_ssize_t i
    cdef double m = 0.0, w
    for i in range(d):
        w = fabs(u[i])
        if w > m:
            m = w
    return m


cdef double _vec_norm(const double* u, Py_ssize_t d, double p) noexcept nogil:
    cdef Py_ssize_t i
    cdef double m = _max_abs(u, d), s = 0.0
    if m == 0.0:
        return 0.0
    for i in range(d):
        s += pow(fabs(u[i]) / m, p)
    return m * pow(s, 1.0 / p)


cdef bint _norming(const double* u, double* out, Py_ssize_t d, double p) noexcept nogil:
    # Fills out with the unit-dual-norm functional; returns 0 when u == 0.
    cdef Py_ssize_t i
    cdef double m = _max_abs(u, d), s = 0.0, denom, w
    if m == 0.0:
        return 0
    for i in range(d):
        s += pow(fabs(u[i]) / m, p)
    denom = pow(s, (p - 1.0) / p)
    for i in range(d):
        w = pow(fabs(u[i]) / m, p - 1.0) / denom
        if u[i] > 0.0:
            out[i] = w
        elif u[i] < 0.0:
            out[i] = -w
        else:
            out[i] = 0.0
    return 1


cdef Py_ssize_t _argmin_pairing(const double[:, ::1] points, const double* ustar,
                                double* value) noexcept nogil:
    cdef Py_ssize_t n = points.shape[0], d = points.shape[1], i, j, best_i = 0
    cdef double v, best = 0.0
    for i in range(n):
        v = 0.0
        for j in range(d):
            v += ustar[j] * points[i, j]
        if i == 0 or v < best:
            best = v
            best_i = i
    value[0] = best
    return best_i


def vector_norm(u, double p):
    cdef const double[::1] uv = np.ascontiguousarray(u, dtype=np.float64)
    return _vec_norm(&uv[0], uv.shape[0], p)


def norming_direction(u, double p):
    cdef const double[::1] uv = np.ascontiguousarray(u, dtype=np.float64)
    out = np.empty(uv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    if not _norming(&uv[0], &ov[0], uv.shape[0], p):
        out[:] = 0.0
    return out


def min_pairing(points, ustar):
    cdef const double[:, ::1] pv = np.ascontiguousarray(points, dtype=np.float64)
    cdef const double[::1] uv = np.ascontiguousarray(ustar, dtype=np.float64)
    cdef double value = 0.0
    cdef Py_ssize_t idx = _argmin_pairing(pv, &uv[0], &value)
    return idx, value


def greedy_iterate_into(points, double p, Py_ssize_t K, double tol,
                        chosen, usums, unorms):
    cdef const double[:, ::1] pv = np.ascontiguousarray(points, dtype=np.float64)
    cdef long long[::1] cv = chosen
    cdef double[:, ::1] sv = usums
    cdef double[::1] nv = unorms
    cdef Py_ssize_t n = pv.shape[0], d = pv.shape[1], k, j, idx
    cdef double val
    u_arr = np.zeros(d, dtype=np.float64)
    ustar_arr = np.empty(d, dtype=np.float64)
    cdef double[::1] u = u_arr
    cdef double[::1] ustar = ustar_arr
    with nogil:
        for k in range(K):
            if _norming(&u[0], &ustar[0], d, p):
                idx = _argmin_pairing(pv, &ustar[0], &val)
                if val > tol:
                    with gil:
                        return 1, k, idx, val
            else:
                idx = 0
                val = 0.0
            for j in range(d):
                u[j] += pv[idx, j]
            cv[k] = idx
            for j in range(d):
                sv[k, j] = u[j]
            nv[k] = _vec_norm(&u[0], d, p)
    return 0, K, -1, 0.0
