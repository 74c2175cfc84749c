# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: cdivision=True
"""Compiled dense-vector kernels (hot path of the solver loop)."""

from libc.math cimport fabs, sqrt

BACKEND = "cython"


def dot(const double[::1] a, const double[::1] b):
    cdef Py_ssize_t i, n = a.shape[0]
    cdef double acc = 0.0
    for i in range(n):
        acc += a[i] * b[i]
    return acc


def norm2(const double[::1] a):
    cdef Py_ssize_t i, n = a.shape[0]
    cdef double acc = 0.0
    for i in range(n):
        acc += a[i] * a[i]
    return sqrt(acc)


def norm_inf(const double[::1] a):
    cdef Py_ssize_t i, n = a.shape[0]
    cdef double best = 0.0, v
    for i in range(n):
        v = fabs(a[i])
        if v > best:
            best = v
    return best


def axpy(double alpha, const double[::1] x, const double[::1] y, double[::1] out):
    cdef Py_ssize_t i, n = x.shape[0]
    for i in range(n):
        out[i] = y[i] + alpha * x[i]


def combine(double ca, const double[::1] a, double cb, const double[::1] b, double[::1] out):
    cdef Py_ssize_t i, n = a.shape[0]
    for i in range(n):
        out[i] = ca * a[i] + cb * b[i]


def all_finite(const double[::1] a):
    cdef Py_ssize_t i, n = a.shape[0]
    cdef double v
    for i in range(n):
        v = a[i]
        # v - v is 0.0 for finite v, NaN for NaN and +/-Inf
        if v - v != 0.0:
            return False
    return True
