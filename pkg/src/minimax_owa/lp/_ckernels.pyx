# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled tableau kernels; same contract as ``_pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs

cnp.import_array()


def pivot(double[:, ::1] T, double[::1] cost, Py_ssize_t r, Py_ssize_t c):
    cdef Py_ssize_t m = T.shape[0]
    cdef Py_ssize_t w = T.shape[1]
    cdef Py_ssize_t i, j
    cdef double inv = 1.0 / T[r, c]
    cdef double f
    for j in range(w):
        T[r, j] *= inv
    T[r, c] = 1.0
    for i in range(m):
        if i == r:
            continue
        f = T[i, c]
        if f == 0.0:
            continue
        for j in range(w):
            T[i, j] -= f * T[r, j]
        T[i, c] = 0.0
    f = cost[c]
    if f != 0.0:
        for j in range(w):
            cost[j] -= f * T[r, j]
        cost[c] = 0.0


def ratio_test(double[:, ::1] T, Py_ssize_t c, cnp.int64_t[::1] basis, double tol,
               bint bland=True):
    cdef Py_ssize_t m = T.shape[0]
    cdef Py_ssize_t last = T.shape[1] - 1
    cdef Py_ssize_t i, best_row = -1
    cdef double ratio, best = 0.0, slack
    # first pass: minimum ratio
    for i in range(m):
        if T[i, c] > tol:
            ratio = T[i, last] / T[i, c]
            if best_row < 0 or ratio < best:
                best = ratio
                best_row = i
    if best_row < 0:
        return -1
    slack = best + 1e-12 * (fabs(best) if fabs(best) > 1.0 else 1.0)
    # second pass: among ties, smallest basic index (bland) or largest pivot
    best_row = -1
    for i in range(m):
        if T[i, c] > tol and T[i, last] / T[i, c] <= slack:
            if best_row < 0:
                best_row = i
            elif bland and basis[i] < basis[best_row]:
                best_row = i
            elif not bland and T[i, c] > T[best_row, c]:
                best_row = i
    return best_row


def entering_bland(double[::1] cost, cnp.uint8_t[::1] allowed, double tol):
    cdef Py_ssize_t j
    for j in range(cost.shape[0] - 1):
        if allowed[j] and cost[j] < -tol:
            return j
    return -1


def entering_dantzig(double[::1] cost, cnp.uint8_t[::1] allowed, double tol):
    cdef Py_ssize_t j, best = -1
    cdef double v = -tol
    for j in range(cost.shape[0] - 1):
        if allowed[j] and cost[j] < v:
            v = cost[j]
            best = j
    return best
