# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled band-coefficient kernels.

Bands stay small here (at most a few hundred coefficients), so plain
schoolbook loops beat anything clever; the point of compiling them is to
remove per-call interpreter overhead from the innermost arithmetic.
"""

import numpy as np


def convolve(double complex[::1] a, double complex[::1] b):
    """Full linear convolution of two coefficient arrays."""
    cdef Py_ssize_t na = a.shape[0]
    cdef Py_ssize_t nb = b.shape[0]
    if na == 0 or nb == 0:
        return np.zeros(0, dtype=np.complex128)
    out = np.zeros(na + nb - 1, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef Py_ssize_t i, j
    cdef double complex ai
    for i in range(na):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(nb):
            o[i + j] = o[i + j] + ai * b[j]
    return out


def inner_shifted(double complex[::1] a, double complex[::1] b, Py_ssize_t d):
    """Sum of a[i] * conj(b[i + d]) over the overlapping index range."""
    cdef Py_ssize_t i0 = 0
    if d < 0:
        i0 = -d
    cdef Py_ssize_t i1 = a.shape[0]
    if b.shape[0] - d < i1:
        i1 = b.shape[0] - d
    cdef double complex acc = 0
    cdef Py_ssize_t i
    for i in range(i0, i1):
        acc = acc + a[i] * b[i + d].conjugate()
    return complex(acc)
