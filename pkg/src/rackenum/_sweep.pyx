# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled orbit sweep; same contract as ``_sweep_py.orbit_minima``."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t

cnp.import_array()


def orbit_minima(radices, src, wlut, size):
    cdef int64_t[::1] rad = np.ascontiguousarray(radices, dtype=np.int64)
    cdef int64_t[:, ::1] s = np.ascontiguousarray(src, dtype=np.int64).reshape(-1, rad.shape[0])
    cdef int64_t[:, :, ::1] lut = np.ascontiguousarray(wlut, dtype=np.int64).reshape(
        s.shape[0], rad.shape[0], -1)
    cdef int64_t n = size
    cdef Py_ssize_t k = rad.shape[0]
    cdef Py_ssize_t nf = s.shape[0]
    out = np.ones(n, dtype=np.uint8)
    cdef uint8_t[::1] flags = out
    cdef int64_t[::1] digits = np.zeros(k, dtype=np.int64)
    cdef int64_t i, p
    cdef Py_ssize_t f, j
    for i in range(n):
        if flags[i]:
            for f in range(nf):
                p = 0
                for j in range(k):
                    p += lut[f, j, digits[s[f, j]]]
                if p > i:
                    flags[p] = 0
        j = k - 1
        while j >= 0:
            digits[j] += 1
            if digits[j] < rad[j]:
                break
            digits[j] = 0
            j -= 1
    return bytearray(out.tobytes())
