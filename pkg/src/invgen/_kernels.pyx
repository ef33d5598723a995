# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels; see ``_kernels_py`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()


def cycle_lengths(const int64_t[:, ::1] perms):
    cdef Py_ssize_t m = perms.shape[0], n = perms.shape[1]
    out_arr = np.zeros((m, n), dtype=np.int64)
    cdef int64_t[:, ::1] out = out_arr
    cdef unsigned char[::1] seen = np.zeros(n, dtype=np.uint8)
    cdef int64_t[::1] counts = np.zeros(n + 1, dtype=np.int64)
    cdef Py_ssize_t r, i, j, k, length, L, c
    for r in range(m):
        for i in range(n):
            seen[i] = 0
        for i in range(n + 1):
            counts[i] = 0
        for i in range(n):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = 1
                j = perms[r, j]
                length += 1
            counts[length] += 1
        k = 0
        for L in range(n, 0, -1):
            for c in range(counts[L]):
                out[r, k] = L
                k += 1
    return out_arr


cdef inline bint _is_subset(const uint64_t[:, ::1] a, Py_ssize_t i,
                            const uint64_t[:, ::1] b, Py_ssize_t j) nogil:
    cdef Py_ssize_t w
    for w in range(a.shape[1]):
        if a[i, w] & ~b[j, w]:
            return False
    return True


def subset_mask(const uint64_t[:, ::1] sets, const uint64_t[:, ::1] accepted):
    cdef Py_ssize_t i, j
    out_arr = np.zeros(sets.shape[0], dtype=bool)
    cdef cnp.npy_bool[::1] out = out_arr
    for i in range(sets.shape[0]):
        for j in range(accepted.shape[0]):
            if _is_subset(sets, i, accepted, j):
                out[i] = True
                break
    return out_arr


def thin_bitsets(const uint64_t[:, ::1] sets):
    cdef Py_ssize_t m = sets.shape[0], i, k, nkeep = 0
    keep_arr = np.zeros(m, dtype=np.int64)
    cdef int64_t[::1] keep = keep_arr
    cdef bint covered
    for i in range(m):
        covered = False
        for k in range(nkeep):
            if _is_subset(sets, i, sets, keep[k]):
                covered = True
                break
        if not covered:
            keep[nkeep] = i
            nkeep += 1
    return keep_arr[:nkeep].copy()
