# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled scoring kernels; mirrors _kernels_py exactly."""

from cpython cimport array
import array


def lcs_len_ids(a_ids, b_ids):
    """Longest common subsequence length over token-id sequences."""
    if not a_ids or not b_ids:
        return 0
    if len(b_ids) > len(a_ids):
        a_ids, b_ids = b_ids, a_ids
    cdef array.array a_arr = array.array("i", a_ids)
    cdef array.array b_arr = array.array("i", b_ids)
    cdef int[::1] a = a_arr
    cdef int[::1] b = b_arr
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t n = b.shape[0]
    cdef array.array row_arr = array.array("i", bytes(4 * (n + 1)))
    cdef int[::1] row = row_arr
    cdef Py_ssize_t i, j
    cdef int prev, cur, x
    for i in range(m):
        x = a[i]
        prev = 0
        for j in range(1, n + 1):
            cur = row[j]
            if x == b[j - 1]:
                row[j] = prev + 1
            elif row[j - 1] > row[j]:
                row[j] = row[j - 1]
            prev = cur
    return row[n]
