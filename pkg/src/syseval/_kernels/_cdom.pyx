# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled dominance kernels over larger-is-better key matrices.

Mirrors ``_pydom`` exactly: same signatures, same integer outputs.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


def dominance_matrix(keys):
    """Strict-dominance matrix: ``out[i, j] == 1`` iff row i dominates row j."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] k = np.ascontiguousarray(keys, dtype=np.float64)
    cdef Py_ssize_t n = k.shape[0]
    cdef Py_ssize_t d = k.shape[1]
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] out = np.zeros((n, n), dtype=np.uint8)
    cdef Py_ssize_t i, j, c
    cdef bint ge, gt
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            ge = True
            gt = False
            for c in range(d):
                if k[i, c] < k[j, c]:
                    ge = False
                    break
                if k[i, c] > k[j, c]:
                    gt = True
            if ge and gt:
                out[i, j] = 1
    return out


def nondominated_mask(keys):
    """Mask of rows not strictly dominated by any other row."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] k = np.ascontiguousarray(keys, dtype=np.float64)
    cdef Py_ssize_t n = k.shape[0]
    cdef Py_ssize_t d = k.shape[1]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] mask = np.ones(n, dtype=np.uint8)
    cdef Py_ssize_t i, j, c
    cdef bint ge, gt
    for j in range(n):
        for i in range(n):
            if i == j:
                continue
            ge = True
            gt = False
            for c in range(d):
                if k[i, c] < k[j, c]:
                    ge = False
                    break
                if k[i, c] > k[j, c]:
                    gt = True
            if ge and gt:
                mask[j] = 0
                break
    return mask


def peel_layers(keys):
    """1-based nondominated-sorting layer index per row (NSGA-II peeling)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] k = np.ascontiguousarray(keys, dtype=np.float64)
    cdef Py_ssize_t n = k.shape[0]
    cdef Py_ssize_t d = k.shape[1]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] counts = np.zeros(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] dominated = np.empty((n, n), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ndom = np.zeros(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] layers = np.zeros(n, dtype=np.int32)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] front = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] nxt = np.empty(n, dtype=np.int64)
    cdef Py_ssize_t i, j, c, m, t, p, q
    cdef bint ge, gt
    for i in range(n):
        for j in range(i + 1, n):
            ge = True
            gt = False
            for c in range(d):
                if k[i, c] < k[j, c]:
                    ge = False
                    break
                if k[i, c] > k[j, c]:
                    gt = True
            if ge and gt:
                dominated[i, ndom[i]] = j
                ndom[i] += 1
                counts[j] += 1
                continue
            ge = True
            gt = False
            for c in range(d):
                if k[j, c] < k[i, c]:
                    ge = False
                    break
                if k[j, c] > k[i, c]:
                    gt = True
            if ge and gt:
                dominated[j, ndom[j]] = i
                ndom[j] += 1
                counts[i] += 1
    m = 0
    for i in range(n):
        if counts[i] == 0:
            front[m] = i
            m += 1
    c = 1
    while m > 0:
        t = 0
        for p in range(m):
            i = front[p]
            layers[i] = <cnp.int32_t> c
            for q in range(ndom[i]):
                j = dominated[i, q]
                counts[j] -= 1
                if counts[j] == 0:
                    nxt[t] = j
                    t += 1
        front, nxt = nxt, front
        m = t
        c += 1
    return layers
