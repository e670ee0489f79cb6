# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops. Semantics must match ``_kernels_py`` exactly."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()

ctypedef long long i64


def adjacent_equal_counts(const i64[:, ::1] seqs):
    """Per row, the number of positions j with seqs[j] == seqs[j + 1]."""
    cdef Py_ssize_t rows = seqs.shape[0], cols = seqs.shape[1]
    cdef Py_ssize_t r, j
    cdef i64 c
    out = np.zeros(rows, dtype=np.int64)
    cdef i64[::1] o = out
    for r in range(rows):
        c = 0
        for j in range(cols - 1):
            if seqs[r, j] == seqs[r, j + 1]:
                c += 1
        o[r] = c
    return out


def h2_batch(const i64[:, ::1] perms, const i64[::1] u, const i64[::1] v):
    """Sum over edges of squared position gaps, one value per permutation row."""
    cdef Py_ssize_t rows = perms.shape[0], m = u.shape[0]
    cdef Py_ssize_t r, e
    cdef i64 acc, d
    out = np.zeros(rows, dtype=np.int64)
    cdef i64[::1] o = out
    for r in range(rows):
        acc = 0
        for e in range(m):
            d = perms[r, u[e]] - perms[r, v[e]]
            acc += d * d
        o[r] = acc
    return out


def null_flip_histogram(int n, int k):
    """Histogram of equal-adjacent counts over all k**n label sequences.

    The first label is pinned to 0 and the counts multiplied by k; a cyclic
    relabelling maps each orbit of size k onto exactly one pinned sequence
    without changing which neighbours agree.
    """
    hist = np.zeros(max(n, 1), dtype=np.int64)
    cdef i64[::1] h = hist
    if n == 1:
        h[0] = k
        return hist
    cdef int[64] digits
    cdef int i, p, eq, old
    for i in range(n):
        digits[i] = 0
    eq = n - 1
    while True:
        h[eq] += 1
        # odometer increment on positions 1..n-1, keeping eq in sync
        p = n - 1
        while p >= 1:
            old = digits[p]
            if old + 1 < k:
                if digits[p - 1] == old:
                    eq -= 1
                if digits[p - 1] == old + 1:
                    eq += 1
                if p + 1 < n:
                    if digits[p + 1] == old:
                        eq -= 1
                    if digits[p + 1] == old + 1:
                        eq += 1
                digits[p] = old + 1
                break
            # wrap this digit to 0
            if digits[p - 1] == old:
                eq -= 1
            if digits[p - 1] == 0:
                eq += 1
            if p + 1 < n:
                if digits[p + 1] == old:
                    eq -= 1
                if digits[p + 1] == 0:
                    eq += 1
            digits[p] = 0
            p -= 1
        if p == 0:
            break
    for i in range(n):
        h[i] *= k
    return hist


def lloyd(const double[:, ::1] x, double[:, ::1] centers, int max_iter, double tol):
    """Lloyd iterations from the given centers (modified in place).

    Returns (labels, n_iter, objective history).
    """
    cdef Py_ssize_t n = x.shape[0], dim = x.shape[1], k = centers.shape[0]
    cdef Py_ssize_t i, j, f, best, far
    cdef double dist, bd, diff, shift, s, obj, fd
    labels_arr = np.zeros(n, dtype=np.int64)
    cdef i64[::1] labels = labels_arr
    cdef double[::1] mind = np.zeros(n, dtype=np.float64)
    cdef i64[::1] counts = np.zeros(k, dtype=np.int64)
    cdef double[:, ::1] sums = np.zeros((k, dim), dtype=np.float64)
    history = []
    cdef int it = 0
    while it < max_iter:
        it += 1
        for j in range(k):
            counts[j] = 0
        for i in range(n):
            best = 0
            bd = 0.0
            for f in range(dim):
                diff = x[i, f] - centers[0, f]
                bd += diff * diff
            for j in range(1, k):
                dist = 0.0
                for f in range(dim):
                    diff = x[i, f] - centers[j, f]
                    dist += diff * diff
                if dist < bd:
                    bd = dist
                    best = j
            labels[i] = best
            mind[i] = bd
            counts[best] += 1
        for j in range(k):
            if counts[j] == 0:
                far = -1
                fd = -1.0
                for i in range(n):
                    if counts[labels[i]] > 1 and mind[i] > fd:
                        fd = mind[i]
                        far = i
                if far < 0:
                    raise RuntimeError("cannot reseed an empty cluster")
                counts[labels[far]] -= 1
                labels[far] = j
                counts[j] = 1
                mind[far] = 0.0
        for j in range(k):
            for f in range(dim):
                sums[j, f] = 0.0
        for i in range(n):
            for f in range(dim):
                sums[labels[i], f] += x[i, f]
        shift = 0.0
        for j in range(k):
            s = 0.0
            for f in range(dim):
                diff = sums[j, f] / counts[j]
                s += (diff - centers[j, f]) * (diff - centers[j, f])
                centers[j, f] = diff
            s = sqrt(s)
            if s > shift:
                shift = s
        obj = 0.0
        for i in range(n):
            j = labels[i]
            for f in range(dim):
                diff = x[i, f] - centers[j, f]
                obj += diff * diff
        history.append(obj)
        if shift <= tol:
            break
    return labels_arr, it, history
