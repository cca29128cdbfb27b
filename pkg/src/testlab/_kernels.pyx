# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels for tree growing.

Both kernels are written so their floating-point evaluation order matches
the numpy fallback in `_kernels_fallback` exactly: prefix sums accumulate
left-to-right, the split score is evaluated as (sl*sl/nl) + (sr*sr/nr),
and histogram bins accumulate in row order. Tests assert bit-identical
results across backends.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def split_scan(double[::1] values, double[::1] targets, Py_ssize_t min_leaf):
    """Find the best variance-reducing split of a sorted feature column.

    values must be sorted ascending with targets aligned. Returns
    (pos, score): the split puts rows [0, pos) left and [pos, n) right,
    score = sl^2/nl + sr^2/nr. pos == -1 means no valid split. Ties keep
    the lowest position.
    """
    cdef Py_ssize_t n = values.shape[0]
    cdef Py_ssize_t i
    cdef Py_ssize_t best_pos = -1
    cdef double best_score = -np.inf
    cdef double s = 0.0
    cdef double total = 0.0
    cdef double sl, sr, score

    if n < 2 * min_leaf:
        return -1, -np.inf
    for i in range(n):
        total = total + targets[i]
    for i in range(1, n):
        s = s + targets[i - 1]
        if i < min_leaf or n - i < min_leaf:
            continue
        if values[i - 1] == values[i]:
            continue
        sl = s
        sr = total - sl
        score = sl * sl / (<double> i) + sr * sr / (<double> (n - i))
        if score > best_score:
            best_score = score
            best_pos = i
    return best_pos, best_score


def hist_accumulate(cnp.uint8_t[:, ::1] binned, cnp.int64_t[::1] rows,
                    double[::1] grads, Py_ssize_t n_bins):
    """Accumulate per-feature histograms of counts and gradient sums.

    binned is the full (n, d) uint8 bin matrix; rows selects the node's
    samples. Accumulation follows row order per feature, matching
    np.bincount in the fallback.
    """
    cdef Py_ssize_t d = binned.shape[1]
    cdef Py_ssize_t m = rows.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=2] counts = np.zeros((d, n_bins), dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] sums = np.zeros((d, n_bins), dtype=np.float64)
    cdef cnp.int64_t[:, ::1] cview = counts
    cdef double[:, ::1] sview = sums
    cdef Py_ssize_t k, j, r, b

    for j in range(d):
        for k in range(m):
            r = rows[k]
            b = binned[r, j]
            cview[j, b] += 1
            sview[j, b] = sview[j, b] + grads[r]
    return counts, sums
