"""Pure-numpy fallback for the compiled kernels.

Kept operation-for-operation compatible with `_kernels.pyx`: np.cumsum
accumulates sequentially like the C loop, the score expression has the
same shape, and np.bincount adds weights in row order. The two backends
therefore produce bit-identical trees.
"""

import numpy as np


def split_scan(values, targets, min_leaf):
    """Best variance-reducing split of a sorted feature column.

    Returns (pos, score); pos == -1 when no valid split exists. Rows
    [0, pos) go left. Ties keep the lowest position.
    """
    n = values.shape[0]
    if n < 2 * min_leaf:
        return -1, -np.inf
    prefix = np.cumsum(targets)
    total = prefix[-1]
    i = np.arange(1, n)
    sl = prefix[:-1]
    sr = total - sl
    score = sl * sl / i + sr * sr / (n - i)
    valid = (i >= min_leaf) & ((n - i) >= min_leaf) & (values[:-1] != values[1:])
    if not valid.any():
        return -1, -np.inf
    score = np.where(valid, score, -np.inf)
    pos = int(np.argmax(score))
    return pos + 1, float(score[pos])


def hist_accumulate(binned, rows, grads, n_bins):
    """Per-feature histograms of counts and gradient sums over node rows."""
    d = binned.shape[1]
    sub = binned[rows]
    g = grads[rows]
    counts = np.empty((d, n_bins), dtype=np.int64)
    sums = np.empty((d, n_bins), dtype=np.float64)
    for j in range(d):
        col = sub[:, j]
        counts[j] = np.bincount(col, minlength=n_bins)
        sums[j] = np.bincount(col, weights=g, minlength=n_bins)
    return counts, sums
