"""Local outlier factor.

Standard LOF: k-distance with ties included, reachability distance,
local reachability density, density ratio. lrd is computed as
count / sum(reachability); a point whose reachability sum is zero (it
sits on a stack of more than k duplicates) has infinite density and gets
LOF 1 by convention, so fully duplicated datasets score 1 everywhere.

The arithmetic is arranged so an O(n^2) per-pair oracle following the
same expressions reproduces the scores bit for bit.
"""

import numpy as np


class DegenerateGeometry(Exception):
    """Only raised on request; duplicate stacks default to LOF = 1."""


def pairwise_distances(points):
    """Euclidean distance matrix via explicit differences."""
    x = np.asarray(points, dtype=np.float64)
    diff = x[:, None, :] - x[None, :, :]
    return np.sqrt((diff * diff).sum(axis=2))


def lof_scores(points, k):
    """LOF score per row of `points` with `k` neighbors."""
    x = np.asarray(points, dtype=np.float64)
    n = x.shape[0]
    if not 1 <= k < n:
        raise ValueError(f"k must satisfy 1 <= k < n (k={k}, n={n})")
    dist = pairwise_distances(x)
    np.fill_diagonal(dist, np.inf)

    kdist = np.empty(n)
    neighbors = []
    for i in range(n):
        row = dist[i]
        order = np.sort(row)
        kdist[i] = order[k - 1]
        mask = row <= kdist[i]
        neighbors.append(np.flatnonzero(mask))

    lrd = np.empty(n)
    for i in range(n):
        nb = neighbors[i]
        reach = np.maximum(kdist[nb], dist[i, nb])
        total = reach.sum()
        if total == 0.0:
            lrd[i] = np.inf
        else:
            lrd[i] = len(nb) / total

    scores = np.empty(n)
    for i in range(n):
        if np.isinf(lrd[i]):
            scores[i] = 1.0
            continue
        nb = neighbors[i]
        scores[i] = (lrd[nb].sum() / len(nb)) / lrd[i]
    return scores
