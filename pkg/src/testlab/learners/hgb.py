"""Histogram-based gradient boosting regressor.

Features are discretized into at most 256 quantile bins once before
boosting; each iteration fits a depth-limited tree to the residuals by
scanning per-bin gradient histograms instead of sorted values. Leaf
values are the mean residual (a Newton step for squared loss without
regularization) and enter the prediction scaled by the learning rate.
"""

import numpy as np

from testlab.kernels import hist_accumulate
from testlab.learners.tree import DimensionMismatch


class _HistTree:
    __slots__ = ("feature", "threshold", "left", "right", "value", "bin_thr")

    def __init__(self):
        self.feature = []
        self.threshold = []
        self.left = []
        self.right = []
        self.value = []
        self.bin_thr = []

    def new_node(self):
        self.feature.append(-1)
        self.threshold.append(0.0)
        self.bin_thr.append(-1)
        self.left.append(-1)
        self.right.append(-1)
        self.value.append(0.0)
        return len(self.feature) - 1

    def freeze(self):
        return {
            "feature": list(self.feature),
            "threshold": list(self.threshold),
            "left": list(self.left),
            "right": list(self.right),
            "value": list(self.value),
        }


class HistGradientBoosting:
    def __init__(self, max_iter=500, max_depth=18, min_samples_leaf=15,
                 learning_rate=0.1, max_bins=256):
        self.max_iter = int(max_iter)
        self.max_depth = max_depth
        self.min_samples_leaf = max(1, int(min_samples_leaf))
        self.learning_rate = float(learning_rate)
        self.max_bins = int(max_bins)
        self.trees_ = []
        self.bin_edges_ = None
        self.init_ = 0.0
        self.train_losses_ = []

    # ---- binning ---------------------------------------------------------

    def _fit_bins(self, X):
        edges = []
        qs = np.arange(1, self.max_bins) / self.max_bins
        for j in range(X.shape[1]):
            col_edges = np.unique(np.quantile(X[:, j], qs))
            edges.append(col_edges.astype(np.float64))
        self.bin_edges_ = edges

    def _bin(self, X):
        n, d = X.shape
        binned = np.empty((n, d), dtype=np.uint8)
        for j in range(d):
            binned[:, j] = np.searchsorted(self.bin_edges_[j], X[:, j],
                                           side="left").astype(np.uint8)
        return binned

    # ---- fitting ---------------------------------------------------------

    def fit(self, X, y):
        X = np.ascontiguousarray(X, dtype=np.float64)
        y = np.ascontiguousarray(y, dtype=np.float64)
        n, d = X.shape
        self._fit_bins(X)
        binned = self._bin(X)
        n_bins = self.max_bins
        self.init_ = float(y.mean())
        pred = np.full(n, self.init_)
        self.trees_ = []
        self.train_losses_ = []
        for _it in range(self.max_iter):
            residual = y - pred
            tree = _HistTree()
            leaf_updates = []
            self._grow(tree, binned, residual, np.arange(n, dtype=np.int64),
                       depth=0, n_bins=n_bins, leaf_updates=leaf_updates)
            for rows, value in leaf_updates:
                pred[rows] += self.learning_rate * value
            self.trees_.append(tree.freeze())
            err = y - pred
            self.train_losses_.append(float((err * err).sum() / n))
        return self

    def _grow(self, tree, binned, residual, rows, depth, n_bins, leaf_updates):
        node = tree.new_node()
        r = residual[rows]
        value = float(r.sum() / len(rows))
        tree.value[node] = value
        stop = (
            (self.max_depth is not None and depth >= self.max_depth)
            or len(rows) < 2 * self.min_samples_leaf
            or r.min() == r.max()
        )
        if not stop:
            found = self._best_split(binned, residual, rows, n_bins)
        else:
            found = None
        if found is None:
            leaf_updates.append((rows, value))
            return node
        feat, b = found
        mask = binned[rows, feat] <= b
        left_rows = rows[mask]
        right_rows = rows[~mask]
        tree.feature[node] = feat
        tree.bin_thr[node] = b
        tree.threshold[node] = float(self.bin_edges_[feat][b])
        tree.left[node] = self._grow(tree, binned, residual, left_rows,
                                     depth + 1, n_bins, leaf_updates)
        tree.right[node] = self._grow(tree, binned, residual, right_rows,
                                      depth + 1, n_bins, leaf_updates)
        return node

    def _best_split(self, binned, residual, rows, n_bins):
        counts, sums = hist_accumulate(binned, rows, residual, n_bins)
        n = len(rows)
        total = sums.sum(axis=1)  # per feature; equal across features
        ccum = counts.cumsum(axis=1)
        scum = sums.cumsum(axis=1)
        grand = float(residual[rows].sum())
        parent_score = grand * grand / n
        best = None
        best_score = parent_score
        d = counts.shape[0]
        min_leaf = self.min_samples_leaf
        for feat in range(d):
            nl = ccum[feat, :-1]
            sl = scum[feat, :-1]
            nr = n - nl
            valid = (nl >= min_leaf) & (nr >= min_leaf)
            if not valid.any():
                continue
            with np.errstate(divide="ignore", invalid="ignore"):
                sr = total[feat] - sl
                score = np.where(valid, sl * sl / nl + sr * sr / nr, -np.inf)
            b = int(np.argmax(score))
            if score[b] > best_score:
                best_score = float(score[b])
                best = (feat, b)
        return best

    # ---- prediction ------------------------------------------------------

    def predict(self, X):
        X = np.ascontiguousarray(X, dtype=np.float64)
        if self.bin_edges_ is not None and X.shape[1] != len(self.bin_edges_):
            raise DimensionMismatch(
                f"expected {len(self.bin_edges_)} features, got {X.shape}"
            )
        out = np.full(len(X), self.init_)
        for tree in self.trees_:
            out += self.learning_rate * _predict_tree(tree, X)
        return out

    def to_dict(self):
        return {
            "kind": "hgbr",
            "init": self.init_,
            "learning_rate": self.learning_rate,
            "trees": self.trees_,
        }

    @classmethod
    def from_dict(cls, d):
        model = cls(learning_rate=d["learning_rate"])
        model.init_ = float(d["init"])
        model.trees_ = d["trees"]
        model.bin_edges_ = None
        return model


def _predict_tree(tree, X):
    feature = np.asarray(tree["feature"], dtype=np.int64)
    threshold = np.asarray(tree["threshold"], dtype=np.float64)
    left = np.asarray(tree["left"], dtype=np.int64)
    right = np.asarray(tree["right"], dtype=np.int64)
    value = np.asarray(tree["value"], dtype=np.float64)
    out = np.empty(len(X), dtype=np.float64)
    node = np.zeros(len(X), dtype=np.int64)
    active = np.arange(len(X), dtype=np.int64)
    while active.size:
        nd = node[active]
        at_leaf = feature[nd] < 0
        if at_leaf.any():
            out[active[at_leaf]] = value[nd[at_leaf]]
        live = active[~at_leaf]
        if live.size == 0:
            break
        nd = node[live]
        go_left = X[live, feature[nd]] <= threshold[nd]
        node[live] = np.where(go_left, left[nd], right[nd])
        active = live
    return out
