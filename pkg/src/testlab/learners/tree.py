"""Exact-split regression tree.

Split search runs over sorted unique thresholds (midpoints between
adjacent distinct values). Ties are broken deterministically: lowest
feature index, then lowest threshold. The per-column scan is the hot
loop and runs in the compiled kernel when available.
"""

import numpy as np

from testlab.kernels import split_scan


class DimensionMismatch(ValueError):
    pass


class RegressionTree:
    """CART-style regressor minimizing squared error.

    Parameters
    ----------
    max_depth : int or None
        Depth limit; the root sits at depth 0.
    min_samples_split : int
        Minimum rows required to attempt a split.
    min_samples_leaf : int
        Minimum rows on each side of a split.
    max_features : int or None
        Size of the random feature subset considered per split; None
        scans every feature.
    rng : numpy Generator, optional
        Only consumed when max_features is set.
    """

    def __init__(self, max_depth=None, min_samples_split=2, min_samples_leaf=1,
                 max_features=None, rng=None):
        self.max_depth = max_depth
        self.min_samples_split = max(2, int(min_samples_split))
        self.min_samples_leaf = max(1, int(min_samples_leaf))
        self.max_features = max_features
        self.rng = rng
        self.n_features_ = None

    def fit(self, X, y):
        X = np.ascontiguousarray(X, dtype=np.float64)
        y = np.ascontiguousarray(y, dtype=np.float64)
        if X.ndim != 2 or len(X) != len(y) or len(y) == 0:
            raise ValueError("X must be (n, d) with matching non-empty y")
        self.n_features_ = X.shape[1]
        self._feature = []
        self._threshold = []
        self._left = []
        self._right = []
        self._value = []
        self._build(X, y, np.arange(len(y), dtype=np.int64), depth=0)
        self.feature_ = np.asarray(self._feature, dtype=np.int64)
        self.threshold_ = np.asarray(self._threshold, dtype=np.float64)
        self.left_ = np.asarray(self._left, dtype=np.int64)
        self.right_ = np.asarray(self._right, dtype=np.int64)
        self.value_ = np.asarray(self._value, dtype=np.float64)
        del self._feature, self._threshold, self._left, self._right, self._value
        return self

    def _new_node(self):
        self._feature.append(-1)
        self._threshold.append(0.0)
        self._left.append(-1)
        self._right.append(-1)
        self._value.append(0.0)
        return len(self._feature) - 1

    def _build(self, X, y, rows, depth):
        node = self._new_node()
        y_node = y[rows]
        self._value[node] = float(y_node.sum() / len(rows))
        if (self.max_depth is not None and depth >= self.max_depth) or \
                len(rows) < self.min_samples_split or \
                y_node.min() == y_node.max():
            return node
        found = self._best_split(X, y_node, rows)
        if found is None:
            return node
        feat, thr = found
        mask = X[rows, feat] <= thr
        left_rows = rows[mask]
        right_rows = rows[~mask]
        self._feature[node] = feat
        self._threshold[node] = thr
        self._left[node] = self._build(X, y, left_rows, depth + 1)
        self._right[node] = self._build(X, y, right_rows, depth + 1)
        return node

    def _best_split(self, X, y_node, rows):
        n = len(rows)
        total = y_node.sum()
        parent_score = total * total / n
        if self.max_features is not None and self.max_features < self.n_features_:
            feats = np.sort(self.rng.choice(self.n_features_, size=self.max_features,
                                            replace=False))
        else:
            feats = range(self.n_features_)
        best = None
        best_score = parent_score
        for feat in feats:
            col = X[rows, int(feat)]
            order = np.argsort(col, kind="stable")
            pos, score = split_scan(np.ascontiguousarray(col[order]),
                                    np.ascontiguousarray(y_node[order]),
                                    self.min_samples_leaf)
            if pos < 0 or score <= best_score:
                continue
            sorted_col = col[order]
            thr = (sorted_col[pos - 1] + sorted_col[pos]) / 2.0
            if thr >= sorted_col[pos]:
                thr = float(sorted_col[pos - 1])
            best = (int(feat), float(thr))
            best_score = score
        return best

    def predict(self, X):
        X = np.ascontiguousarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != self.n_features_:
            raise DimensionMismatch(
                f"expected {self.n_features_} features, got {X.shape}"
            )
        out = np.empty(len(X), dtype=np.float64)
        node = np.zeros(len(X), dtype=np.int64)
        active = np.arange(len(X), dtype=np.int64)
        while active.size:
            nd = node[active]
            feats = self.feature_[nd]
            at_leaf = feats < 0
            if at_leaf.any():
                leaf_nodes = nd[at_leaf]
                out[active[at_leaf]] = self.value_[leaf_nodes]
            live = active[~at_leaf]
            if live.size == 0:
                break
            nd = node[live]
            go_left = X[live, self.feature_[nd]] <= self.threshold_[nd]
            node[live] = np.where(go_left, self.left_[nd], self.right_[nd])
            active = live
        return out

    @property
    def n_nodes(self):
        return len(self.feature_)

    def depth(self):
        depths = np.zeros(len(self.feature_), dtype=np.int64)
        for i in range(len(self.feature_)):
            for child in (self.left_[i], self.right_[i]):
                if child >= 0:
                    depths[child] = depths[i] + 1
        return int(depths.max()) if len(depths) else 0

    def to_dict(self):
        return {
            "feature": self.feature_.tolist(),
            "threshold": self.threshold_.tolist(),
            "left": self.left_.tolist(),
            "right": self.right_.tolist(),
            "value": self.value_.tolist(),
            "n_features": self.n_features_,
        }

    @classmethod
    def from_dict(cls, d):
        tree = cls()
        tree.feature_ = np.asarray(d["feature"], dtype=np.int64)
        tree.threshold_ = np.asarray(d["threshold"], dtype=np.float64)
        tree.left_ = np.asarray(d["left"], dtype=np.int64)
        tree.right_ = np.asarray(d["right"], dtype=np.int64)
        tree.value_ = np.asarray(d["value"], dtype=np.float64)
        tree.n_features_ = int(d["n_features"])
        return tree
