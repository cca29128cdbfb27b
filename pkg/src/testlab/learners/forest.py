"""Random forest regressor: bagged exact-split trees.

Each tree fits a bootstrap resample and considers ceil(d/3) random
features per split. The forest prediction is the arithmetic mean of the
tree predictions.
"""

import math

import numpy as np

from testlab.learners.tree import RegressionTree


class RandomForest:
    def __init__(self, n_estimators=150, max_depth=28, min_samples_split=2,
                 min_samples_leaf=1, seed=0):
        self.n_estimators = int(n_estimators)
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.min_samples_leaf = min_samples_leaf
        self.seed = seed
        self.trees_ = []

    def fit(self, X, y):
        X = np.ascontiguousarray(X, dtype=np.float64)
        y = np.ascontiguousarray(y, dtype=np.float64)
        n, d = X.shape
        max_features = math.ceil(d / 3)
        self.trees_ = []
        seeds = np.random.SeedSequence(self.seed).spawn(self.n_estimators)
        for ss in seeds:
            rng = np.random.default_rng(ss)
            sample = rng.integers(0, n, size=n)
            tree = RegressionTree(
                max_depth=self.max_depth,
                min_samples_split=self.min_samples_split,
                min_samples_leaf=self.min_samples_leaf,
                max_features=max_features,
                rng=rng,
            )
            tree.fit(X[sample], y[sample])
            self.trees_.append(tree)
        return self

    def predict(self, X):
        if not self.trees_:
            raise RuntimeError("forest is not fitted")
        preds = np.stack([t.predict(X) for t in self.trees_])
        return preds.mean(axis=0)

    def to_dict(self):
        return {
            "kind": "rfr",
            "n_estimators": self.n_estimators,
            "trees": [t.to_dict() for t in self.trees_],
        }

    @classmethod
    def from_dict(cls, d):
        forest = cls(n_estimators=d["n_estimators"])
        forest.trees_ = [RegressionTree.from_dict(t) for t in d["trees"]]
        return forest
