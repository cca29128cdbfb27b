"""Weighted voting meta-regressor.

Keeps six weight positions (linear, svmr, dtr, hgbr, rfr, mlpr) for
compatibility with the published configuration; the first three are
required to be zero since those baselines carry no weight in the final
model. Prediction is the weighted mean of the base predictions.
"""

import numpy as np

POSITIONS = ("linear", "svmr", "dtr", "hgbr", "rfr", "mlpr")

DEFAULT_WEIGHTS = (0.0, 0.0, 0.0, 2.0 / 6.0, 3.0 / 6.0, 1.0 / 6.0)


class VotingEnsemble:
    def __init__(self, models, weights=DEFAULT_WEIGHTS):
        """`models` maps position name -> fitted model for non-zero weights."""
        weights = np.asarray(weights, dtype=np.float64)
        if weights.shape != (6,):
            raise ValueError("weights must have 6 positions")
        if (weights < 0).any():
            raise ValueError("weights must be non-negative")
        if weights[:3].any():
            raise ValueError("linear/svmr/dtr positions must carry zero weight")
        total = weights.sum()
        if total <= 0:
            raise ValueError("at least one positive weight required")
        self.weights = weights / total
        self.models = dict(models)
        for pos, w in zip(POSITIONS, self.weights):
            if w > 0 and pos not in self.models:
                raise ValueError(f"weight on {pos!r} but no model supplied")

    def predict(self, X):
        out = None
        for pos, w in zip(POSITIONS, self.weights):
            if w == 0:
                continue
            contrib = w * self.models[pos].predict(X)
            out = contrib if out is None else out + contrib
        return out

    def base_predictions(self, X):
        return {pos: self.models[pos].predict(X)
                for pos, w in zip(POSITIONS, self.weights) if w > 0}
