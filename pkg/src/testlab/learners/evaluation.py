"""Regression evaluation metrics: MAE, MSE, RMSE, MdAE, R2."""

import math

import numpy as np


class ConstantTarget(ValueError):
    pass


def evaluate(preds, targets):
    """Standard error metrics; R2 is NaN (flagged) for constant targets."""
    p = np.asarray(preds, dtype=np.float64)
    t = np.asarray(targets, dtype=np.float64)
    if p.shape != t.shape or p.ndim != 1:
        raise ValueError("predictions and targets must be equal-length vectors")
    if len(p) < 2:
        raise ValueError("need at least 2 samples")
    err = p - t
    abs_err = np.abs(err)
    mse = float((err * err).mean())
    ss_res = float((err * err).sum())
    centered = t - t.mean()
    ss_tot = float((centered * centered).sum())
    if ss_tot == 0.0:
        r2 = math.nan
        defined = False
    else:
        r2 = 1.0 - ss_res / ss_tot
        defined = True
    return {
        "MAE": float(abs_err.mean()),
        "MSE": mse,
        "RMSE": math.sqrt(mse),
        "MdAE": float(np.median(abs_err)),
        "R2": r2,
        "r2_defined": defined,
    }
