"""K-fold cross-validation and exhaustive grid search.

Folds come from one seeded shuffle split into `folds` contiguous chunks
(sizes differ by at most one). Candidates are scored by mean validation
RMSE; ties keep the earliest candidate in grid order.
"""

import itertools
import math

import numpy as np


class InvalidParams(ValueError):
    pass


def kfold_indices(n, folds, seed):
    """Disjoint, exhaustive (train, val) index pairs."""
    if folds < 2:
        raise ValueError("folds must be >= 2")
    if folds > n:
        raise ValueError("more folds than samples")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    chunks = np.array_split(perm, folds)
    pairs = []
    for i, val in enumerate(chunks):
        train = np.concatenate([c for j, c in enumerate(chunks) if j != i])
        pairs.append((train, val))
    return pairs


def grid_candidates(grid):
    """Cartesian product of a {param: [values]} grid, in declaration order."""
    keys = list(grid)
    for combo in itertools.product(*(grid[k] for k in keys)):
        yield dict(zip(keys, combo))


def grid_search_cv(fit_fn, grid, X, y, folds=5, seed=0, allowed=None):
    """Exhaustive grid search scored by mean CV RMSE.

    fit_fn(params, X, y) must return a fitted model with .predict.
    `allowed` optionally maps param name -> permitted values; candidates
    outside it raise InvalidParams.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    pairs = kfold_indices(len(y), folds, seed)
    table = []
    best = None
    best_score = math.inf
    for params in grid_candidates(grid):
        if allowed is not None:
            for key, value in params.items():
                if key in allowed and value not in allowed[key]:
                    raise InvalidParams(f"{key}={value!r} outside the allowed grid")
        rmses = []
        for train_idx, val_idx in pairs:
            model = fit_fn(params, X[train_idx], y[train_idx])
            pred = model.predict(X[val_idx])
            err = pred - y[val_idx]
            rmses.append(math.sqrt(float((err * err).mean())))
        mean_rmse = sum(rmses) / len(rmses)
        table.append({"params": dict(params), "cv_rmse": mean_rmse})
        if mean_rmse < best_score:
            best_score = mean_rmse
            best = dict(params)
    return best, table
