"""Permutation feature importance and correlation reporting.

Importance of a feature is the drop in R2 when that feature's column is
shuffled within the evaluation set, everything else untouched. The
baseline R2 is computed exactly once and shared by every repeat. Ranking
ties break alphabetically.
"""

from dataclasses import dataclass

import numpy as np

from testlab.io_utils import write_csv
from testlab.learners.evaluation import evaluate
from testlab.stats import ConstantInput, pearson


@dataclass
class ImportanceResult:
    feature_names: list
    samples: np.ndarray      # (d, repeats) R2 drops
    baseline_r2: float

    def mean_drops(self):
        return self.samples.mean(axis=1)

    def ranking(self, top=None):
        """Features ordered by mean drop (desc), name (asc)."""
        means = self.mean_drops()
        order = sorted(range(len(self.feature_names)),
                       key=lambda j: (-means[j], self.feature_names[j]))
        if top is not None:
            order = order[:top]
        return [(self.feature_names[j], float(means[j])) for j in order]


def permutation_importance(model, dataset, repeats=100, seed=0):
    """R2 drop distribution per feature over seeded shuffles."""
    X = dataset.feature_matrix
    y = dataset.targets
    baseline = evaluate(model.predict(X), y)["R2"]
    rng = np.random.default_rng(seed)
    n, d = X.shape
    samples = np.empty((d, repeats))
    for j in range(d):
        original = X[:, j].copy()
        Xp = X.copy()
        for r in range(repeats):
            perm = rng.permutation(n)
            Xp[:, j] = original[perm]
            shuffled_r2 = evaluate(model.predict(Xp), y)["R2"]
            samples[j, r] = baseline - shuffled_r2
    return ImportanceResult(list(dataset.feature_names), samples, baseline)


def feature_correlations(dataset, feature_names):
    """Pearson r and p against the target for the given features."""
    out = []
    for name in feature_names:
        x = dataset.column(name)
        try:
            r, p = pearson(x, dataset.targets)
            out.append((name, r, p))
        except ConstantInput:
            out.append((name, None, None))
    return out


def _minmax(values):
    lo, hi = values.min(), values.max()
    if hi == lo:
        return np.zeros_like(values)
    return (values - lo) / (hi - lo)


def importance_report(result, dataset, out_dir, top=15, make_plots=True):
    """Write importance/correlation CSVs and box/scatter plots.

    Returns the ranked (feature, mean drop) list actually reported.
    """
    import os

    os.makedirs(out_dir, exist_ok=True)
    ranked = result.ranking(top=top) if result.feature_names else []
    name_to_idx = {n: j for j, n in enumerate(result.feature_names)}

    rows = []
    for rank, (name, mean_drop) in enumerate(ranked, start=1):
        sd = float(result.samples[name_to_idx[name]].std())
        rows.append([rank, name, mean_drop, sd])
    write_csv(os.path.join(out_dir, "importance.csv"),
              ["rank", "feature", "mean_r2_drop", "sd_r2_drop"], rows)

    dist_rows = []
    for name, _mean in ranked:
        for r, v in enumerate(result.samples[name_to_idx[name]]):
            dist_rows.append([name, r, float(v)])
    write_csv(os.path.join(out_dir, "importance_distributions.csv"),
              ["feature", "repeat", "r2_drop"], dist_rows)

    corr_rows = []
    scatter_rows = []
    if ranked and dataset is not None:
        corrs = feature_correlations(dataset, [n for n, _ in ranked])
        for name, r, p in corrs:
            corr_rows.append([name, "" if r is None else r, "" if p is None else p])
        for name, _mean in ranked:
            norm = _minmax(dataset.column(name))
            for v, t in zip(norm, dataset.targets):
                scatter_rows.append([name, float(v), float(t)])
    write_csv(os.path.join(out_dir, "correlations.csv"),
              ["feature", "pearson_r", "p_value"], corr_rows)
    write_csv(os.path.join(out_dir, "scatter_data.csv"),
              ["feature", "value_minmax", "testability"], scatter_rows)

    if make_plots and ranked:
        _plot(result, ranked, name_to_idx, dataset, out_dir)
    return ranked


def _plot(result, ranked, name_to_idx, dataset, out_dir):
    import os

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    names = [n for n, _ in ranked]
    data = [result.samples[name_to_idx[n]] for n in names]
    fig, ax = plt.subplots(figsize=(9, max(3, 0.4 * len(names))))
    ax.boxplot(data[::-1], tick_labels=names[::-1], orientation="horizontal")
    ax.set_xlabel("R2 drop after shuffling")
    ax.set_title("Most influential metrics")
    fig.tight_layout()
    fig.savefig(os.path.join(out_dir, "importance_box.png"), dpi=120)
    plt.close(fig)

    if dataset is None:
        return
    cols = 5
    rows_n = (len(names) + cols - 1) // cols
    fig, axes = plt.subplots(rows_n, cols, figsize=(3 * cols, 2.4 * rows_n),
                             squeeze=False)
    for k, name in enumerate(names):
        ax = axes[k // cols][k % cols]
        x = _minmax(dataset.column(name))
        ax.scatter(x, dataset.targets, s=4, alpha=0.5)
        ax.set_title(name, fontsize=8)
    for k in range(len(names), rows_n * cols):
        axes[k // cols][k % cols].axis("off")
    fig.tight_layout()
    fig.savefig(os.path.join(out_dir, "correlation_scatter.png"), dpi=120)
    plt.close(fig)
