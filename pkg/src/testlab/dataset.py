"""Dataset preparation.

Pipeline order: join features with labels, drop trivially testable
classes, split into train/test, remove training outliers with LOF, fit
the standardizer on the training rows, and optionally reduce columns to
one of the DS1..DS5 schema variants. Nothing fitted ever sees a test
row.
"""

import json
from dataclasses import dataclass, replace

import numpy as np

from testlab.io_utils import read_csv, write_csv
from testlab.lof import lof_scores

VARIANTS = ("DS1", "DS2", "DS3", "DS4", "DS5")

DEFAULT_LOF_K = 20
DEFAULT_LOF_THRESHOLD = 1.5
DS2_FEATURE_COUNT = 20

TRIVIAL_LOC_LIMIT = 5.0


class MissingMetric(KeyError):
    pass


class UnknownVariant(ValueError):
    pass


@dataclass
class Dataset:
    feature_matrix: np.ndarray   # (n, d) float64
    feature_names: list
    targets: np.ndarray          # (n,)
    class_ids: list

    def __post_init__(self):
        if not np.isfinite(self.feature_matrix).all():
            raise ValueError("non-finite feature values")
        if not np.isfinite(self.targets).all():
            raise ValueError("non-finite targets")
        if len(set(self.feature_names)) != len(self.feature_names):
            raise ValueError("duplicate feature names")

    @property
    def n(self):
        return self.feature_matrix.shape[0]

    def column(self, name):
        try:
            j = self.feature_names.index(name)
        except ValueError:
            raise MissingMetric(name) from None
        return self.feature_matrix[:, j]

    def take_rows(self, indices):
        idx = np.asarray(indices, dtype=np.int64)
        return Dataset(
            self.feature_matrix[idx],
            list(self.feature_names),
            self.targets[idx],
            [self.class_ids[i] for i in idx],
        )

    def take_columns(self, names):
        idx = [self.feature_names.index(n) for n in names]
        return Dataset(
            self.feature_matrix[:, idx],
            list(names),
            self.targets.copy(),
            list(self.class_ids),
        )


@dataclass
class ScalerParams:
    mean: np.ndarray
    sd: np.ndarray
    feature_names: list

    def degenerate_mask(self):
        return self.sd == 0.0

    def to_dict(self):
        return {
            "format": "testlab-scaler/1",
            "feature_names": list(self.feature_names),
            "mean": [float(v) for v in self.mean],
            "sd": [float(v) for v in self.sd],
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            mean=np.asarray(d["mean"], dtype=np.float64),
            sd=np.asarray(d["sd"], dtype=np.float64),
            feature_names=list(d["feature_names"]),
        )


def join_features_labels(features_path, labels_path):
    """Inner join on class_id; returns (Dataset, unmatched_report)."""
    f_header, f_rows = read_csv(features_path)
    l_header, l_rows = read_csv(labels_path)
    if not f_header or f_header[0] != "class_id":
        raise MissingMetric("features.csv must start with class_id")
    if "class_id" not in l_header or "testability" not in l_header:
        raise MissingMetric("labels.csv must have class_id and testability")
    feature_names = f_header[1:]
    lbl_idx = {row[l_header.index("class_id")]: float(row[l_header.index("testability")])
               for row in l_rows}
    ids, matrix, targets = [], [], []
    unmatched_features = []
    for row in f_rows:
        cid = row[0]
        if cid not in lbl_idx:
            unmatched_features.append(cid)
            continue
        ids.append(cid)
        matrix.append([float(v) for v in row[1:]])
        targets.append(lbl_idx[cid])
    matched = set(ids)
    unmatched_labels = sorted(set(lbl_idx) - matched)
    ds = Dataset(
        np.asarray(matrix, dtype=np.float64).reshape(len(ids), len(feature_names)),
        feature_names,
        np.asarray(targets, dtype=np.float64),
        ids,
    )
    return ds, {"features_without_label": unmatched_features,
                "labels_without_features": unmatched_labels}


def filter_trivial_classes(ds):
    """Drop simple classes (LOC < 5) and data classes.

    A data class has no non-accessor/mutator method and at least one
    attribute. Returns (filtered, dropped_ids).
    """
    for col in ("CSLOC", "CSNOMNAMM", "CSNOIA", "CSNOSA"):
        if col not in ds.feature_names:
            raise MissingMetric(col)
    loc = ds.column("CSLOC")
    nomnamm = ds.column("CSNOMNAMM")
    attrs = ds.column("CSNOIA") + ds.column("CSNOSA")
    simple = loc < TRIVIAL_LOC_LIMIT
    data_class = (nomnamm == 0) & (attrs > 0)
    keep = ~(simple | data_class)
    dropped = [ds.class_ids[i] for i in np.flatnonzero(~keep)]
    return ds.take_rows(np.flatnonzero(keep)), dropped


def split(ds, train_fraction, seed):
    """Seeded uniform shuffle; train gets floor(n * fraction) rows."""
    if not 0.0 < train_fraction < 1.0:
        raise ValueError("train_fraction must be in (0, 1)")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(ds.n)
    n_train = int(np.floor(ds.n * train_fraction))
    return ds.take_rows(perm[:n_train]), ds.take_rows(perm[n_train:])


def remove_outliers(ds, k=DEFAULT_LOF_K, threshold=DEFAULT_LOF_THRESHOLD):
    """Drop rows with LOF > threshold; returns (kept, dropped_ids)."""
    if np.isinf(threshold):
        return ds, []
    scores = lof_scores(ds.feature_matrix, k)
    keep = scores <= threshold
    dropped = [ds.class_ids[i] for i in np.flatnonzero(~keep)]
    return ds.take_rows(np.flatnonzero(keep)), dropped


def fit_scaler(ds):
    """Per-feature mean/sd on the given (training) rows."""
    mean = ds.feature_matrix.mean(axis=0)
    sd = ds.feature_matrix.std(axis=0)
    return ScalerParams(mean=mean, sd=sd, feature_names=list(ds.feature_names))


def apply_scaler(params, matrix):
    """z = (x - mean) / sd; zero-variance features map to 0."""
    x = np.asarray(matrix, dtype=np.float64)
    safe_sd = np.where(params.sd == 0.0, 1.0, params.sd)
    z = (x - params.mean) / safe_sd
    z[:, params.degenerate_mask()] = 0.0
    return z


def scale_dataset(params, ds):
    return replace(ds, feature_matrix=apply_scaler(params, ds.feature_matrix))


def select_variant_columns(variant, manifest, train=None):
    """Column names of a DS variant.

    DS2 requires `train` (a Dataset) to rank features by absolute
    Pearson correlation with the target on the training rows.
    """
    if variant not in VARIANTS:
        raise UnknownVariant(variant)
    names = list(manifest.names)
    if variant == "DS1":
        return names
    if variant == "DS3":
        return [n for n in names if manifest.block_of(n) != "context"]
    if variant == "DS4":
        return [n for n in names if manifest.block_of(n) not in ("context", "lexical")]
    if variant == "DS5":
        return [n for n in names if not manifest.is_systematic(n)]
    # DS2: top-k by |corr| with target, computed on the training split
    if train is None:
        raise ValueError("DS2 requires the training split for feature selection")
    y = train.targets
    yc = y - y.mean()
    sy = np.sqrt((yc * yc).sum())
    scores = []
    for j, name in enumerate(train.feature_names):
        x = train.feature_matrix[:, j]
        xc = x - x.mean()
        sx = np.sqrt((xc * xc).sum())
        if sx == 0.0 or sy == 0.0:
            r = 0.0
        else:
            r = float((xc * yc).sum() / (sx * sy))
        scores.append((-abs(r), name))
    ranked = [name for _negr, name in sorted(scores, key=lambda t: (t[0], t[1]))]
    return ranked[:DS2_FEATURE_COUNT]


def make_variant(ds, variant, manifest, train=None):
    """Apply a DS1..DS5 column schema to a dataset."""
    cols = select_variant_columns(variant, manifest, train=train)
    cols = [c for c in cols if c in ds.feature_names]
    return ds.take_columns(cols)


@dataclass
class PreparedData:
    train: Dataset
    test: Dataset
    scaler: ScalerParams
    dropped_trivial: list
    dropped_outliers: list
    unmatched: dict
    variant: str


def prepare(features_path, labels_path, manifest, variant="DS1", seed=42,
            train_fraction=0.7, lof_k=DEFAULT_LOF_K,
            lof_threshold=DEFAULT_LOF_THRESHOLD):
    """Full preparation pipeline (Fig. join -> filter -> split -> LOF -> scale)."""
    joined, unmatched = join_features_labels(features_path, labels_path)
    filtered, dropped_trivial = filter_trivial_classes(joined)
    train, test = split(filtered, train_fraction, seed)
    train, dropped_outliers = remove_outliers(train, k=lof_k, threshold=lof_threshold)
    if variant != "DS1":
        cols = select_variant_columns(variant, manifest, train=train)
        cols = [c for c in cols if c in train.feature_names]
        train = train.take_columns(cols)
        test = test.take_columns(cols)
    scaler = fit_scaler(train)
    train = scale_dataset(scaler, train)
    test = scale_dataset(scaler, test)
    return PreparedData(train, test, scaler, dropped_trivial, dropped_outliers,
                        unmatched, variant)


def write_prepared(prep, dataset_path, scaler_path, report_path, manifest_hash=""):
    header = ["class_id", "split"] + prep.train.feature_names + ["testability"]
    rows = []
    for part, name in ((prep.train, "train"), (prep.test, "test")):
        for i in range(part.n):
            rows.append([part.class_ids[i], name]
                        + list(part.feature_matrix[i]) + [part.targets[i]])
    write_csv(dataset_path, header, rows)
    payload = prep.scaler.to_dict()
    payload["variant"] = prep.variant
    payload["manifest_sha256"] = manifest_hash
    with open(scaler_path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    with open(report_path, "w", encoding="utf-8") as fh:
        fh.write("# testlab drop report v1\n")
        fh.write(f"variant: {prep.variant}\n")
        fh.write(f"train rows: {prep.train.n}\ntest rows: {prep.test.n}\n")
        fh.write(f"trivial classes dropped: {len(prep.dropped_trivial)}\n")
        for cid in prep.dropped_trivial:
            fh.write(f"  trivial: {cid}\n")
        fh.write(f"train outliers dropped: {len(prep.dropped_outliers)}\n")
        for cid in prep.dropped_outliers:
            fh.write(f"  outlier: {cid}\n")
        fh.write(
            "unmatched feature rows: "
            f"{len(prep.unmatched['features_without_label'])}\n"
        )
        for cid in prep.unmatched["features_without_label"]:
            fh.write(f"  no-label: {cid}\n")
        fh.write(
            "unmatched label rows: "
            f"{len(prep.unmatched['labels_without_features'])}\n"
        )
        for cid in prep.unmatched["labels_without_features"]:
            fh.write(f"  no-features: {cid}\n")


def load_dataset_csv(path):
    """Read a prepared dataset.csv; returns (train, test) or (all, None)."""
    header, rows = read_csv(path)
    if not header or header[0] != "class_id":
        raise MissingMetric("dataset.csv must start with class_id")
    has_split = len(header) > 1 and header[1] == "split"
    if header[-1] != "testability":
        raise MissingMetric("dataset.csv must end with testability")
    first_feat = 2 if has_split else 1
    names = header[first_feat:-1]

    def build(selected):
        ids = [r[0] for r in selected]
        mat = np.asarray(
            [[float(v) for v in r[first_feat:-1]] for r in selected], dtype=np.float64
        ).reshape(len(selected), len(names))
        y = np.asarray([float(r[-1]) for r in selected], dtype=np.float64)
        return Dataset(mat, list(names), y, ids)

    if not has_split:
        return build(rows), None
    train_rows = [r for r in rows if r[1] == "train"]
    test_rows = [r for r in rows if r[1] == "test"]
    return build(train_rows), build(test_rows) if test_rows else None
