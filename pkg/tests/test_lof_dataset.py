import json

import numpy as np
import pytest

from oracles import brute_lof
from testlab import dataset as DS
from testlab.lof import lof_scores
from testlab.metrics.manifest import build_manifest


def test_uniform_grid_interior_scores_near_one():
    xs, ys = np.meshgrid(np.arange(10.0), np.arange(10.0))
    pts = np.column_stack([xs.ravel(), ys.ravel()])
    scores = lof_scores(pts, k=4)
    interior = [i for i, (x, y) in enumerate(pts)
                if 0 < x < 9 and 0 < y < 9]
    assert np.all(np.abs(scores[interior] - 1.0) <= 0.05)


def planted_outlier_points():
    rng = np.random.default_rng(1)
    cluster = rng.uniform(0, 1, size=(60, 2))
    return np.vstack([cluster, [[6.0, 6.0]]])


def test_planted_outlier_ranks_first():
    scores = lof_scores(planted_outlier_points(), k=10)
    assert int(np.argmax(scores)) == 60
    assert scores[60] > 1.5


def test_identical_points_all_one():
    pts = np.ones((12, 3))
    assert np.all(lof_scores(pts, k=3) == 1.0)


def test_matches_bruteforce_exactly():
    rng = np.random.default_rng(9)
    for _ in range(10):
        n = int(rng.integers(20, 120))
        d = int(rng.integers(1, 6))
        k = int(rng.integers(2, min(15, n - 1)))
        pts = rng.normal(size=(n, d))
        if rng.uniform() < 0.3:
            pts[rng.integers(0, n)] = pts[rng.integers(0, n)]  # duplicates
        assert np.array_equal(lof_scores(pts, k), brute_lof(pts, k))


def test_k_bounds():
    pts = np.zeros((5, 2))
    with pytest.raises(ValueError):
        lof_scores(pts, k=5)
    with pytest.raises(ValueError):
        lof_scores(pts, k=0)


# ---- dataset pipeline -------------------------------------------------------


def toy_dataset(n=40, d=3, seed=0, names=None):
    rng = np.random.default_rng(seed)
    names = names or [f"f{i}" for i in range(d)]
    return DS.Dataset(
        rng.normal(size=(n, d)),
        names,
        rng.uniform(0, 1, size=n),
        [f"c{i}" for i in range(n)],
    )


def with_trivial_columns(rows):
    names = ["CSLOC", "CSNOMNAMM", "CSNOIA", "CSNOSA"]
    mat = np.asarray(rows, dtype=np.float64)
    return DS.Dataset(mat, names, np.linspace(0, 1, len(rows)),
                      [f"c{i}" for i in range(len(rows))])


def test_trivial_filter_rules():
    ds = with_trivial_columns([
        [3, 2, 1, 0],    # simple: LOC < 5
        [50, 0, 2, 0],   # data class: no real methods, attributes present
        [50, 4, 2, 0],   # kept
        [10, 0, 0, 0],   # kept: no attributes, not a data class
    ])
    kept, dropped = DS.filter_trivial_classes(ds)
    assert dropped == ["c0", "c1"]
    assert kept.class_ids == ["c2", "c3"]


def test_trivial_filter_missing_column():
    ds = toy_dataset()
    with pytest.raises(DS.MissingMetric):
        DS.filter_trivial_classes(ds)


def test_split_sizes_and_determinism():
    ds = toy_dataset(n=100)
    tr, te = DS.split(ds, 0.7, seed=4)
    assert tr.n == 70 and te.n == 30
    tr2, te2 = DS.split(ds, 0.7, seed=4)
    assert tr.class_ids == tr2.class_ids
    assert set(tr.class_ids) | set(te.class_ids) == set(ds.class_ids)
    assert not set(tr.class_ids) & set(te.class_ids)
    tr3, _ = DS.split(ds, 0.7, seed=5)
    assert tr3.class_ids != tr.class_ids


def test_split_floor_rule():
    ds = toy_dataset(n=10)
    tr, te = DS.split(ds, 0.999, seed=1)
    assert tr.n == 9 and te.n == 1
    with pytest.raises(ValueError):
        DS.split(ds, 1.0, seed=1)


def test_scaler_normalizes_train():
    ds = toy_dataset(n=200, seed=7)
    params = DS.fit_scaler(ds)
    z = DS.apply_scaler(params, ds.feature_matrix)
    assert np.allclose(z.mean(axis=0), 0.0, atol=1e-9)
    assert np.allclose(z.std(axis=0), 1.0, atol=1e-9)


def test_scaler_degenerate_column_and_no_clipping():
    mat = np.column_stack([np.full(10, 3.0), np.arange(10.0)])
    ds = DS.Dataset(mat, ["const", "ramp"], np.zeros(10), [str(i) for i in range(10)])
    params = DS.fit_scaler(ds)
    z = DS.apply_scaler(params, np.array([[99.0, 100.0]]))
    assert z[0, 0] == 0.0          # degenerate column maps to 0
    assert abs(z[0, 1]) > 3.0      # far value stays unclipped


def test_outlier_removal_threshold_inf_is_identity():
    ds = toy_dataset(n=50)
    kept, dropped = DS.remove_outliers(ds, k=5, threshold=np.inf)
    assert dropped == []
    assert kept.n == ds.n


def test_outlier_removal_drops_planted_row():
    mat = planted_outlier_points()
    ds = DS.Dataset(mat, ["a", "b"], np.zeros(61), [f"c{i}" for i in range(61)])
    kept, dropped = DS.remove_outliers(ds, k=10, threshold=1.5)
    assert dropped == ["c60"]
    assert kept.n == 60


def test_outlier_removal_k_too_large():
    ds = toy_dataset(n=5)
    with pytest.raises(ValueError):
        DS.remove_outliers(ds, k=5, threshold=1.5)


def manifest_dataset(n=60, seed=3):
    manifest = build_manifest()
    rng = np.random.default_rng(seed)
    mat = rng.normal(size=(n, len(manifest.names)))
    # make the trivial-filter columns benign
    for col, val in (("CSLOC", 50.0), ("CSNOMNAMM", 3.0), ("CSNOIA", 1.0),
                     ("CSNOSA", 0.0)):
        mat[:, manifest.names.index(col)] = val
    y = rng.uniform(0, 1, size=n)
    ds = DS.Dataset(mat, list(manifest.names), y, [f"c{i}" for i in range(n)])
    return manifest, ds


def test_variants_column_schemas():
    manifest, ds = manifest_dataset()
    train, _ = DS.split(ds, 0.7, seed=0)
    ds1 = DS.make_variant(ds, "DS1", manifest)
    assert ds1.feature_names == ds.feature_names
    ds2 = DS.make_variant(ds, "DS2", manifest, train=train)
    assert len(ds2.feature_names) == 20
    ds3 = DS.make_variant(ds, "DS3", manifest)
    assert not [n for n in ds3.feature_names if n.startswith("PK")]
    assert len(ds3.feature_names) == 148
    ds4 = DS.make_variant(ds, "DS4", manifest)
    assert len(ds4.feature_names) == 131
    ds5 = DS.make_variant(ds, "DS5", manifest)
    assert len(ds5.feature_names) == 64
    with pytest.raises(DS.UnknownVariant):
        DS.make_variant(ds, "DS9", manifest)


def test_ds2_selects_informative_columns():
    manifest, ds = manifest_dataset(n=200, seed=8)
    # plant a strongly predictive column
    j = ds.feature_names.index("CSRFC")
    ds.feature_matrix[:, j] = ds.targets * 3.0
    train, _ = DS.split(ds, 0.7, seed=0)
    cols = DS.select_variant_columns("DS2", manifest, train=train)
    assert cols[0] == "CSRFC"


def test_no_leakage_from_test_rows(tmp_path):
    manifest, ds = manifest_dataset(n=80, seed=5)
    features = tmp_path / "features.csv"
    labels = tmp_path / "labels.csv"
    _write_features_labels(ds, features, labels)
    prep1 = DS.prepare(str(features), str(labels), manifest, seed=11, lof_k=5)

    # corrupt exactly the rows that land in the test partition and re-run
    joined, _ = DS.join_features_labels(str(features), str(labels))
    filtered, _ = DS.filter_trivial_classes(joined)
    _, test = DS.split(filtered, 0.7, 11)
    garbage = set(test.class_ids)
    ds_bad = DS.Dataset(ds.feature_matrix.copy(), ds.feature_names,
                        ds.targets.copy(), ds.class_ids)
    for i, cid in enumerate(ds_bad.class_ids):
        if cid in garbage:
            keep = {"CSLOC", "CSNOMNAMM", "CSNOIA", "CSNOSA"}
            for j, name in enumerate(ds_bad.feature_names):
                if name not in keep:
                    ds_bad.feature_matrix[i, j] = 1e6
    features2 = tmp_path / "features2.csv"
    labels2 = tmp_path / "labels2.csv"
    _write_features_labels(ds_bad, features2, labels2)
    prep2 = DS.prepare(str(features2), str(labels2), manifest, seed=11, lof_k=5)

    assert np.array_equal(prep1.scaler.mean, prep2.scaler.mean)
    assert np.array_equal(prep1.scaler.sd, prep2.scaler.sd)
    assert prep1.dropped_outliers == prep2.dropped_outliers


def _write_features_labels(ds, features_path, labels_path):
    from testlab.io_utils import write_csv

    write_csv(features_path, ["class_id"] + ds.feature_names,
              [[cid] + list(row) for cid, row in zip(ds.class_ids, ds.feature_matrix)])
    write_csv(labels_path, ["class_id", "t_q", "t_e", "testability"],
              [[cid, 0.5, 1.0, y] for cid, y in zip(ds.class_ids, ds.targets)])


def test_join_reports_unmatched(tmp_path):
    manifest, ds = manifest_dataset(n=10)
    features = tmp_path / "features.csv"
    labels = tmp_path / "labels.csv"
    _write_features_labels(ds, features, labels)
    # drop one label, add one stray
    lines = labels.read_text().splitlines()
    lines = [lines[0]] + lines[2:] + ["zz.Stray,0.5,1.0,0.5"]
    labels.write_text("\n".join(lines) + "\n")
    joined, unmatched = DS.join_features_labels(str(features), str(labels))
    assert joined.n == 9
    assert unmatched["features_without_label"] == ["c0"]
    assert unmatched["labels_without_features"] == ["zz.Stray"]


def test_prepare_writes_versioned_artifacts(tmp_path):
    manifest, ds = manifest_dataset(n=60, seed=2)
    features = tmp_path / "features.csv"
    labels = tmp_path / "labels.csv"
    _write_features_labels(ds, features, labels)
    prep = DS.prepare(str(features), str(labels), manifest, seed=3, lof_k=5)
    out = tmp_path / "dataset.csv"
    DS.write_prepared(prep, str(out), str(tmp_path / "scaler.json"),
                      str(tmp_path / "drop_report.txt"),
                      manifest_hash=manifest.sha256())
    blob = json.loads((tmp_path / "scaler.json").read_text())
    assert blob["format"] == "testlab-scaler/1"
    assert blob["manifest_sha256"] == manifest.sha256()
    train, test = DS.load_dataset_csv(str(out))
    assert train.n == prep.train.n
    assert test.n == prep.test.n
    assert train.feature_names == prep.train.feature_names
    report = (tmp_path / "drop_report.txt").read_text()
    assert report.startswith("# testlab drop report v1")
