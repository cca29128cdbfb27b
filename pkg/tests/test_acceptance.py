"""Acceptance suite: one test per release criterion.

Each test prints a single `ACCEPTANCE <n>: PASS|FAIL` line before its
assertions so the run log doubles as the acceptance report. Two checks
are expected to stay red; the failure messages carry the measured
counterexamples (see the working notes outside the package for the full
analysis).
"""

import json
import math
import os
import time

import numpy as np
import pytest

from oracles import brute_lof, direct_testability, naive_modularity
from testlab import labeling as L
from testlab.analysis import permutation_importance
from testlab.dataset import Dataset, remove_outliers
from testlab.java.lexer import tokenize
from testlab.learners import (HistGradientBoosting, Perceptron, RandomForest,
                              VotingEnsemble, evaluate)
from testlab.lof import lof_scores
from testlab.metrics.derive import derive_sub_metrics, sub_metric_names
from testlab.metrics.lexical import compute_lexical_metrics
from testlab.quality import DesignMetrics, ModuleDependencyGraph, modularity
from testlab.quality import extendibility, functionality, reusability
from testlab.stats import student_t_two_sided_p, welch_ttest

GOLDEN_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "golden")


def report(n, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"\nACCEPTANCE {n}: {status}{' — ' + detail if detail else ''}")
    return ok


# -- 1. labeling formula oracle ----------------------------------------------


def test_criterion_1_formula_oracle():
    start = time.perf_counter()
    rng = np.random.default_rng(17)
    names = ["line", "branch", "mutation", "method"]
    worst = 0.0
    for _ in range(1000):
        k = int(rng.integers(1, 5))
        criteria = {names[i]: float(rng.uniform(0, 1)) for i in range(k)}
        suite = float(np.round(rng.uniform(0, 60), 3))
        nom = float(rng.integers(1, 30))
        t = float(rng.uniform(0, 10))
        rec = L.CoverageRecord("c", criteria, suite, nom, t)
        mine = L.testability(rec).testability
        ref = direct_testability(criteria, suite, nom, t)
        worst = max(worst, abs(mine - ref))
    hand = [
        (L.test_effectiveness(L.CoverageRecord("c", {"line": 0.8, "branch": 0.6},
                                               10, 5, 6)), 0.7),
        (L.test_effort(L.CoverageRecord("c", {"line": 1.0}, 10, 5, 6)), 1.5),
        (L.testability(L.CoverageRecord("c", {"line": 0.8, "branch": 0.6},
                                        10, 5, 6)).testability, 0.7 / 1.5),
    ]
    elapsed = time.perf_counter() - start
    exact = all(abs(a - b) < 1e-12 for a, b in hand)
    ok = worst <= 1e-12 and exact and elapsed < 1.0
    report(1, ok, f"max |Δ|={worst:.2e}, {elapsed:.2f}s")
    assert worst <= 1e-12
    assert exact
    assert elapsed < 1.0


# -- 2. monotonicity ----------------------------------------------------------


def test_criterion_2_monotonicity_pairs():
    rng = np.random.default_rng(23)
    cov_violations = 0
    size_violations = 0
    example = None
    for _ in range(10000):
        criteria = {"line": float(rng.uniform(0, 1)),
                    "branch": float(rng.uniform(0, 1))}
        suite = float(rng.uniform(1, 40))
        nom = float(rng.integers(1, 20))
        t = float(rng.uniform(0, 9))
        base = L.CoverageRecord("c", dict(criteria), suite, nom, t)
        t_base = L.testability(base).testability

        upc = dict(criteria)
        upc["line"] = min(1.0, upc["line"] + float(rng.uniform(0, 1)))
        t_cov = L.testability(L.CoverageRecord("c", upc, suite, nom, t)).testability
        if t_cov < t_base - 1e-15:
            cov_violations += 1

        bigger = suite + float(rng.uniform(0.1, 30))
        t_size = L.testability(
            L.CoverageRecord("c", dict(criteria), bigger, nom, t)).testability
        if t_size > t_base + 1e-15:
            size_violations += 1
            if example is None:
                example = (suite, bigger, nom, t, t_base, t_size)
    ok = cov_violations == 0 and size_violations == 0
    report(2, ok,
           f"coverage violations {cov_violations}/10000, "
           f"suite-size violations {size_violations}/10000"
           + (f"; e.g. suite {example[0]:.2f}->{example[1]:.2f} "
              f"(nom {example[2]:.0f}, t {example[3]:.2f} min) "
              f"raises T {example[4]:.4f}->{example[5]:.4f}" if example else ""))
    assert cov_violations == 0, "coverage monotonicity violated"
    # Known red: with generation time fixed, growing the suite inside one
    # ceiling plateau shrinks the per-test cost and raises T.
    assert size_violations == 0, (
        f"suite-size antimonotonicity violated in {size_violations}/10000 pairs; "
        f"example: {example}"
    )


# -- 3. LOF vs brute force ----------------------------------------------------


def test_criterion_3_lof_oracle():
    rng = np.random.default_rng(9)
    mismatches = 0
    for i in range(100):
        if i < 97:
            n = int(rng.integers(20, 200))
        else:
            n = int((400, 450, 500)[i - 97])
        d = int(rng.integers(1, 11))
        k = int(rng.integers(2, min(21, n - 1)))
        pts = rng.normal(size=(n, d))
        if rng.uniform() < 0.25:
            dup = int(rng.integers(0, n))
            pts[dup] = pts[(dup + 1) % n]
        if not np.array_equal(lof_scores(pts, k), brute_lof(pts, k)):
            mismatches += 1

    cl_rng = np.random.default_rng(1)
    cluster = cl_rng.uniform(0, 1, size=(60, 2))
    pts = np.vstack([cluster, [[6.0, 6.0]]])
    ds = Dataset(pts, ["a", "b"], np.zeros(61), [f"c{i}" for i in range(61)])
    kept, dropped = remove_outliers(ds, k=10, threshold=1.5)
    planted_ok = dropped == ["c60"] and kept.n == 60

    ok = mismatches == 0 and planted_ok
    report(3, ok, f"{mismatches}/100 datasets mismatched; planted row dropped: "
                  f"{dropped}")
    assert mismatches == 0
    assert planted_ok


# -- 4. sub-metric cardinality -----------------------------------------------


def test_criterion_4_sub_metric_cardinality(demo_tables):
    assert len(sub_metric_names("CC")) == 40
    for base in ("LOC", "NOST", "NESTING", "PATH", "KNOTS", "NOPARAM"):
        assert len(sub_metric_names(base)) == 10

    manifest, table = demo_tables
    bad = []
    variants = ["CC", "CCModified", "CCStrict", "CCEssential",
                "LOC", "NOST", "NESTING", "PATH", "KNOTS", "NOPARAM"]
    for cid, row in table.items():
        for variant in variants:
            for filt in ("All", "NAMM"):
                lo = row[f"{variant}_Min_{filt}"]
                mid = row[f"{variant}_Mean_{filt}"]
                hi = row[f"{variant}_Max_{filt}"]
                if not (lo <= mid + 1e-12 and mid <= hi + 1e-12):
                    bad.append((cid, variant, filt))
                if row[f"{variant}_SD_{filt}"] < 0:
                    bad.append((cid, variant, filt, "sd"))
    ok = not bad
    report(4, ok, f"40 CC names, 10 per other base; ordering checked on "
                  f"{len(table)} classes, {len(bad)} violations")
    assert not bad


# -- 5. lexical golden files ---------------------------------------------------

GOLDEN_COUNTS = {
    "golden1.java": dict(NOTK=5, NOTKU=5, NOID=1, NOIDU=1, NOKW=1, NOKWU=1,
                         NOASS=1, NOOP=0, NOOPU=0, NOSC=1, NODOT=0, NOREPR=0,
                         NOCJST=0, NOCUJST=0, NOEXST=0, NONEW=0, NOSUPER=0),
    "golden2.java": dict(NOTK=17, NOTKU=13, NOID=4, NOIDU=3, NOKW=4, NOKWU=3,
                         NOASS=0, NOOP=1, NOOPU=1, NOSC=1, NODOT=0, NOREPR=1,
                         NOCJST=0, NOCUJST=0, NOEXST=0, NONEW=0, NOSUPER=0),
    "golden3.java": dict(NOTK=31, NOTKU=19, NOID=9, NOIDU=7, NOKW=4, NOKWU=4,
                         NOASS=0, NOOP=1, NOOPU=1, NOSC=2, NODOT=2, NOREPR=2,
                         NOCJST=1, NOCUJST=0, NOEXST=0, NONEW=0, NOSUPER=0),
    "golden4.java": dict(NOTK=30, NOTKU=19, NOID=5, NOIDU=3, NOKW=7, NOKWU=6,
                         NOASS=1, NOOP=0, NOOPU=0, NOSC=3, NODOT=1, NOREPR=0,
                         NOCJST=0, NOCUJST=0, NOEXST=0, NONEW=1, NOSUPER=1),
    "golden5.java": dict(NOTK=61, NOTKU=27, NOID=13, NOIDU=6, NOKW=13, NOKWU=10,
                         NOASS=2, NOOP=4, NOOPU=3, NOSC=6, NODOT=0, NOREPR=2,
                         NOCJST=2, NOCUJST=1, NOEXST=2, NONEW=0, NOSUPER=0),
}


def test_criterion_5_lexical_golden_files():
    mismatches = []
    for name, expected in GOLDEN_COUNTS.items():
        with open(os.path.join(GOLDEN_DIR, name), encoding="utf-8") as fh:
            got = compute_lexical_metrics(tokenize(fh.read())).as_dict()
        for key, value in expected.items():
            if got[key] != value:
                mismatches.append((name, key, value, got[key]))
    ok = not mismatches
    report(5, ok, f"5 files x 17 counters; {len(mismatches)} mismatches")
    assert not mismatches, mismatches


# -- 6. synthetic learnability --------------------------------------------------


def _synthetic(seed, n=5000, d=10, sd=0.05):
    rng = np.random.default_rng(seed)
    X = rng.uniform(-1, 1, size=(n, d))
    y = (X[:, 0] ** 2 + np.sin(3 * X[:, 1]) + 0.5 * X[:, 2] * X[:, 3]
         + rng.normal(0, sd, n))
    return X, y


def test_criterion_6_synthetic_learnability():
    start = time.perf_counter()
    r2s = []
    ratios = []
    for seed in range(10):
        X, y = _synthetic(seed)
        cut = int(0.7 * len(y))
        Xtr, ytr, Xte, yte = X[:cut], y[:cut], X[cut:], y[cut:]
        rf = RandomForest(n_estimators=60, max_depth=None, seed=seed).fit(Xtr, ytr)
        hg = HistGradientBoosting(max_iter=150, max_depth=6,
                                  min_samples_leaf=15).fit(Xtr, ytr)
        ml = Perceptron(hidden_layer_sizes=(64, 32), epochs=150,
                        batch_size=200, seed=seed).fit(Xtr, ytr)
        ens = VotingEnsemble({"rfr": rf, "hgbr": hg, "mlpr": ml})
        evs = {k: evaluate(m.predict(Xte), yte)
               for k, m in (("rfr", rf), ("hgbr", hg), ("mlpr", ml), ("vor", ens))}
        min_mse = min(evs[k]["MSE"] for k in ("rfr", "hgbr", "mlpr"))
        r2s.append(evs["vor"]["R2"])
        ratios.append(evs["vor"]["MSE"] / min_mse)
    elapsed = time.perf_counter() - start
    wins = sum(r <= 1.05 for r in ratios)
    ok = min(r2s) >= 0.90 and wins >= 8 and elapsed < 300
    report(6, ok,
           f"VoR R2 min {min(r2s):.4f}; MSE ratio<=1.05 in {wins}/10 seeds "
           f"(ratios {', '.join(f'{r:.2f}' for r in ratios)}); {elapsed:.0f}s")
    assert elapsed < 300
    assert min(r2s) >= 0.90
    # Known red: with the published voting weights the forest's excess
    # error (weight 3/6) keeps VoR ~3x above the best base on this smooth
    # function family; see the verification notes for the sweep.
    assert wins >= 8, f"VoR within 1.05x best base in only {wins}/10 seeds"


# -- 7. permutation importance recovers the planted feature --------------------


def test_criterion_7_importance_recovers_planted_feature():
    hits = 0
    for seed in range(100):
        rng = np.random.default_rng(seed)
        n, d = 300, 20
        X = rng.normal(size=(n, d))
        y = 2.0 * X[:, 4] + rng.normal(0, 0.1, size=n)
        cut = 200
        model = RandomForest(n_estimators=12, max_depth=8, seed=seed)
        model.fit(X[:cut], y[:cut])
        ds = Dataset(X[cut:], [f"f{i}" for i in range(d)], y[cut:],
                     [str(i) for i in range(cut, n)])
        result = permutation_importance(model, ds, repeats=8, seed=seed)
        ranked = result.ranking(top=1)
        hits += ranked[0][0] == "f4"
    ok = hits >= 95
    report(7, ok, f"planted feature ranked first in {hits}/100 runs")
    assert hits >= 95


# -- 8. estimation algorithm conformance ---------------------------------------


def test_criterion_8_estimation_conformance(demo_project_dir, demo_tables):
    from testlab.dataset import ScalerParams
    from testlab.inference import estimate_from_metrics, estimate_testability

    class Stub:
        def predict(self, X):
            raise AssertionError("model touched for a trivial class")

    class Fixed:
        def __init__(self, v):
            self.v = v

        def predict(self, X):
            return np.full(len(X), self.v)

    class FakeModel:
        def __init__(self, ensemble, features):
            self.ensemble = ensemble
            self.features = features
            self.scaler = ScalerParams(np.zeros(len(features)),
                                       np.ones(len(features)), list(features))
            self.manifest_sha256 = ""

    manifest, _ = demo_tables
    stub_model = FakeModel(Stub(), ["CSLOC", "CSNOM"])
    stub_model.manifest_sha256 = manifest.sha256()
    data_cls = estimate_testability("com.demo.model.Point", demo_project_dir,
                                    stub_model)
    simple_cls = estimate_testability("com.demo.model.Marker", demo_project_dir,
                                      stub_model)

    row = {"CSLOC": 50.0, "CSNOMNAMM": 3.0, "CSNOIA": 1.0, "CSNOSA": 0.0,
           "f": 0.1}
    low = estimate_from_metrics(row, FakeModel(Fixed(-0.07), ["f"]))
    high = estimate_from_metrics(row, FakeModel(Fixed(1.2), ["f"]))
    mid = estimate_from_metrics(row, FakeModel(Fixed(0.42), ["f"]))

    ok = (data_cls == 1.0 and simple_cls == 1.0 and low == 0.0
          and high == 1.0 and mid == pytest.approx(0.42))
    report(8, ok, f"data/simple -> {data_cls}/{simple_cls}; "
                  f"clamps -0.07->{low}, 1.2->{high}, 0.42->{mid}")
    assert data_cls == 1.0
    assert simple_cls == 1.0
    assert low == 0.0
    assert high == 1.0
    assert mid == pytest.approx(0.42)


# -- 9. gradients and boosting loss --------------------------------------------


def test_criterion_9_gradcheck_and_monotone_loss():
    rng = np.random.default_rng(11)
    mlp = Perceptron(hidden_layer_sizes=(8, 5), epochs=1, batch_size=5, seed=11)
    X = rng.normal(size=(5, 3))
    y = rng.normal(size=5)
    mlp._init_params(3)
    _loss, gw, gb = mlp.loss_and_grads(X, y)
    eps = 1e-6
    worst = 0.0
    for arrs, grads in ((mlp.weights_, gw), (mlp.biases_, gb)):
        for arr, g in zip(arrs, grads):
            flat = arr.reshape(-1)
            gflat = np.asarray(g).reshape(-1)
            for idx in range(flat.size):
                old = flat[idx]
                flat[idx] = old + eps
                lp, _, _ = mlp.loss_and_grads(X, y)
                flat[idx] = old - eps
                lm, _, _ = mlp.loss_and_grads(X, y)
                flat[idx] = old
                num = (lp - lm) / (2 * eps)
                denom = max(abs(num), abs(gflat[idx]), 1e-8)
                worst = max(worst, abs(num - gflat[idx]) / denom)

    monotone = True
    for seed in (0, 1, 2):
        Xs, ys = _synthetic(seed, n=800)
        model = HistGradientBoosting(max_iter=60, max_depth=4,
                                     min_samples_leaf=5).fit(Xs, ys)
        losses = np.asarray(model.train_losses_)
        monotone = monotone and bool((np.diff(losses) <= 1e-12).all())

    ok = worst < 1e-4 and monotone
    report(9, ok, f"gradient rel err {worst:.2e}; loss monotone on 3 datasets: "
                  f"{monotone}")
    assert worst < 1e-4
    assert monotone


# -- 10. quality formulas -------------------------------------------------------


def test_criterion_10_quality_formulas():
    rng = np.random.default_rng(2)
    mismatches = 0
    for _ in range(50):
        n = int(rng.integers(2, 50))
        a = (rng.uniform(size=(n, n)) > 0.7).astype(float)
        np.fill_diagonal(a, 0)
        if rng.uniform() < 0.3:
            a = a * np.round(rng.uniform(0, 3, size=(n, n)), 2)
        modules = [int(m) for m in rng.integers(0, max(1, n // 3) + 1, size=n)]
        g = ModuleDependencyGraph([str(i) for i in range(n)], a, modules)
        if modularity(g) != naive_modularity(a, modules):
            mismatches += 1

    d = DesignMetrics(class_coupling=4, cohesion_among_methods=4,
                      n_public_methods=2, design_size_in_classes=2)
    hand_ok = (
        abs(reusability(d) - 2.0) < 1e-12
        and abs(functionality(DesignMetrics(cohesion_among_methods=1)) - 0.12) < 1e-12
        and abs(extendibility(DesignMetrics(class_coupling=2)) + 1.0) < 1e-12
        and reusability(DesignMetrics()) == 0.0
    )
    ok = mismatches == 0 and hand_ok
    report(10, ok, f"{mismatches}/50 modularity mismatches; QMOOD hand values: "
                   f"{hand_ok}")
    assert mismatches == 0
    assert hand_ok


# -- 11. Welch t-test -----------------------------------------------------------


def test_criterion_11_welch_ttest():
    a = [1.0, 2.0, 3.0, 4.0]
    _t, _df, p_same = welch_ttest(a, list(a))
    rng = np.random.default_rng(0)
    _t2, _df2, p_far = welch_ttest(rng.normal(0, 1, 100), rng.normal(5, 1, 100))
    table = [(1.0, 1, 0.5), (2.0, 10, 0.07339), (2.571, 5, 0.04997),
             (1.96, 1000, 0.05027), (3.0, 30, 0.00539)]
    table_ok = all(
        abs(student_t_two_sided_p(t, df) - expected) <= 5e-4 * expected
        for t, df, expected in table
    )
    ok = abs(p_same - 1.0) <= 1e-9 and p_far < 1e-10 and table_ok
    report(11, ok, f"identical p={p_same:.12f}; separated p={p_far:.2e}; "
                   f"4-digit table: {table_ok}")
    assert abs(p_same - 1.0) <= 1e-9
    assert p_far < 1e-10
    assert table_ok


# -- 12. end-to-end demo ---------------------------------------------------------


def test_criterion_12_demo_deterministic(tmp_path):
    from testlab.cli import main

    start = time.perf_counter()
    out1 = tmp_path / "run1"
    out2 = tmp_path / "run2"
    code1 = main(["demo", "--out", str(out1), "--seed", "42"])
    code2 = main(["demo", "--out", str(out2), "--seed", "42"])
    elapsed = time.perf_counter() - start

    csvs = ["features.csv", "coverage.csv", "labels.csv", "dataset.csv",
            "predictions.csv"]
    identical = all(
        (out1 / name).read_bytes() == (out2 / name).read_bytes() for name in csvs
    )
    preds = (out1 / "predictions.csv").read_text().splitlines()[1:]
    in_range = all(0.0 <= float(line.split(",")[1]) <= 1.0 for line in preds)
    ok = code1 == 0 and code2 == 0 and identical and in_range and elapsed < 60
    report(12, ok, f"two runs in {elapsed:.1f}s; byte-identical CSVs: "
                   f"{identical}; {len(preds)} predictions in range: {in_range}")
    assert code1 == 0 and code2 == 0
    assert identical
    assert in_range
    assert elapsed < 60
