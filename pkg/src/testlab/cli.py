"""testlab command line.

Subcommands: extract, label, prepare, train, eval, predict, importance,
quality, demo. Exit codes: 0 success, 1 usage error, 2 data error. Any
flag may be supplied through `--config <file>` (key = value lines);
explicit command-line flags win.
"""

import argparse
import json
import os
import sys
import time
import zlib

import numpy as np

from testlab import dataset as DS
from testlab import inference as INF
from testlab import labeling as LBL
from testlab.analysis import importance_report, permutation_importance
from testlab.io_utils import read_csv, write_csv
from testlab.learners.ensemble import DEFAULT_WEIGHTS, POSITIONS, VotingEnsemble
from testlab.learners.evaluation import evaluate
from testlab.learners.forest import RandomForest
from testlab.learners.hgb import HistGradientBoosting
from testlab.learners.mlp import Perceptron
from testlab.learners.selection import grid_search_cv
from testlab.learners.tree import RegressionTree
from testlab.metrics.extract import ExtractionError, extract_project, run_extract
from testlab.metrics.manifest import MetricManifest, SchemaMismatch, build_manifest
from testlab.model_io import load_model, save_model
from testlab.quality import (build_mdg, design_metrics_from_classes, extendibility,
                             functionality, modularity, reusability)

DATA_ERRORS = (
    LBL.DataError,
    DS.MissingMetric,
    DS.UnknownVariant,
    SchemaMismatch,
    ExtractionError,
    INF.ClassNotFound,
    INF.ManifestMismatch,
    ValueError,
    KeyError,
    OSError,
)


class CliParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=42,
                        help="seed controlling all randomness (default 42)")
    common.add_argument("--config", default=None,
                        help="key=value file supplying any flag")

    parser = CliParser(prog="testlab",
                       description="Source-code testability analysis toolkit")
    sub = parser.add_subparsers(dest="command", metavar="<command>")

    p = sub.add_parser("extract", parents=[common],
                       help="compute feature vectors from a Java project")
    p.add_argument("--project", required=True)
    p.add_argument("--out", required=True, help="features.csv output path")
    p.add_argument("--manifest", default=None, help="manifest.txt output path")

    p = sub.add_parser("label", parents=[common],
                       help="compute testability labels from coverage runs")
    p.add_argument("--coverage", required=True)
    p.add_argument("--out", required=True, help="labels.csv output path")
    p.add_argument("--columns", default=None,
                   help="rename input columns, e.g. TARGET_CLASS=class_id,Size=suite_size")

    p = sub.add_parser("prepare", parents=[common],
                       help="join, filter, split, clean and scale the dataset")
    p.add_argument("--features", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--out", required=True, help="dataset.csv output path")
    p.add_argument("--variant", default="DS1", choices=list(DS.VARIANTS))
    p.add_argument("--train-fraction", type=float, default=0.7)
    p.add_argument("--lof-k", type=int, default=DS.DEFAULT_LOF_K)
    p.add_argument("--lof-threshold", type=float, default=DS.DEFAULT_LOF_THRESHOLD)
    p.add_argument("--manifest", default=None,
                   help="manifest.txt from extract (default: built-in schema)")

    p = sub.add_parser("train", parents=[common],
                       help="fit the voting ensemble on a prepared dataset")
    p.add_argument("--dataset", required=True)
    p.add_argument("--out", required=True, help="model.json output path")
    p.add_argument("--scaler", default=None,
                   help="scaler.json from prepare (default: sibling of dataset)")
    p.add_argument("--grid", default=None,
                   help="hyperparameter grid JSON; runs 5-fold grid search")
    p.add_argument("--weights", default=None,
                   help="six comma-separated voting weights")
    p.add_argument("--rfr-estimators", type=int, default=150)
    p.add_argument("--rfr-depth", type=int, default=28)
    p.add_argument("--rfr-min-split", type=int, default=2)
    p.add_argument("--hgb-iters", type=int, default=500)
    p.add_argument("--hgb-depth", type=int, default=18)
    p.add_argument("--hgb-min-leaf", type=int, default=15)
    p.add_argument("--mlp-hidden", default="512,256,100")
    p.add_argument("--mlp-epochs", type=int, default=100)
    p.add_argument("--mlp-batch", type=int, default=200)
    p.add_argument("--dtr-depth", type=int, default=8)
    p.add_argument("--dtr-min-split", type=int, default=28)

    p = sub.add_parser("eval", parents=[common],
                       help="evaluate a model on a prepared dataset")
    p.add_argument("--model", required=True)
    p.add_argument("--dataset", required=True)
    p.add_argument("--out", default=None, help="optional metrics JSON path")

    p = sub.add_parser("predict", parents=[common],
                       help="estimate testability of project classes")
    p.add_argument("--model", required=True)
    p.add_argument("--project", required=True)
    p.add_argument("--class", dest="class_name", default=None,
                   help="fully qualified class name")
    p.add_argument("--all", action="store_true", help="score every class")
    p.add_argument("--out", default=None, help="CSV output path (with --all)")

    p = sub.add_parser("importance", parents=[common],
                       help="permutation feature importance report")
    p.add_argument("--model", required=True)
    p.add_argument("--dataset", required=True)
    p.add_argument("--repeats", type=int, default=100)
    p.add_argument("--top", type=int, default=15)
    p.add_argument("--out", required=True, help="report directory")
    p.add_argument("--no-plots", action="store_true")

    p = sub.add_parser("quality", parents=[common],
                       help="QMOOD attributes and modularity per project/package")
    p.add_argument("--project", required=True)
    p.add_argument("--out", required=True, help="quality.csv output path")

    p = sub.add_parser("demo", parents=[common],
                       help="full pipeline on the bundled fixture corpus")
    p.add_argument("--out", required=True, help="working directory for artifacts")

    return parser


def apply_config(args, parser, argv):
    """Fill non-explicit flags from the --config file."""
    if not getattr(args, "config", None):
        return args
    values = {}
    with open(args.config, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"malformed config line: {line!r}")
            key, _, value = line.partition("=")
            values[key.strip().replace("-", "_")] = value.strip()
    sub_actions = [a for a in parser._subparsers._group_actions][0]
    subparser = sub_actions.choices[args.command]
    explicit = set()
    for action in subparser._actions:
        for opt in action.option_strings:
            if opt in argv:
                explicit.add(action.dest)
    for action in subparser._actions:
        dest = action.dest
        if dest in ("help",) or dest in explicit or dest not in values:
            continue
        raw = values[dest]
        if isinstance(action, argparse._StoreTrueAction):
            setattr(args, dest, raw.lower() in ("1", "true", "yes", "on"))
        elif action.type is not None:
            setattr(args, dest, action.type(raw))
        else:
            setattr(args, dest, raw)
    return args


# ---- subcommand bodies -----------------------------------------------------


def cmd_extract(args):
    manifest_path = args.manifest
    if manifest_path is None:
        manifest_path = os.path.join(os.path.dirname(os.path.abspath(args.out)),
                                     "manifest.txt")
    manifest, rows = run_extract(args.project, args.out, manifest_path)
    print(f"extracted {len(rows)} classes, {len(manifest)} metrics -> {args.out}")
    return 0


def cmd_label(args):
    column_map = None
    if args.columns:
        column_map = {}
        for pair in args.columns.split(","):
            src, _, dst = pair.partition("=")
            if not dst:
                raise ValueError(f"malformed column mapping {pair!r}")
            column_map[src.strip()] = dst.strip()
    scores = LBL.run_label(args.coverage, args.out, column_map=column_map)
    print(f"labeled {len(scores)} classes -> {args.out}")
    return 0


def _load_manifest(path):
    if path:
        return MetricManifest.load(path)
    return build_manifest()


def cmd_prepare(args):
    manifest = _load_manifest(args.manifest)
    prep = DS.prepare(
        args.features, args.labels, manifest,
        variant=args.variant, seed=args.seed,
        train_fraction=args.train_fraction,
        lof_k=args.lof_k, lof_threshold=args.lof_threshold,
    )
    out_dir = os.path.dirname(os.path.abspath(args.out))
    os.makedirs(out_dir, exist_ok=True)
    scaler_path = os.path.join(out_dir, "scaler.json")
    report_path = os.path.join(out_dir, "drop_report.txt")
    DS.write_prepared(prep, args.out, scaler_path, report_path,
                      manifest_hash=manifest.sha256())
    print(f"prepared {prep.train.n} train / {prep.test.n} test rows "
          f"({prep.variant}, {len(prep.train.feature_names)} features) -> {args.out}")
    return 0


def _parse_hidden(spec):
    if isinstance(spec, (list, tuple)):
        return tuple(int(v) for v in spec)
    return tuple(int(s) for s in str(spec).split(",") if s.strip())


def _fit_models(train, args, grid_spec=None):
    X, y = train.feature_matrix, train.targets
    params = {
        "rfr": {"n_estimators": args.rfr_estimators, "max_depth": args.rfr_depth,
                "min_samples_split": args.rfr_min_split},
        "hgbr": {"max_iter": args.hgb_iters, "max_depth": args.hgb_depth,
                 "min_samples_leaf": args.hgb_min_leaf},
        "mlpr": {"hidden_layer_sizes": _parse_hidden(args.mlp_hidden),
                 "epochs": args.mlp_epochs, "batch_size": args.mlp_batch},
        "dtr": {"max_depth": args.dtr_depth, "min_samples_split": args.dtr_min_split},
    }
    cv_tables = {}
    if grid_spec:
        factories = {
            "rfr": lambda p, Xt, yt: RandomForest(seed=args.seed, **p).fit(Xt, yt),
            "hgbr": lambda p, Xt, yt: HistGradientBoosting(**p).fit(Xt, yt),
            "mlpr": lambda p, Xt, yt: Perceptron(
                seed=args.seed,
                **{k: (_parse_hidden(v) if k == "hidden_layer_sizes" else v)
                   for k, v in p.items()}).fit(Xt, yt),
            "dtr": lambda p, Xt, yt: RegressionTree(**p).fit(Xt, yt),
        }
        for family, grid in grid_spec.items():
            if family not in factories:
                continue
            best, table = grid_search_cv(factories[family], grid, X, y,
                                         folds=5, seed=args.seed)
            params[family].update(best)
            cv_tables[family] = table
    models = {
        "rfr": RandomForest(seed=args.seed, **params["rfr"]).fit(X, y),
        "hgbr": HistGradientBoosting(**params["hgbr"]).fit(X, y),
        "mlpr": Perceptron(seed=args.seed, **{
            k: (_parse_hidden(v) if k == "hidden_layer_sizes" and
                not isinstance(v, tuple) else v)
            for k, v in params["mlpr"].items()}).fit(X, y),
        "dtr": RegressionTree(**params["dtr"]).fit(X, y),
    }
    return models, params, cv_tables


def cmd_train(args):
    train, test = DS.load_dataset_csv(args.dataset)
    scaler_path = args.scaler
    if scaler_path is None:
        cand = os.path.join(os.path.dirname(os.path.abspath(args.dataset)),
                            "scaler.json")
        scaler_path = cand if os.path.exists(cand) else None
    if scaler_path:
        with open(scaler_path, encoding="utf-8") as fh:
            blob = json.load(fh)
        scaler = DS.ScalerParams.from_dict(blob)
        manifest_hash = blob.get("manifest_sha256", "")
    else:
        scaler = DS.ScalerParams(
            mean=np.zeros(len(train.feature_names)),
            sd=np.ones(len(train.feature_names)),
            feature_names=list(train.feature_names),
        )
        manifest_hash = ""
    grid_spec = None
    if args.grid:
        with open(args.grid, encoding="utf-8") as fh:
            grid_spec = json.load(fh)
    models, params, cv_tables = _fit_models(train, args, grid_spec)
    if args.weights:
        weights = [float(w) for w in args.weights.split(",")]
    else:
        weights = list(DEFAULT_WEIGHTS)
    ensemble = VotingEnsemble(
        {p: m for p, m in models.items()
         if weights[POSITIONS.index(p)] > 0},
        weights,
    )
    metrics = {}
    if test is not None and test.n >= 2:
        metrics["vor"] = evaluate(ensemble.predict(test.feature_matrix), test.targets)
        for pos, model in models.items():
            metrics[pos] = evaluate(model.predict(test.feature_matrix), test.targets)
        for name in ("vor", "rfr", "hgbr", "mlpr", "dtr"):
            m = metrics[name]
            print(f"{name:>5}: MAE={m['MAE']:.5f} MSE={m['MSE']:.5f} "
                  f"RMSE={m['RMSE']:.5f} MdAE={m['MdAE']:.5f} R2={m['R2']:.5f}")
    save_model(
        args.out,
        models=models,
        weights=ensemble.weights,
        features=train.feature_names,
        scaler=scaler,
        manifest_sha256=manifest_hash,
        seed=args.seed,
        metrics={"test": metrics, "params": params,
                 "cv": cv_tables} if metrics or cv_tables else {"params": params},
    )
    print(f"model -> {args.out}")
    return 0


def cmd_eval(args):
    model = load_model(args.model)
    train, test = DS.load_dataset_csv(args.dataset)
    part = test if test is not None and test.n else train
    if part.feature_names != model.features:
        raise SchemaMismatch("dataset columns do not match the model's features")
    result = evaluate(model.ensemble.predict(part.feature_matrix), part.targets)
    line = (f"VoR: MAE={result['MAE']:.5f} MSE={result['MSE']:.5f} "
            f"RMSE={result['RMSE']:.5f} MdAE={result['MdAE']:.5f} "
            f"R2={result['R2'] if result['r2_defined'] else 'undefined'}")
    print(line)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(result, fh, indent=2, sort_keys=True, default=str)
            fh.write("\n")
    return 0


def cmd_predict(args):
    model = load_model(args.model)
    if not args.all and not args.class_name:
        raise ValueError("predict requires --class <name> or --all")
    if args.all:
        scores = INF.estimate_all(args.project, model)
        rows = [[cid, score] for cid, score in scores.items()]
        if args.out:
            write_csv(args.out, ["class_id", "testability"], rows)
            print(f"predicted {len(rows)} classes -> {args.out}")
        else:
            for cid, score in rows:
                print(f"{cid}, {score}")
    else:
        score = INF.estimate_testability(args.class_name, args.project, model)
        print(f"{args.class_name}, {score}")
    return 0


def cmd_importance(args):
    model = load_model(args.model)
    train, test = DS.load_dataset_csv(args.dataset)
    part = test if test is not None and test.n else train
    if part.feature_names != model.features:
        raise SchemaMismatch("dataset columns do not match the model's features")
    result = permutation_importance(model.ensemble, part,
                                    repeats=args.repeats, seed=args.seed)
    ranked = importance_report(result, part, args.out, top=args.top,
                               make_plots=not args.no_plots)
    if not ranked:
        sys.stderr.write("warning: no features to report\n")
    print(f"importance report ({len(ranked)} features) -> {args.out}")
    return 0


def cmd_quality(args):
    from testlab.metrics.classes import analyze_project, build_project_index
    from testlab.metrics.extract import class_metric_map, parse_project

    units, _lex = parse_project(args.project)
    index = build_project_index(units)
    analyses = analyze_project(index)
    if not analyses:
        raise ValueError(f"no classes found under {args.project}")
    metric_maps = {q: class_metric_map(a, analyses) for q, a in analyses.items()}
    packages = {q: index.by_qname[q].package for q in analyses}
    mdg = build_mdg(analyses, packages)
    q_all = modularity(mdg)

    rows = []
    d = design_metrics_from_classes(list(metric_maps.values()))
    rows.append(["project", args.project, reusability(d), functionality(d),
                 extendibility(d), q_all])
    for package in sorted(set(packages.values())):
        members = [q for q, p in packages.items() if p == package]
        dm = design_metrics_from_classes([metric_maps[q] for q in members])
        node_idx = [mdg.nodes.index(q) for q in members]
        sub_nodes = [mdg.nodes[i] for i in node_idx]
        sub_adj = mdg.adjacency[np.ix_(node_idx, node_idx)]
        from testlab.quality import ModuleDependencyGraph

        sub = ModuleDependencyGraph(sub_nodes, sub_adj, [package] * len(sub_nodes))
        rows.append(["package", package, reusability(dm), functionality(dm),
                     extendibility(dm), modularity(sub)])
    write_csv(args.out, ["scope_type", "scope", "reusability", "functionality",
                         "extendibility", "modularity"], rows)
    print(f"quality attributes ({len(rows)} rows) -> {args.out}")
    return 0


# ---- demo -------------------------------------------------------------------


def demo_project_dir():
    return os.path.join(os.path.dirname(os.path.abspath(__file__)),
                        "fixtures", "demo_project")


def synthesize_coverage(features_path, coverage_path, seed, runs=3):
    """Deterministic synthetic coverage for the fixture corpus.

    Coverage shrinks with size and complexity so the learned model has
    real signal; three pseudo-runs per class mimic generator variance.
    """
    header, rows = read_csv(features_path)
    idx = {h: i for i, h in enumerate(header)}
    out = []
    for row in rows:
        cid = row[0]
        loc = float(row[idx["CSLOC"]])
        cc = float(row[idx["CC_Sum_All"]])
        nom = max(1.0, float(row[idx["CSNOM"]]))
        rng = np.random.default_rng((seed, zlib.crc32(cid.encode("utf-8"))))
        for run in range(1, runs + 1):
            base = 1.0 / (1.0 + 0.012 * loc + 0.03 * cc)
            line = float(np.clip(0.55 + 0.5 * base + rng.normal(0, 0.04), 0, 1))
            branch = float(np.clip(line - 0.08 + rng.normal(0, 0.04), 0, 1))
            mutation = float(np.clip(line - 0.15 + rng.normal(0, 0.05), 0, 1))
            suite = max(0.0, np.floor(nom * (0.8 + 0.12 * cc / nom)
                                      + rng.integers(0, 3)))
            gen_time = float(np.clip(0.4 + 0.05 * suite + 0.02 * cc
                                     + rng.normal(0, 0.1), 0.1, 6.0))
            out.append([cid, run, line, branch, mutation, suite, nom, gen_time])
    write_csv(coverage_path,
              ["class_id", "run_id", "line", "branch", "mutation",
               "suite_size", "nom", "gen_time_minutes"], out)
    return len(rows)


def cmd_demo(args):
    t0 = time.perf_counter()
    out = args.out
    os.makedirs(out, exist_ok=True)
    project = demo_project_dir()
    ns = argparse.Namespace

    features = os.path.join(out, "features.csv")
    manifest_txt = os.path.join(out, "manifest.txt")
    cmd_extract(ns(project=project, out=features, manifest=manifest_txt))

    coverage = os.path.join(out, "coverage.csv")
    n = synthesize_coverage(features, coverage, args.seed)
    print(f"synthesized coverage for {n} classes -> {coverage}")

    labels = os.path.join(out, "labels.csv")
    cmd_label(ns(coverage=coverage, out=labels, columns=None))

    dataset_csv = os.path.join(out, "dataset.csv")
    cmd_prepare(ns(features=features, labels=labels, out=dataset_csv,
                   variant="DS2", seed=args.seed, train_fraction=0.7,
                   lof_k=5, lof_threshold=2.5, manifest=manifest_txt))

    model_json = os.path.join(out, "model.json")
    cmd_train(ns(dataset=dataset_csv, out=model_json, scaler=None, grid=None,
                 weights=None, seed=args.seed,
                 rfr_estimators=40, rfr_depth=10, rfr_min_split=2,
                 hgb_iters=80, hgb_depth=4, hgb_min_leaf=3,
                 mlp_hidden="8", mlp_epochs=300, mlp_batch=32,
                 dtr_depth=8, dtr_min_split=4))

    predictions = os.path.join(out, "predictions.csv")
    cmd_predict(ns(model=model_json, project=project, class_name=None,
                   all=True, out=predictions))

    print(f"demo finished in {time.perf_counter() - t0:.1f}s -> {out}")
    return 0


COMMANDS = {
    "extract": cmd_extract,
    "label": cmd_label,
    "prepare": cmd_prepare,
    "train": cmd_train,
    "eval": cmd_eval,
    "predict": cmd_predict,
    "importance": cmd_importance,
    "quality": cmd_quality,
    "demo": cmd_demo,
}


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    if not args.command:
        parser.print_usage(sys.stderr)
        return 1
    try:
        args = apply_config(args, parser, argv)
        return COMMANDS[args.command](args)
    except DATA_ERRORS as exc:
        sys.stderr.write(f"testlab {args.command}: error: {exc}\n")
        return 2
    except Exception as exc:  # never a bare stack trace
        sys.stderr.write(f"testlab {args.command}: unexpected error: "
                         f"{type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
