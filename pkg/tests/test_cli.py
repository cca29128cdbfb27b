import json
import os

from testlab.cli import main


def write_coverage(path, extra_row=None):
    rows = [
        "class_id,run_id,line,branch,suite_size,nom,gen_time_minutes",
        "p.A,1,0.8,0.6,10,5,6",
        "p.A,2,0.6,0.5,9,5,5",
        "p.B,1,1.0,1.0,2,5,0.5",
    ]
    if extra_row:
        rows.append(extra_row)
    path.write_text("\n".join(rows) + "\n")


def test_label_happy_path(tmp_path, capsys):
    cov = tmp_path / "cov.csv"
    write_coverage(cov)
    out = tmp_path / "labels.csv"
    code = main(["label", "--coverage", str(cov), "--out", str(out)])
    assert code == 0
    assert out.exists()
    assert "labeled 2 classes" in capsys.readouterr().out


def test_unknown_subcommand_exits_one(capsys):
    assert main(["frobnicate"]) == 1
    assert main([]) == 1


def test_missing_required_flag_exits_one(capsys):
    assert main(["label", "--coverage", "x.csv"]) == 1


def test_invalid_coverage_level_exits_two(tmp_path, capsys):
    cov = tmp_path / "cov.csv"
    write_coverage(cov, extra_row="p.C,1,1.3,0.5,4,4,2")
    out = tmp_path / "labels.csv"
    code = main(["label", "--coverage", str(cov), "--out", str(out)])
    assert code == 2
    err = capsys.readouterr().err
    assert "row 5" in err
    assert "line" in err


def test_missing_file_exits_two(tmp_path, capsys):
    code = main(["label", "--coverage", str(tmp_path / "nope.csv"),
                 "--out", str(tmp_path / "o.csv")])
    assert code == 2


def test_config_file_supplies_flags(tmp_path, capsys):
    cov = tmp_path / "cov.csv"
    write_coverage(cov)
    out = tmp_path / "labels.csv"
    cfg = tmp_path / "run.cfg"
    cfg.write_text(f"coverage = {cov}\nout = {out}\n")
    code = main(["label", "--coverage", str(cov), "--out", str(out),
                 "--config", str(cfg)])
    assert code == 0
    # config value used when the flag is omitted: different out path
    out2 = tmp_path / "labels2.csv"
    cfg2 = tmp_path / "run2.cfg"
    cfg2.write_text(f"out = {out2}\n")
    code = main(["label", "--coverage", str(cov), "--out", str(tmp_path / "ignored.csv"),
                 "--config", str(cfg2)])
    assert code == 0


def test_extract_writes_features_and_manifest(tmp_path, demo_project_dir, capsys):
    out = tmp_path / "features.csv"
    manifest = tmp_path / "manifest.txt"
    code = main(["extract", "--project", demo_project_dir, "--out", str(out),
                 "--manifest", str(manifest)])
    assert code == 0
    header = out.read_text().splitlines()[0]
    assert header.startswith("class_id,")
    assert manifest.read_text().startswith("# testlab-manifest/1")


def test_quality_csv(tmp_path, demo_project_dir, capsys):
    out = tmp_path / "quality.csv"
    code = main(["quality", "--project", demo_project_dir, "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "scope_type,scope,reusability,functionality,extendibility,modularity"
    assert len(lines) == 1 + 1 + 4  # header + project + 4 packages


def test_full_pipeline_via_cli(tmp_path, demo_project_dir, capsys):
    features = tmp_path / "features.csv"
    manifest = tmp_path / "manifest.txt"
    assert main(["extract", "--project", demo_project_dir, "--out",
                 str(features), "--manifest", str(manifest)]) == 0

    from testlab.cli import synthesize_coverage

    coverage = tmp_path / "coverage.csv"
    synthesize_coverage(str(features), str(coverage), seed=7)
    labels = tmp_path / "labels.csv"
    assert main(["label", "--coverage", str(coverage), "--out", str(labels)]) == 0

    dataset = tmp_path / "dataset.csv"
    assert main(["prepare", "--features", str(features), "--labels", str(labels),
                 "--out", str(dataset), "--variant", "DS2", "--seed", "7",
                 "--lof-k", "5", "--manifest", str(manifest)]) == 0

    model = tmp_path / "model.json"
    assert main(["train", "--dataset", str(dataset), "--out", str(model),
                 "--seed", "7",
                 "--rfr-estimators", "10", "--rfr-depth", "6",
                 "--hgb-iters", "20", "--hgb-depth", "3", "--hgb-min-leaf", "2",
                 "--mlp-hidden", "8", "--mlp-epochs", "30", "--mlp-batch", "16",
                 "--dtr-depth", "4", "--dtr-min-split", "4"]) == 0
    blob = json.loads(model.read_text())
    assert blob["format"] == "testlab-model/1"
    assert blob["weights"][:3] == [0.0, 0.0, 0.0]

    assert main(["eval", "--model", str(model), "--dataset", str(dataset)]) == 0

    pred_out = tmp_path / "pred.csv"
    assert main(["predict", "--model", str(model), "--project", demo_project_dir,
                 "--all", "--out", str(pred_out)]) == 0
    lines = pred_out.read_text().splitlines()
    assert lines[0] == "class_id,testability"
    assert len(lines) == 31
    for line in lines[1:]:
        value = float(line.split(",")[1])
        assert 0.0 <= value <= 1.0

    assert main(["predict", "--model", str(model), "--project", demo_project_dir,
                 "--class", "com.demo.core.Planner"]) == 0
    out = capsys.readouterr().out
    assert "com.demo.core.Planner, " in out

    report = tmp_path / "report"
    assert main(["importance", "--model", str(model), "--dataset", str(dataset),
                 "--repeats", "5", "--top", "5", "--out", str(report),
                 "--no-plots", "--seed", "7"]) == 0
    assert (report / "importance.csv").exists()


def test_predict_requires_class_or_all(tmp_path, demo_project_dir, capsys):
    # missing both --class and --all is a data/usage error -> exit 2
    model = tmp_path / "model.json"
    model.write_text("{}")
    code = main(["predict", "--model", str(model), "--project", demo_project_dir])
    assert code == 2
