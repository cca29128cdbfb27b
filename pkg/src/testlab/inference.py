"""Per-class testability estimation.

Simple classes (fewer than 5 lines) and data classes (no real methods
but at least one attribute) are trivially testable and short-circuit to
1.0 without touching the model. Everything else goes through the
persisted scaler and the voting ensemble, and the output is clamped to
[0, 1].
"""

import numpy as np

from testlab.dataset import apply_scaler
from testlab.metrics.extract import extract_project


class ClassNotFound(KeyError):
    pass


class ManifestMismatch(ValueError):
    pass


def is_trivial(metric_row):
    """Simple-class or data-class predicate on raw metric values."""
    simple = metric_row["CSLOC"] < 5
    data_class = (metric_row["CSNOMNAMM"] == 0
                  and metric_row["CSNOIA"] + metric_row["CSNOSA"] > 0)
    return simple or data_class


def estimate_from_metrics(metric_row, model):
    """Score one raw (unscaled) metric map with a loaded model."""
    if is_trivial(metric_row):
        return 1.0
    vector = np.asarray([[float(metric_row[name]) for name in model.features]])
    z = apply_scaler(model.scaler, vector)
    raw = float(model.ensemble.predict(z)[0])
    return min(max(raw, 0.0), 1.0)


def extract_rows(project_dir, model):
    """Extract the project and validate the schema against the model."""
    manifest, rows = extract_project(project_dir)
    if model.manifest_sha256 and manifest.sha256() != model.manifest_sha256:
        raise ManifestMismatch(
            "extractor manifest does not match the model's manifest hash"
        )
    return {cid: dict(zip(manifest.names, vec)) for cid, vec in rows}


def estimate_testability(class_id, project_dir, model):
    """Algorithm entry point: extract, shortcut or predict, clamp."""
    table = extract_rows(project_dir, model)
    if class_id not in table:
        raise ClassNotFound(class_id)
    return estimate_from_metrics(table[class_id], model)


def estimate_all(project_dir, model):
    table = extract_rows(project_dir, model)
    return {cid: estimate_from_metrics(row, model)
            for cid, row in sorted(table.items())}
