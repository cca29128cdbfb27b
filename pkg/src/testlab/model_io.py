"""Model persistence: one versioned JSON file.

Stores the manifest hash, the feature column order, the fitted scaler,
per-model parameters, and the voting weights. Everything needed to score
a raw feature vector at inference time.
"""

import json
from dataclasses import dataclass

from testlab.dataset import ScalerParams
from testlab.learners.ensemble import POSITIONS, VotingEnsemble
from testlab.learners.forest import RandomForest
from testlab.learners.hgb import HistGradientBoosting
from testlab.learners.mlp import Perceptron
from testlab.learners.tree import RegressionTree

MODEL_FORMAT = "testlab-model/1"

_CODECS = {
    "rfr": RandomForest,
    "hgbr": HistGradientBoosting,
    "mlpr": Perceptron,
    "dtr": RegressionTree,
}


@dataclass
class LoadedModel:
    ensemble: VotingEnsemble
    features: list
    scaler: ScalerParams
    manifest_sha256: str
    weights: list
    seed: int
    metrics: dict


def save_model(path, *, models, weights, features, scaler, manifest_sha256,
               seed, metrics=None):
    payload = {
        "format": MODEL_FORMAT,
        "seed": seed,
        "manifest_sha256": manifest_sha256,
        "features": list(features),
        "scaler": scaler.to_dict(),
        "weights": [float(w) for w in weights],
        "metrics": metrics or {},
        "models": {},
    }
    for pos, model in models.items():
        if pos not in POSITIONS:
            raise ValueError(f"unknown model position {pos!r}")
        if pos == "dtr" and isinstance(model, RegressionTree):
            payload["models"][pos] = model.to_dict() | {"kind": "dtr"}
        else:
            payload["models"][pos] = model.to_dict()
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True)
        fh.write("\n")


def load_model(path):
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    if payload.get("format") != MODEL_FORMAT:
        raise ValueError(f"unsupported model format: {payload.get('format')!r}")
    models = {}
    for pos, blob in payload["models"].items():
        models[pos] = _CODECS[pos].from_dict(blob)
    weights = payload["weights"]
    voting = {p: m for p, m in models.items()
              if weights[POSITIONS.index(p)] > 0}
    ensemble = VotingEnsemble(voting, weights)
    return LoadedModel(
        ensemble=ensemble,
        features=list(payload["features"]),
        scaler=ScalerParams.from_dict(payload["scaler"]),
        manifest_sha256=payload["manifest_sha256"],
        weights=list(weights),
        seed=payload.get("seed", 0),
        metrics=payload.get("metrics", {}),
    )
