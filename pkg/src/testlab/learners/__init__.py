"""From-scratch regression stack and model selection utilities."""

from testlab.learners.ensemble import VotingEnsemble
from testlab.learners.evaluation import evaluate
from testlab.learners.forest import RandomForest
from testlab.learners.hgb import HistGradientBoosting
from testlab.learners.mlp import Perceptron
from testlab.learners.tree import RegressionTree

__all__ = [
    "RegressionTree",
    "RandomForest",
    "HistGradientBoosting",
    "Perceptron",
    "VotingEnsemble",
    "evaluate",
]
