"""Naive Bayes anomaly monitoring over mixed binary/continuous process data."""

from .classifier import (
    BernoulliOnlyNB,
    GaussianOnlyNB,
    ModelBundle,
    ScoreBreakdown,
    WeightedMixedNB,
    load_model,
    save_model,
    train_on_dataset,
)
from .evaluation import EvaluationReport, evaluate
from .schema import Dataset, DatasetSchema, VariableKind, VariableSpec, parse_csv
from .simulate import SimulationPlan, default_plan, generate
from .weights import FeatureWeightReport

__version__ = "0.1.0"

__all__ = [
    "BernoulliOnlyNB",
    "Dataset",
    "DatasetSchema",
    "EvaluationReport",
    "FeatureWeightReport",
    "GaussianOnlyNB",
    "ModelBundle",
    "ScoreBreakdown",
    "SimulationPlan",
    "VariableKind",
    "VariableSpec",
    "WeightedMixedNB",
    "default_plan",
    "evaluate",
    "generate",
    "load_model",
    "parse_csv",
    "save_model",
    "train_on_dataset",
]
