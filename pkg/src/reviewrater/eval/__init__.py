"""Evaluation protocol: folds, metrics, synthetic corpora, experiments."""

from reviewrater.eval.folds import (
    FoldPlan,
    SplitError,
    cross_domain_split,
    in_domain_split,
    make_fold_plan,
)
from reviewrater.eval.metrics import mae, rmse
from reviewrater.eval.synth import SynthConfig, SynthDomain, default_rating_rule, synth_corpus
from reviewrater.eval.experiment import (
    AggregateRow,
    ExperimentConfig,
    ExperimentReport,
    FoldRow,
    run_experiment,
)

__all__ = [
    "AggregateRow",
    "ExperimentConfig",
    "ExperimentReport",
    "FoldPlan",
    "FoldRow",
    "SplitError",
    "SynthConfig",
    "SynthDomain",
    "cross_domain_split",
    "default_rating_rule",
    "in_domain_split",
    "mae",
    "make_fold_plan",
    "rmse",
    "run_experiment",
    "synth_corpus",
]
