"""Static code and test metrics versus test effectiveness."""

from ._core import (
    TestabilityError,
    auc,
    average_ranks,
    evaluate,
    extract,
    independent_metrics,
    metric_names,
    quartiles,
    rank_features,
    run_pipeline,
    spearman,
)

__all__ = [
    "TestabilityError",
    "auc",
    "average_ranks",
    "evaluate",
    "extract",
    "independent_metrics",
    "metric_names",
    "quartiles",
    "rank_features",
    "run_pipeline",
    "spearman",
]
