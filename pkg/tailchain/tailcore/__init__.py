"""Order statistics, thresholds and (weighted) tail empirical distributions and processes."""

from tailchain.tailcore.threshold import ResolvedThreshold, ThresholdSpec, check_k, order_statistic
from tailchain.tailcore.ted import (
    TailFunctionEval,
    ted_grid,
    ted_multivariate,
    tep,
    univariate_ted,
    weighted_ted,
    window_view,
)
from tailchain.tailcore.weights import WeightFn

__all__ = [
    'ResolvedThreshold', 'TailFunctionEval', 'ThresholdSpec', 'WeightFn', 'check_k',
    'order_statistic', 'ted_grid', 'ted_multivariate', 'tep', 'univariate_ted',
    'weighted_ted', 'window_view',
]
