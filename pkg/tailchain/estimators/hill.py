"""
Hill Estimator and Extreme Quantile Extrapolation

gamma_hat = (1/k) sum_{j=1..k} log_+(X_{n:n-j+1} / X_{n:n-k}) estimates 1/alpha;
the extrapolated quantile of order p < k/n is X_{n:n-k} (k/(np))^gamma_hat.
"""

import logging

import numpy as np

from tailchain.estimators.records import EstimateRecord
from tailchain.exceptions import (
    ExtrapolationDirectionError,
    UndefinedEstimatorError,
    ValidationError,
    format_validation_error,
)
from tailchain.models.base import as_array
from tailchain.tailcore.threshold import check_k

logger = logging.getLogger(__name__)


def top_order_statistics(x: np.ndarray, k: int) -> tuple:
    """Return (X_{n:n-k}, the k largest values) using one partial sort."""
    n = x.size
    part = np.partition(x, n - k - 1)
    return float(part[n - k - 1]), part[n - k:]


def hill(sample, k: int) -> EstimateRecord:
    """
    Hill estimator of gamma = 1/alpha.

    Args:
        sample: PathSample or 1-d array
        k: Number of upper order statistics, 1 <= k <= n - 1

    Returns:
        EstimateRecord with the threshold X_{n:n-k} in auxiliary['threshold']

    Raises:
        ThresholdRangeError: If k is out of range
        UndefinedEstimatorError: If X_{n:n-k} <= 0

    Example:
        >>> round(hill([1.0, 2.0, 4.0, 8.0], 2).value, 4)
        1.0397
    """
    x = as_array(sample)
    n = x.size
    k = check_k(k, n)
    u, top = top_order_statistics(x, k)
    if u <= 0:
        raise UndefinedEstimatorError(f"Hill estimator undefined: threshold X_(n-k) = {u:g} <= 0")
    gamma = float(np.mean(np.maximum(np.log(top / u), 0.0)))
    return EstimateRecord(name='hill', value=gamma, k=k, h=0, n=n, auxiliary={'threshold': u})


def hill_exponent(x: np.ndarray, k: int) -> EstimateRecord:
    """Hill record that additionally rejects a zero estimate (needed for extrapolation)."""
    record = hill(x, k)
    if record.value == 0:
        raise UndefinedEstimatorError("Hill estimate is zero; tail index 1/gamma_hat is undefined")
    return record


def extrapolation_factor(n: int, k: int, p: float) -> float:
    """k / (n p), required to be >= 1; p == k/n is tolerated up to rounding."""
    k = check_k(k, n)
    if not 0 < p < 1:
        raise ValidationError(format_validation_error('p', p, 'must lie in (0, 1)'))
    factor = k / (n * p)
    if factor < 1.0 - 1e-12:
        raise ExtrapolationDirectionError(f"p = {p:g} exceeds k/n = {k / n:g}; extrapolation must go outward")
    return max(factor, 1.0)


def extreme_quantile(sample, k: int, p: float) -> float:
    """
    Extrapolated quantile X_{n:n-k} (k/(np))^gamma_hat of order p.

    p = k/n is accepted and returns X_{n:n-k}; only p > k/n is rejected.

    Raises:
        ExtrapolationDirectionError: If p > k/n
        UndefinedEstimatorError: If the Hill estimate is zero
    """
    x = as_array(sample)
    factor = extrapolation_factor(x.size, k, p)
    record = hill_exponent(x, k)
    value = float(record.auxiliary['threshold'] * factor ** record.value)
    logger.debug(f"Extreme quantile p={p:g}: {value:g} (k={k}, gamma={record.value:.4f})")
    return value
