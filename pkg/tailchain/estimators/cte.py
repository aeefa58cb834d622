"""
Conditional Tail Expectation

C_hat(h) = (1 / (k X_{n:n-k})) sum_{j=1..n-h} X_{j+h} 1{X_j > X_{n:n-k}}, and
its extrapolation to a level of order p via the Hill estimate.
"""

import logging

import numpy as np

from tailchain.estimators.hill import extrapolation_factor, hill_exponent
from tailchain.estimators.records import EstimateRecord
from tailchain.exceptions import UndefinedEstimatorError, ValidationError, format_validation_error
from tailchain.models.base import as_array
from tailchain.tailcore.threshold import check_k, order_statistic

logger = logging.getLogger(__name__)


def _lagged_exceedance_sum(x: np.ndarray, h: int, k: int) -> tuple:
    if isinstance(h, bool) or int(h) != h or h < 0:
        raise ValidationError(format_validation_error('h', h, 'must be an integer >= 0'))
    n = x.size
    k = check_k(k, n, upper=n - 1 - h)
    u = order_statistic(x, k)
    if u <= 0:
        raise UndefinedEstimatorError(f"CTE undefined: threshold X_(n-k) = {u:g} <= 0")
    anchors = x[:n - h] > u
    total = float(np.sum(x[h:][anchors]))
    return total, u, k


def cte_hat(sample, h: int, k: int) -> EstimateRecord:
    """
    Conditional tail expectation estimator.

    Args:
        sample: PathSample or 1-d array
        h: Lag, h >= 0
        k: Intermediate order index, 1 <= k <= n - 1 - h

    Returns:
        EstimateRecord; auxiliary has 'threshold'

    Example:
        >>> cte_hat([1.0, 2.0, 3.0, 4.0, 10.0], 0, 1).value
        2.5
    """
    x = as_array(sample)
    total, u, k = _lagged_exceedance_sum(x, h, k)
    return EstimateRecord(name='cte', value=total / (k * u), k=k, h=int(h), n=x.size,
                          auxiliary={'threshold': u})


def cte_extrapolated(sample, h: int, k: int, p: float) -> float:
    """
    (k/(np))^gamma_hat (1/k) sum_j X_{j+h} 1{X_j > X_{n:n-k}}.

    Raises:
        ExtrapolationDirectionError: If p > k/n
        UndefinedEstimatorError: On a nonpositive threshold or zero Hill estimate
    """
    x = as_array(sample)
    factor = extrapolation_factor(x.size, k, p)
    total, _, k = _lagged_exceedance_sum(x, h, k)
    gamma = hill_exponent(x, k).value
    value = float(factor ** gamma * total / k)
    logger.debug(f"Extrapolated CTE p={p:g}, h={h}: {value:g}")
    return value
