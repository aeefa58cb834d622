"""
Extremal Index and Cluster Index Estimators

Window statistics over the n - h full windows X_j..X_{j+h}, thresholded
at u = X_{n:n-k}:

    theta_hat(h)   = (1/hk) #{j : max(X_j..X_{j+h}) > u}
    theta_tilde(h) = (1/k)  #{i : max(X_i..X_{i+h-1}) <= u, X_{i+h} > u}
    b_hat(h)       = (1/hk) #{j : X_j + ... + X_{j+h} > u}

Each record carries the raw window count in auxiliary['count'].
"""

import logging
from typing import Optional

import numpy as np

from tailchain.estimators.records import EstimateRecord
from tailchain.exceptions import ValidationError, format_validation_error
from tailchain.models.base import as_array
from tailchain.tailcore.threshold import check_k, order_statistic
from tailchain.tailcore.ted import window_view

logger = logging.getLogger(__name__)


def _windows(x: np.ndarray, h: int, k: int, max_windows: Optional[int]) -> tuple:
    if isinstance(h, bool) or int(h) != h or h < 1:
        raise ValidationError(format_validation_error('h', h, 'must be an integer >= 1'))
    if x.size <= h:
        raise ValidationError(format_validation_error('h', h, f'must be < n = {x.size}'))
    k = check_k(k, x.size)
    u = order_statistic(x, k)
    windows = window_view(x, h)
    if max_windows is not None:
        if not 1 <= max_windows <= windows.shape[0]:
            raise ValidationError(format_validation_error(
                'max_windows', max_windows, f'must lie in [1, {windows.shape[0]}]'))
        windows = windows[:max_windows]
    return windows, u, k


def extremal_index_hat(sample, h: int, k: int, max_windows: Optional[int] = None) -> EstimateRecord:
    """
    Running-maxima estimator of theta_+(h).

    Args:
        sample: PathSample or 1-d array
        h: Lag count, h >= 1
        k: Intermediate order index
        max_windows: Restrict to the first max_windows windows (matched index ranges)

    Returns:
        EstimateRecord; auxiliary has 'threshold' and 'count'

    Example:
        >>> x = np.zeros(11); x[5] = 10.0
        >>> extremal_index_hat(x, 2, 1).value
        1.5
    """
    x = as_array(sample)
    windows, u, k = _windows(x, h, k, max_windows)
    count = int(np.count_nonzero(windows.max(axis=1) > u))
    return EstimateRecord(name='extremal_index_hat', value=count / (h * k), k=k, h=int(h), n=x.size,
                          auxiliary={'threshold': u, 'count': float(count)})


def extremal_index_tilde(sample, h: int, k: int, max_windows: Optional[int] = None) -> EstimateRecord:
    """
    Estimator counting exceedances preceded by h non-exceedances, normalized by k.
    """
    x = as_array(sample)
    windows, u, k = _windows(x, h, k, max_windows)
    quiet = windows[:, :-1].max(axis=1) <= u
    count = int(np.count_nonzero(quiet & (windows[:, -1] > u)))
    return EstimateRecord(name='extremal_index_tilde', value=count / k, k=k, h=int(h), n=x.size,
                          auxiliary={'threshold': u, 'count': float(count)})


def cluster_index_hat(sample, h: int, k: int, max_windows: Optional[int] = None) -> EstimateRecord:
    """
    Window-sum estimator of the cluster index b_+(h).
    """
    x = as_array(sample)
    windows, u, k = _windows(x, h, k, max_windows)
    count = int(np.count_nonzero(windows.sum(axis=1) > u))
    return EstimateRecord(name='cluster_index', value=count / (h * k), k=k, h=int(h), n=x.size,
                          auxiliary={'threshold': u, 'count': float(count)})
