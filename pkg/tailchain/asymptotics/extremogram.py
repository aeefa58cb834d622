"""
Empirical Extremogram and Anticlustering Diagnostic

c_hat_j(v, w) = #{t : X_t > u v, X_{t+j} > u w} / k with u = X_{n:n-k},
and partial sums of conditional joint exceedance frequencies at a fixed
level as an empirical check of the anticlustering condition.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable

import numpy as np
import pandas as pd

from tailchain.exceptions import InsufficientExceedancesError, ValidationError, format_validation_error
from tailchain.models.base import as_array
from tailchain.tailcore.threshold import check_k, order_statistic

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Extremogram:
    """
    Empirical extremogram c_hat_j(v, w) for lags 0..L.

    Attributes:
        values: Array indexed by lag; values[0] is c_hat_0
        v, w: Arguments of the joint exceedance event
        threshold: Level u used
        k: Order index (normalizer)
        n: Sample size
    """

    values: np.ndarray
    v: float
    w: float
    threshold: float
    k: int
    n: int
    metadata: Dict[str, float] = field(default_factory=dict)

    @property
    def max_lag(self) -> int:
        return int(self.values.size - 1)

    @property
    def lags(self) -> np.ndarray:
        return np.arange(self.values.size)

    def __getitem__(self, lag: int) -> float:
        return float(self.values[lag])

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({'lag': self.lags, 'value': self.values})

    def summary(self) -> dict:
        return {'v': self.v, 'w': self.w, 'threshold': self.threshold, 'k': self.k, 'n': self.n,
                'max_lag': self.max_lag, **self.metadata}


def joint_exceedance_counts(x: np.ndarray, upper_v: float, upper_w: float, max_lag: int) -> np.ndarray:
    """#{t : X_t > upper_v, X_{t+j} > upper_w} for j = 0..max_lag."""
    first = x > upper_v
    second = x > upper_w
    counts = np.empty(max_lag + 1, dtype=np.int64)
    n = x.size
    for j in range(max_lag + 1):
        counts[j] = np.count_nonzero(first[:n - j] & second[j:])
    return counts


def extremogram(sample, v: float, w: float, k: int, max_lag: int) -> Extremogram:
    """
    Empirical extremogram at u = X_{n:n-k}.

    Args:
        sample: PathSample or 1-d array
        v, w: Positive arguments
        k: Intermediate order index
        max_lag: Largest lag L, L < n/2

    Returns:
        Extremogram with values for lags 0..L

    Example:
        >>> x = np.arange(1.0, 101.0)
        >>> extremogram(x, 1.0, 1.0, 10, 3)[0]
        1.0
    """
    x = as_array(sample)
    n = x.size
    if not (0 < v and 0 < w):
        raise ValidationError(format_validation_error('v/w', (v, w), 'must be positive'))
    if isinstance(max_lag, bool) or int(max_lag) != max_lag or not 0 <= max_lag < n / 2:
        raise ValidationError(format_validation_error('max_lag', max_lag, f'must satisfy 0 <= L < n/2 = {n / 2:g}'))
    k = check_k(k, n)
    u = order_statistic(x, k)
    counts = joint_exceedance_counts(x, u * v, u * w, int(max_lag))
    logger.debug(f"Extremogram: n={n}, k={k}, u={u:g}, L={max_lag}")
    return Extremogram(values=counts / k, v=float(v), w=float(w), threshold=u, k=k, n=n)


def conditional_exceedance_frequencies(sample, u: float, max_lag: int) -> np.ndarray:
    """
    #{t : X_t > u, X_{t+j} > u} / #{t : X_t > u} for j = 1..max_lag.

    Every lag shares the denominator, so with u = X_{n:n-k} the lag-j
    frequency equals the extremogram value c_hat_j(1, 1).

    Raises:
        InsufficientExceedancesError: If no value exceeds u
    """
    x = as_array(sample)
    exceed = x > u
    n_exceed = np.count_nonzero(exceed)
    if not n_exceed:
        raise InsufficientExceedancesError(f"No exceedance of level u={u:g}", required=1, actual=0)
    counts = joint_exceedance_counts(x, u, u, int(max_lag))
    return counts[1:] / n_exceed


def anticlustering_diagnostic(sample, u: float, r: int, m_grid: Iterable[int]) -> Dict[int, float]:
    """
    Partial sums sum_{j=m..r} P_hat(X_j > u | X_0 > u) for each m in m_grid.

    Purely diagnostic: small values that decrease in m are consistent with
    the anticlustering condition; no verdict is returned.

    Args:
        sample: PathSample or 1-d array
        u: Level
        r: Window length, r < n/2
        m_grid: Starting lags, 1 <= m <= r

    Returns:
        Mapping m -> partial sum

    Raises:
        InsufficientExceedancesError: If no value exceeds u
    """
    x = as_array(sample)
    if isinstance(r, bool) or int(r) != r or not 1 <= r < x.size / 2:
        raise ValidationError(format_validation_error('r', r, f'must satisfy 1 <= r < n/2 = {x.size / 2:g}'))
    freqs = conditional_exceedance_frequencies(x, u, int(r))
    tails = np.cumsum(freqs[::-1])[::-1]
    out: Dict[int, float] = {}
    for m in m_grid:
        if isinstance(m, bool) or int(m) != m or not 1 <= m <= r:
            raise ValidationError(format_validation_error('m', m, f'must lie in [1, {r}]'))
        out[int(m)] = float(tails[int(m) - 1])
    return out
