"""
Order Statistics and Threshold Resolution

A ThresholdSpec is either an explicit level u or an intermediate order
index k. Resolving it on a sample yields the level u together with the
normalizer D used by every tail empirical quantity: D = k for order
statistics, the empirical exceedance count for levels, or n * P(X > u)
when the marginal tail is known.
"""

import logging
import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from tailchain.exceptions import (
    DegenerateThresholdWarning,
    ThresholdRangeError,
    ValidationError,
    format_validation_error,
)
from tailchain.models.base import as_array

logger = logging.getLogger(__name__)


def check_k(k: int, n: int, upper: Optional[int] = None) -> int:
    """Require 1 <= k <= upper (default n - 1)."""
    upper = n - 1 if upper is None else upper
    if isinstance(k, bool) or int(k) != k or not 1 <= k <= upper:
        raise ThresholdRangeError(f"k must be an integer in [1, {upper}] for n={n}, got {k}", k=k, n=n)
    return int(k)


def order_statistic(sample, k: int) -> float:
    """
    X_{n:n-k}, the (k+1)-th largest value, by partial selection.

    Args:
        sample: PathSample or 1-d array of length n
        k: Intermediate order index, 1 <= k <= n - 1

    Returns:
        The (n-k)-th smallest value

    Raises:
        ThresholdRangeError: If k is out of range

    Example:
        >>> order_statistic([5.0, 1.0, 3.0], 1)
        3.0
    """
    x = as_array(sample)
    n = x.size
    k = check_k(k, n)
    pos = n - k - 1
    return float(np.partition(x, pos)[pos])


@dataclass(frozen=True)
class ResolvedThreshold:
    """A threshold resolved on a concrete sample."""

    u: float
    normalizer: float
    n: int
    k: Optional[int] = None
    kind: str = 'level'

    @property
    def degenerate(self) -> bool:
        return self.normalizer <= 0

    def to_dict(self) -> dict:
        return {'kind': self.kind, 'u': self.u, 'normalizer': self.normalizer, 'n': self.n, 'k': self.k}


@dataclass(frozen=True)
class ThresholdSpec:
    """
    Threshold given as a level or as an order-statistic index.

    Attributes:
        kind: 'level' or 'order_stat'
        u: Level (kind == 'level')
        k: Order index (kind == 'order_stat')
        tail_probability: Known P(X > u); when set, D = n * tail_probability
    """

    kind: str
    u: Optional[float] = None
    k: Optional[int] = None
    tail_probability: Optional[float] = None

    def __post_init__(self):
        if self.kind == 'level':
            if self.u is None or not (math.isfinite(self.u) and self.u > 0):
                raise ValidationError(format_validation_error('u', self.u, 'level threshold must be positive'))
        elif self.kind == 'order_stat':
            if self.k is None or isinstance(self.k, bool) or int(self.k) != self.k or self.k < 1:
                raise ThresholdRangeError(f"order_stat threshold needs an integer k >= 1, got {self.k}", k=self.k)
        else:
            raise ValidationError(format_validation_error('kind', self.kind, "must be 'level' or 'order_stat'"))
        if self.tail_probability is not None and not 0 < self.tail_probability <= 1:
            raise ValidationError(format_validation_error(
                'tail_probability', self.tail_probability, 'must lie in (0, 1]'))

    @classmethod
    def level(cls, u: float, tail_probability: Optional[float] = None) -> 'ThresholdSpec':
        return cls(kind='level', u=float(u), tail_probability=tail_probability)

    @classmethod
    def order_stat(cls, k: int, tail_probability: Optional[float] = None) -> 'ThresholdSpec':
        return cls(kind='order_stat', k=int(k), tail_probability=tail_probability)

    def resolve(self, sample) -> ResolvedThreshold:
        """
        Resolve to (u, D) on a sample.

        A level with no exceedance resolves with D = 0 and a
        DegenerateThresholdWarning.
        """
        x = as_array(sample)
        n = x.size
        if self.kind == 'order_stat':
            u = order_statistic(x, self.k)
            normalizer = float(self.k)
        else:
            u = float(self.u)
            normalizer = float(np.count_nonzero(x > u))
        if self.tail_probability is not None:
            normalizer = n * float(self.tail_probability)

        if u >= np.max(x):
            warnings.warn(f"Threshold {u:g} is at or above the sample maximum", DegenerateThresholdWarning,
                          stacklevel=2)
            logger.warning(f"Degenerate threshold u={u:g} (max={np.max(x):g}, n={n})")
        return ResolvedThreshold(u=u, normalizer=normalizer, n=n, k=self.k, kind=self.kind)

    def to_dict(self) -> dict:
        data = {'kind': self.kind}
        if self.kind == 'level':
            data['u'] = self.u
        else:
            data['k'] = self.k
        if self.tail_probability is not None:
            data['tail_probability'] = self.tail_probability
        return data
