"""
Spectral Tail Process Estimation

For every anchor t with X_t > u (and t + L inside the path) the window
X_t..X_{t+L} is kept; Theta_j samples are X_{t+j} / X_t. Overlapping
anchors are all kept, matching the plug-in extremogram.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from tailchain.constants import HarnessDefaults
from tailchain.exceptions import InsufficientExceedancesError, ValidationError, format_validation_error
from tailchain.models import simulate
from tailchain.models.base import PathSample, as_array
from tailchain.tailcore.threshold import check_k, order_statistic
from tailchain.tailcore.ted import window_view

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpectralTailEstimate:
    """
    Empirical law of (Theta_0..Theta_L) given X_0 > u.

    Attributes:
        windows: (A, L+1) raw windows X_t..X_{t+L}, one row per anchor
        threshold: Level u
        k: Order index when the level came from X_{n:n-k}, else None
        n: Sample size
    """

    windows: np.ndarray
    threshold: float
    n: int
    k: Optional[int] = None

    @property
    def max_lag(self) -> int:
        return int(self.windows.shape[1] - 1)

    @property
    def n_anchors(self) -> int:
        return int(self.windows.shape[0])

    @property
    def theta(self) -> np.ndarray:
        """(A, L+1) array of Theta_j samples; column 0 is exactly 1."""
        return self.windows / self.windows[:, :1]

    def samples(self, lag: int) -> np.ndarray:
        return self.theta[:, lag]

    def mean(self, lag: int) -> float:
        return float(np.mean(self.samples(lag)))

    def quantile(self, lag: int, q: float) -> float:
        return float(np.quantile(self.samples(lag), q))

    def tail_moment(self, lag: int, alpha: float) -> float:
        """E[(Theta_j)_+^alpha ^ 1]."""
        theta = np.maximum(self.samples(lag), 0.0)
        return float(np.mean(np.minimum(theta ** alpha, 1.0)))

    def tail_moments(self, alpha: float) -> np.ndarray:
        """tail_moment for lags 0..L."""
        theta = np.maximum(self.theta, 0.0)
        return np.mean(np.minimum(theta ** alpha, 1.0), axis=0)

    def exceedance_count(self, lag: int, w: float = 1.0) -> int:
        """#{anchors : X_{t+lag} > u w}, from the raw windows."""
        return int(np.count_nonzero(self.windows[:, lag] > self.threshold * w))

    def no_later_exceedance(self, horizon: int) -> float:
        """Fraction of anchors with max(X_{t+1}..X_{t+horizon}) <= u."""
        if horizon < 1 or horizon > self.max_lag:
            raise ValidationError(format_validation_error('horizon', horizon, f'must lie in [1, {self.max_lag}]'))
        later = self.windows[:, 1:horizon + 1].max(axis=1)
        return float(np.mean(later <= self.threshold))

    def summary(self) -> dict:
        return {
            'threshold': self.threshold,
            'k': self.k,
            'n': self.n,
            'anchors': self.n_anchors,
            'max_lag': self.max_lag,
            'theta_mean': [self.mean(j) for j in range(self.max_lag + 1)],
        }


def spectral_tail_mc(sample, max_lag: int, k: Optional[int] = None, level: Optional[float] = None,
                     min_anchors: int = HarnessDefaults.MIN_SPECTRAL_ANCHORS) -> SpectralTailEstimate:
    """
    Collect Theta_j samples over all exceedance anchors.

    Args:
        sample: PathSample or 1-d array
        max_lag: Largest lag L
        k: Order index defining u = X_{n:n-k} (exactly one of k / level)
        level: Explicit level u
        min_anchors: Minimum number of anchors

    Returns:
        SpectralTailEstimate

    Raises:
        InsufficientExceedancesError: If fewer than min_anchors anchors exist
    """
    x = as_array(sample)
    n = x.size
    if (k is None) == (level is None):
        raise ValidationError("spectral_tail_mc needs exactly one of k or level")
    if isinstance(max_lag, bool) or int(max_lag) != max_lag or not 0 <= max_lag < n:
        raise ValidationError(format_validation_error('max_lag', max_lag, f'must lie in [0, {n - 1}]'))
    if k is not None:
        k = check_k(k, n)
        u = order_statistic(x, k)
    else:
        u = float(level)

    windows = window_view(x, int(max_lag))
    anchors = windows[:, 0] > u
    if u <= 0:
        # Theta_j needs a positive anchor value
        anchors &= windows[:, 0] > 0
    count = int(np.count_nonzero(anchors))
    if count < min_anchors:
        raise InsufficientExceedancesError(
            f"Only {count} exceedance anchors above u={u:g}; need at least {min_anchors}",
            required=min_anchors, actual=count,
        )
    logger.debug(f"Spectral tail: {count} anchors, u={u:g}, L={max_lag}")
    return SpectralTailEstimate(windows=np.array(windows[anchors]), threshold=u, n=n, k=k)


def spectral_tail_from_model(spec, n: int, seed: int, max_lag: int, k: int,
                             min_anchors: int = HarnessDefaults.MIN_SPECTRAL_ANCHORS) -> SpectralTailEstimate:
    """Simulate a path of the model and estimate its spectral tail process."""
    path: PathSample = simulate(spec, n, seed)
    return spectral_tail_mc(path, max_lag, k=k, min_anchors=min_anchors)
