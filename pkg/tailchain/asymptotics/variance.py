"""
Limit Covariances and Variances

Truncated evaluation of C(v, w) = c_0(v, w) + sum_{j>=1} {c_j(v, w) + c_j(w, v)},
the Hill limiting variance alpha^-2 {1 + 2 sum_j E[(Theta_j)_+^alpha ^ 1]},
extremograms and finite-horizon extremal indices implied by the spectral
tail process, and the AR(1) closed forms.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from tailchain.asymptotics.extremogram import Extremogram
from tailchain.asymptotics.spectral import SpectralTailEstimate
from tailchain.constants import HarnessDefaults
from tailchain.exceptions import ValidationError, format_validation_error

logger = logging.getLogger(__name__)

ThetaInput = Union[SpectralTailEstimate, str, Tuple[str, float], Sequence[float]]


@dataclass(frozen=True)
class SeriesResult:
    """
    Truncated series value with its truncation diagnostic.

    Attributes:
        value: Sum up to the truncation lag
        truncation_tail: Exact remainder when known in closed form, otherwise
            the magnitude of the last included term
        max_lag: Truncation lag used
    """

    value: float
    truncation_tail: float
    max_lag: int

    def to_dict(self) -> dict:
        return {'value': self.value, 'truncation_tail': self.truncation_tail, 'max_lag': self.max_lag}


def _lag_terms(theta: ThetaInput, alpha: float, max_lag: int) -> Tuple[np.ndarray, Optional[float]]:
    """E[(Theta_j)_+^alpha ^ 1] for j = 1..L and the exact remainder when known."""
    if isinstance(theta, SpectralTailEstimate):
        lags = min(max_lag, theta.max_lag)
        return theta.tail_moments(alpha)[1:lags + 1], None
    if isinstance(theta, str):
        if theta != 'independent':
            raise ValidationError(format_validation_error('theta', theta, "tag must be 'independent'"))
        return np.zeros(max_lag), 0.0
    if isinstance(theta, tuple) and len(theta) == 2 and theta[0] == 'ar1':
        phi = float(theta[1])
        if not 0 <= phi < 1:
            raise ValidationError(format_validation_error('phi', phi, 'AR(1) closed form needs 0 <= phi < 1'))
        ratio = phi ** alpha
        terms = ratio ** np.arange(1, max_lag + 1)
        remainder = ratio ** (max_lag + 1) / (1.0 - ratio) if ratio > 0 else 0.0
        return terms, remainder
    terms = np.asarray(theta, dtype=float)
    return terms[:max_lag], None


def hill_limit_variance(theta: ThetaInput, alpha: float,
                        max_lag: int = HarnessDefaults.TRUNCATION_LAG) -> SeriesResult:
    """
    Limiting variance of sqrt(k)(gamma_hat - 1/alpha).

    Args:
        theta: SpectralTailEstimate, the tag 'independent', ('ar1', phi),
            or per-lag values E[(Theta_j)_+^alpha ^ 1] for j = 1, 2, ...
        alpha: Tail index
        max_lag: Truncation lag L

    Returns:
        SeriesResult; value >= alpha^-2 always

    Example:
        >>> round(hill_limit_variance(('ar1', 0.7), 2.0).value, 4)
        0.7304
    """
    if not alpha > 0:
        raise ValidationError(format_validation_error('alpha', alpha, 'must be positive'))
    terms, remainder = _lag_terms(theta, alpha, max_lag)
    scale = alpha ** -2
    value = scale * (1.0 + 2.0 * float(np.sum(terms)))
    if remainder is not None:
        tail = scale * 2.0 * remainder
    else:
        tail = scale * 2.0 * (float(terms[-1]) if terms.size else 0.0)
    logger.debug(f"Hill limit variance: {value:.6g} over {terms.size} lags (tail {tail:.2e})")
    return SeriesResult(value=value, truncation_tail=tail, max_lag=int(terms.size))


def _as_series(values) -> np.ndarray:
    if isinstance(values, Extremogram):
        return values.values
    return np.asarray(values, dtype=float)


def covariance_series(c_vw, c_wv=None, max_lag: Optional[int] = None) -> SeriesResult:
    """
    C(v, w) = c_0(v, w) + sum_{j=1..L} {c_j(v, w) + c_j(w, v)}.

    Args:
        c_vw: Lag-indexed values c_j(v, w), j = 0.. (array or Extremogram)
        c_wv: Lag-indexed values c_j(w, v); defaults to c_vw (the v == w case)
        max_lag: Truncation lag (default: all supplied lags)

    Returns:
        SeriesResult with the last term magnitude as truncation diagnostic
    """
    first = _as_series(c_vw)
    second = first if c_wv is None else _as_series(c_wv)
    if first.size < 2 or second.size != first.size:
        raise ValidationError(format_validation_error(
            'c_vw', (first.size, second.size), 'need matching series with at least lags 0 and 1'))
    lag = first.size - 1 if max_lag is None else int(max_lag)
    if not 1 <= lag <= first.size - 1:
        raise ValidationError(format_validation_error('max_lag', max_lag, f'must lie in [1, {first.size - 1}]'))
    pairs = first[1:lag + 1] + second[1:lag + 1]
    value = float(first[0] + np.sum(pairs))
    return SeriesResult(value=value, truncation_tail=float(abs(pairs[-1])), max_lag=lag)


def ar1_covariance(phi: float, alpha: float) -> float:
    """C(1, 1) = 1 + 2 phi^alpha / (1 - phi^alpha) for AR(1) with positive heavy innovations."""
    ratio = phi ** alpha
    return 1.0 + 2.0 * ratio / (1.0 - ratio)


def extremogram_from_spectral(theta: SpectralTailEstimate, v: float, w: float, alpha: float) -> np.ndarray:
    """
    c_j(v, w) = v^-alpha E[(Theta_j v / w)_+^alpha ^ 1] for j = 0..L.
    """
    if not (v > 0 and w > 0 and alpha > 0):
        raise ValidationError(format_validation_error('v/w/alpha', (v, w, alpha), 'must be positive'))
    scaled = np.maximum(theta.theta * (v / w), 0.0)
    return v ** -alpha * np.mean(np.minimum(scaled ** alpha, 1.0), axis=0)


def theta_plus_from_spectral(theta: SpectralTailEstimate, h: int) -> float:
    """
    theta_+(h) = (1/h) {1 + sum_{j=1..h-1} P(max(Y_1..Y_j) <= 1 | Y_0 > 1)}.
    """
    if isinstance(h, bool) or int(h) != h or h < 1:
        raise ValidationError(format_validation_error('h', h, 'must be an integer >= 1'))
    total = 1.0 + sum(theta.no_later_exceedance(j) for j in range(1, h))
    return total / h


def order_statistic_limit_variance(covariance_11: float, alpha: float) -> float:
    """Limiting variance C(1, 1) / alpha^2 of sqrt(k)(X_{n:n-k} / u_n - 1)."""
    return covariance_11 / alpha ** 2


def counterexample_order_stat_variance(alpha: float) -> float:
    """
    2 alpha^-4 (alpha - 1)^-1 for the renewal chain's intermediate order statistic.

    Holds only under additional regularity conditions; treat as indicative.
    """
    if not alpha > 1:
        raise ValidationError(format_validation_error('alpha', alpha, 'must be > 1'))
    return 2.0 * alpha ** -4 / (alpha - 1.0)
