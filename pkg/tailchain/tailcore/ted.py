"""
Tail Empirical Distribution and Process

T_n(v) = (1/D) sum_j 1{exists i <= h: X_{j+i} > u v_i} over the n - h full
windows, its weighted form with psi(X_{j..j+h} / u), and the centred,
sqrt(D)-scaled tail empirical process.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence, Union

import numpy as np
import pandas as pd
from numpy.lib.stride_tricks import sliding_window_view

from tailchain.exceptions import ValidationError, format_validation_error
from tailchain.models.base import PathSample, as_array
from tailchain.tailcore.threshold import ResolvedThreshold, ThresholdSpec
from tailchain.tailcore.weights import WeightFn

logger = logging.getLogger(__name__)

Threshold = Union[ThresholdSpec, ResolvedThreshold]


def _resolve(x: np.ndarray, threshold: Threshold) -> ResolvedThreshold:
    if isinstance(threshold, ResolvedThreshold):
        return threshold
    if isinstance(threshold, ThresholdSpec):
        return threshold.resolve(x)
    raise ValidationError(format_validation_error('threshold', type(threshold).__name__,
                                                  'must be a ThresholdSpec'))


def _check_grid(grid, h: int) -> np.ndarray:
    points = np.atleast_2d(np.asarray(grid, dtype=float))
    if points.shape[1] != h + 1:
        raise ValidationError(format_validation_error('v', points.shape, f'points need h + 1 = {h + 1} coordinates'))
    if not np.all(points > 0):
        raise ValidationError(format_validation_error('v', 'non-positive coordinate', 'v must be strictly positive'))
    return points


def window_view(sample, h: int) -> np.ndarray:
    """(n - h, h + 1) read-only view of consecutive windows."""
    x = as_array(sample)
    if h < 0 or x.size <= h:
        raise ValidationError(format_validation_error('h', h, f'need 0 <= h < n = {x.size}'))
    return sliding_window_view(x, h + 1)


def _exceedance_mask(windows: np.ndarray, u: float, v: np.ndarray) -> np.ndarray:
    return np.any(windows > u * v, axis=1)


def ted_multivariate(sample, h: int, v: Sequence[float], threshold: Threshold) -> float:
    """
    Tail empirical distribution at one grid point.

    Args:
        sample: PathSample or 1-d array
        h: Lag count; windows have h + 1 entries
        v: Positive (h+1)-vector
        threshold: ThresholdSpec (or an already resolved threshold)

    Returns:
        Exceedance-window count divided by D; 0 when the threshold is degenerate

    Example:
        >>> ted_multivariate([1, 2, 3, 4, 5], 0, [1.0], ThresholdSpec.level(3.0))
        1.0
    """
    return weighted_ted(sample, h, v, threshold, None)


def weighted_ted(sample, h: int, v: Sequence[float], threshold: Threshold,
                 psi: Optional[WeightFn] = None) -> float:
    """
    Weighted tail empirical distribution (1/D) sum_j psi(X_j..j+h / u) 1{window exceeds u v}.

    Reduces exactly to ted_multivariate when psi is None or the indicator.
    """
    x = as_array(sample)
    windows = window_view(x, h)
    point = _check_grid([v], h)[0]
    resolved = _resolve(x, threshold)
    if psi is not None:
        psi.check_dimension(h)
    return float(_weighted_values(windows, np.atleast_2d(point), resolved, psi)[0])


def _weighted_values(windows: np.ndarray, points: np.ndarray, resolved: ResolvedThreshold,
                     psi: Optional[WeightFn]) -> np.ndarray:
    out = np.zeros(points.shape[0])
    if resolved.degenerate:
        return out
    u = resolved.u
    weights = None
    for idx, point in enumerate(points):
        mask = _exceedance_mask(windows, u, point)
        if psi is None or psi.is_indicator:
            out[idx] = np.count_nonzero(mask) / resolved.normalizer
            continue
        if weights is None:
            weights = psi(windows / u)
        out[idx] = float(np.sum(weights[mask])) / resolved.normalizer
    return out


@dataclass(frozen=True)
class TailFunctionEval:
    """
    Evaluations of a (weighted) tail empirical distribution or process on a grid.

    Attributes:
        grid: (m, h+1) array of argument points
        values: m evaluations
        normalization: n, D, u and k of the resolved threshold
        kind: 'TED', 'TEP', 'weighted-TED' or 'weighted-TEP'
    """

    grid: np.ndarray
    values: np.ndarray
    normalization: Dict[str, Any]
    kind: str
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        grid = np.atleast_2d(np.asarray(self.grid, dtype=float))
        values = np.asarray(self.values, dtype=float)
        if grid.shape[0] != values.shape[0]:
            raise ValidationError(format_validation_error(
                'values', values.shape, f'must match grid length {grid.shape[0]}'))
        if self.kind not in ('TED', 'TEP', 'weighted-TED', 'weighted-TEP'):
            raise ValidationError(format_validation_error('kind', self.kind, 'unknown tail function kind'))
        object.__setattr__(self, 'grid', grid)
        object.__setattr__(self, 'values', values)

    @property
    def h(self) -> int:
        return self.grid.shape[1] - 1

    def to_frame(self) -> pd.DataFrame:
        """Table with columns v_0..v_h, value."""
        frame = pd.DataFrame(self.grid, columns=[f'v_{i}' for i in range(self.h + 1)])
        frame['value'] = self.values
        return frame

    def sidecar(self) -> Dict[str, Any]:
        """JSON metadata written next to the CSV."""
        return {'kind': self.kind, 'h': self.h, 'normalization': dict(self.normalization),
                **self.metadata}


def ted_grid(sample, h: int, grid, threshold: Threshold, psi: Optional[WeightFn] = None) -> TailFunctionEval:
    """Evaluate the (weighted) TED on every point of a grid with one threshold resolution."""
    x = as_array(sample)
    windows = window_view(x, h)
    points = _check_grid(grid, h)
    resolved = _resolve(x, threshold)
    if psi is not None:
        psi.check_dimension(h)
    values = _weighted_values(windows, points, resolved, psi)
    kind = 'TED' if psi is None or psi.is_indicator else 'weighted-TED'
    return TailFunctionEval(grid=points, values=values, normalization=resolved.to_dict(), kind=kind)


def univariate_ted(sample, s: Sequence[float], threshold: Threshold) -> np.ndarray:
    """T_n(s) = #{j : X_j > u s} / D for each s (the h = 0 case)."""
    evaluation = ted_grid(sample, 0, np.asarray(s, dtype=float).reshape(-1, 1), threshold)
    return evaluation.values


def _pilot_threshold(threshold: Threshold, n: int, m: int) -> ThresholdSpec:
    if isinstance(threshold, ResolvedThreshold):
        if threshold.kind == 'order_stat':
            return ThresholdSpec.order_stat(max(1, int(round(threshold.k * m / n))))
        return ThresholdSpec.level(threshold.u)
    if threshold.kind == 'order_stat':
        return ThresholdSpec.order_stat(max(1, int(round(threshold.k * m / n))), threshold.tail_probability)
    return threshold


def tep(sample, h: int, grid, threshold: Threshold, psi: Optional[WeightFn] = None,
        centering: Union[PathSample, Sequence[float], None] = None) -> TailFunctionEval:
    """
    Tail empirical process sqrt(D) (T_n(v) - center(v)) over a grid.

    Args:
        sample: PathSample or 1-d array
        h: Lag count
        grid: (m, h+1) argument points
        threshold: ThresholdSpec
        psi: Optional weight function
        centering: Either supplied center values (one per grid point), or a
            pilot PathSample on which the same statistic is evaluated with
            the order index scaled by the length ratio

    Returns:
        TailFunctionEval of kind 'TEP' or 'weighted-TEP'

    Raises:
        ValidationError: If supplied centering does not match the grid length
    """
    x = as_array(sample)
    estimate = ted_grid(x, h, grid, threshold, psi)

    if centering is None:
        raise ValidationError("tep needs centering: supplied values or a pilot PathSample")
    if isinstance(centering, PathSample):
        pilot = centering.values
        pilot_spec = _pilot_threshold(threshold, x.size, pilot.size)
        center = ted_grid(pilot, h, estimate.grid, pilot_spec, psi).values
        mode = 'pilot'
    else:
        center = np.asarray(centering, dtype=float).ravel()
        if center.size != estimate.values.size:
            raise ValidationError(format_validation_error(
                'centering', center.size, f'must match grid length {estimate.values.size}'))
        mode = 'supplied'

    scale = np.sqrt(estimate.normalization['normalizer'])
    values = scale * (estimate.values - center)
    kind = 'TEP' if estimate.kind == 'TED' else 'weighted-TEP'
    logger.debug(f"TEP over {values.size} grid points, centering={mode}, D={estimate.normalization['normalizer']:g}")
    return TailFunctionEval(grid=estimate.grid, values=values, normalization=estimate.normalization,
                            kind=kind, metadata={'centering': mode, 'center': center.tolist()})
