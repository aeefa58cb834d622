"""
Replication Statistics

Evaluates the configured statistic on one simulated path and turns raw
values into normalized deviations. All normalization factors that apply
to the model are recorded, whichever one the deviations use.
"""

import logging
import math
import warnings
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from tailchain.asymptotics.counterexample import stable_normalizer
from tailchain.estimators import ESTIMATORS
from tailchain.exceptions import DegenerateThresholdWarning, InsufficientExceedancesError
from tailchain.harness.experiment_config import ExperimentConfig
from tailchain.models import RenewalChainSpec, marginal_tail
from tailchain.tailcore import ThresholdSpec, order_statistic, ted_grid

logger = logging.getLogger(__name__)

Factors = Dict[str, float]


def _model_tail(config: ExperimentConfig, u: float) -> float:
    return float(marginal_tail(config.model, u))


def _ted_threshold(config: ExperimentConfig, k: Optional[int]) -> ThresholdSpec:
    if config.level is None:
        return ThresholdSpec.order_stat(k)
    if config.normalizer == 'model':
        return ThresholdSpec.level(config.level, tail_probability=_model_tail(config, config.level))
    return ThresholdSpec.level(config.level)


def _renewal_factors(config: ExperimentConfig, n: int, u: float) -> Factors:
    spec: RenewalChainSpec = config.model
    tail_z = float(spec.z_dist.survival(u))
    a_n = stable_normalizer(spec.beta, n)
    return {
        'sqrt_nFz': math.sqrt(n * tail_z),
        'stable_an': n * _model_tail(config, u) / a_n,
    }


def evaluate_statistic(config: ExperimentConfig, x: np.ndarray,
                       k: Optional[int] = None) -> Tuple[Tuple[float, ...], Factors]:
    """
    Raw statistic values and normalization factors on one path.

    Args:
        config: Experiment configuration
        x: Simulated path
        k: Order index to use instead of config.k (pilot paths scale k by length)

    Returns:
        (raw values, one per grid point; factors by normalization tag)

    Raises:
        EstimationError: When the statistic is undefined on this path
    """
    n = x.size
    k = config.k if k is None else k
    statistic = config.statistic

    if statistic in ESTIMATORS:
        record = ESTIMATORS[statistic](x, k, config.h)
        factors = {'sqrt_k': math.sqrt(k)}
        if isinstance(config.model, RenewalChainSpec):
            factors.update(_renewal_factors(config, n, record.auxiliary['threshold']))
        return (record.value,), factors

    if statistic == 'order_statistic':
        value = order_statistic(x, k)
        factors = {'sqrt_k': math.sqrt(k)}
        if isinstance(config.model, RenewalChainSpec):
            factors.update(_renewal_factors(config, n, value))
        return (value,), factors

    if statistic == 'any_exceedance':
        u = config.level if config.level is not None else order_statistic(x, k)
        lowest = u * min(point[0] for point in config.grid)
        return (float(np.any(x > lowest)),), {}

    # ted
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', DegenerateThresholdWarning)
        resolved = _ted_threshold(config, k).resolve(x)
    if resolved.degenerate:
        raise InsufficientExceedancesError(f"No exceedance of u={resolved.u:g} in a path of length {n}",
                                           required=1, actual=0)
    evaluation = ted_grid(x, config.h, config.grid, resolved)
    factors = {'sqrt_k': math.sqrt(resolved.normalizer)}
    if isinstance(config.model, RenewalChainSpec):
        factors.update(_renewal_factors(config, n, resolved.u))
    return tuple(float(v) for v in evaluation.values), factors


def exact_center(config: ExperimentConfig) -> Tuple[float, ...]:
    """T(s) = P(X > u s) / P(X > u) from the model's closed-form marginal tail."""
    base = _model_tail(config, config.level)
    return tuple(_model_tail(config, config.level * point[0]) / base for point in config.grid)


def theory_center(config: ExperimentConfig) -> Tuple[float, ...]:
    if isinstance(config.theory_center, (list, tuple)):
        return tuple(float(c) for c in config.theory_center)
    return (float(config.theory_center),) * config.grid_size


def pilot_k(config: ExperimentConfig, pilot_length: int) -> Optional[int]:
    """Order index on the pilot path, keeping k/n fixed."""
    if config.k is None:
        return None
    return max(1, min(pilot_length - 1, int(round(config.k * pilot_length / config.n))))


def normalized_deviations(config: ExperimentConfig, raw: Sequence[float], center: Sequence[float],
                          factors: Factors) -> Tuple[float, ...]:
    """
    Deviations factor * (raw - center); order statistics use the relative form
    factor * (raw / center - 1).
    """
    factor = 1.0 if config.normalization == 'none' else factors[config.normalization]
    if config.statistic == 'order_statistic':
        return tuple(factor * (r / c - 1.0) for r, c in zip(raw, center))
    return tuple(factor * (r - c) for r, c in zip(raw, center))
