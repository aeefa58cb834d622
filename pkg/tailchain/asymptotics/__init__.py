"""Extremograms, spectral tail process, limit covariance series and the renewal counterexample."""

from tailchain.asymptotics.counterexample import (
    RegimeInfo,
    classify_regime,
    counterexample_cov,
    renewal_tep_center,
    renewal_tep_covariance,
    stable_normalizer,
)
from tailchain.asymptotics.extremogram import (
    Extremogram,
    anticlustering_diagnostic,
    conditional_exceedance_frequencies,
    extremogram,
)
from tailchain.asymptotics.spectral import SpectralTailEstimate, spectral_tail_from_model, spectral_tail_mc
from tailchain.asymptotics.variance import (
    SeriesResult,
    ar1_covariance,
    counterexample_order_stat_variance,
    covariance_series,
    extremogram_from_spectral,
    hill_limit_variance,
    order_statistic_limit_variance,
    theta_plus_from_spectral,
)

__all__ = [
    'Extremogram', 'RegimeInfo', 'SeriesResult', 'SpectralTailEstimate', 'anticlustering_diagnostic',
    'ar1_covariance', 'classify_regime', 'conditional_exceedance_frequencies', 'counterexample_cov',
    'counterexample_order_stat_variance', 'covariance_series', 'extremogram',
    'extremogram_from_spectral', 'hill_limit_variance', 'order_statistic_limit_variance',
    'renewal_tep_center', 'renewal_tep_covariance', 'spectral_tail_from_model', 'spectral_tail_mc',
    'stable_normalizer', 'theta_plus_from_spectral',
]
