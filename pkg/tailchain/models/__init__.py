"""
Model definitions, validation and simulation.

Three model families: causal AR(p), threshold ARCH, and the integer
renewal (descent) chain.
"""

from typing import Optional

import numpy as np

from tailchain.config import get_config
from tailchain.exceptions import ValidationError, format_validation_error
from tailchain.models.ar import (
    ArSpec,
    ArValidationReport,
    ar1_extremogram,
    ar1_theta_plus,
    ar1_theta_tilde,
    simulate_ar,
    spectral_radius,
    validate_ar,
)
from tailchain.models.base import PathSample, as_array, derive_seed, make_rng
from tailchain.models.innovations import InnovationDist, IntegerPareto, Pareto, StandardGaussian
from tailchain.models.renewal import (
    RenewalChainSpec,
    StationaryPmf,
    renewal_marginal_tail,
    renewal_stationary_pmf,
    simulate_renewal_chain,
)
from tailchain.models.serialization import ModelSpec, load_spec, spec_from_dict, spec_to_dict
from tailchain.models.tarch import (
    LyapunovResult,
    TarchSpec,
    simulate_tarch,
    tail_index_equation,
    tarch_lyapunov,
    tarch_tail_index,
    validate_tarch,
)


def simulate(spec: ModelSpec, n: int, seed: int, burn_in: Optional[int] = None) -> PathSample:
    """Simulate any model spec; burn-in defaults come from the simulation settings."""
    settings = get_config().simulation
    if isinstance(spec, ArSpec):
        if burn_in is None:
            burn_in = settings.ar_burn_in_factor * spec.order
        return simulate_ar(spec, n, seed, burn_in)
    if isinstance(spec, TarchSpec):
        if burn_in is None:
            burn_in = settings.tarch_burn_in
        return simulate_tarch(spec, n, seed, burn_in)
    if isinstance(spec, RenewalChainSpec):
        return simulate_renewal_chain(spec, n, seed)
    raise ValidationError(format_validation_error('spec', type(spec).__name__, 'is not a model spec'))


def marginal_tail(spec: ModelSpec, u) -> np.ndarray:
    """
    Exact stationary survival P(X_0 > u) where it is known in closed form.

    Known for i.i.d. AR specs (all phi zero) and for the renewal chain.

    Raises:
        ValidationError: When the model has no closed-form marginal tail
    """
    if isinstance(spec, ArSpec) and spec.is_iid:
        return np.asarray(spec.innovation.survival(u), dtype=float)
    if isinstance(spec, RenewalChainSpec):
        return renewal_marginal_tail(spec, u)
    raise ValidationError(format_validation_error(
        'spec', spec_to_dict(spec).get('model'), 'no closed-form marginal tail for this model'))


def validation_report(spec: ModelSpec) -> dict:
    """
    Stationarity and tail diagnostics of a model spec as a JSON-ready dict.

    AR specs report the spectral radius and q-sum; T-ARCH specs add the
    solved tail index to the Lyapunov and moment checks.
    """
    if isinstance(spec, ArSpec):
        return validate_ar(spec.phi, spec.alpha).to_dict()
    if isinstance(spec, TarchSpec):
        report = validate_tarch(spec).to_dict()
        report['tail_index'] = tarch_tail_index(spec.b11, spec.b21, spec.innovation)
        return report
    if isinstance(spec, RenewalChainSpec):
        return {'model': 'renewal', 'beta': spec.beta, 'mean_jump': spec.mean_jump(),
                'renewal_rate': spec.renewal_rate(), 'accepted': True, 'reasons': []}
    raise ValidationError(format_validation_error('spec', type(spec).__name__, 'is not a model spec'))


__all__ = [
    'ArSpec', 'ArValidationReport', 'InnovationDist', 'IntegerPareto', 'LyapunovResult',
    'ModelSpec', 'Pareto', 'PathSample', 'RenewalChainSpec', 'StandardGaussian',
    'StationaryPmf', 'TarchSpec', 'ar1_extremogram', 'ar1_theta_plus', 'ar1_theta_tilde',
    'as_array', 'derive_seed', 'load_spec', 'make_rng', 'marginal_tail',
    'renewal_marginal_tail', 'renewal_stationary_pmf', 'simulate', 'simulate_ar',
    'simulate_renewal_chain', 'simulate_tarch', 'spec_from_dict', 'spec_to_dict',
    'spectral_radius', 'tail_index_equation', 'tarch_lyapunov', 'tarch_tail_index',
    'validate_ar', 'validate_tarch', 'validation_report',
]
