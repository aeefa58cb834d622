"""
Causal AR(p) Models

Validation and simulation of X_j = phi_1 X_{j-1} + ... + phi_p X_{j-p} + eps_j
with regularly varying (or Gaussian) innovations. A spec is accepted when
the companion matrix has spectral radius below one and, for heavy
innovations with alpha <= 2, when sum |phi_i|^q < 1 with q = min(1, alpha).
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import signal

from tailchain.constants import SimulationDefaults
from tailchain.exceptions import InvalidSpecError, ValidationError, format_validation_error
from tailchain.models.base import PathSample, check_count, check_seed, make_rng
from tailchain.models.innovations import InnovationDist

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ArValidationReport:
    """Outcome of the AR stationarity checks."""

    spectral_radius: float
    q: float
    q_sum: float
    accepted: bool
    reasons: Tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            'model': 'ar',
            'spectral_radius': self.spectral_radius,
            'q': self.q,
            'q_sum': self.q_sum,
            'accepted': self.accepted,
            'reasons': list(self.reasons),
        }


def spectral_radius(phi: Sequence[float]) -> float:
    """
    Spectral radius of the companion matrix of (phi_1..phi_p).

    Computed as the largest modulus among the roots of
    lambda^p - phi_1 lambda^(p-1) - ... - phi_p.
    """
    coeffs = np.concatenate(([1.0], -np.asarray(phi, dtype=float)))
    roots = np.roots(coeffs)
    if roots.size == 0:
        return 0.0
    return float(np.max(np.abs(roots)))


def validate_ar(phi: Sequence[float], alpha: float) -> ArValidationReport:
    """
    Check the AR(p) stationarity and drift conditions.

    Args:
        phi: Coefficients phi_1..phi_p
        alpha: Tail index of the innovations (math.inf for light tails)

    Returns:
        ArValidationReport with spectral radius, q, the q-sum and the verdict

    Raises:
        InvalidSpecError: If phi is empty or has non-finite entries

    Example:
        >>> validate_ar([0.5], 2.0).accepted
        True
    """
    coeffs = np.asarray(list(phi), dtype=float)
    if coeffs.size == 0:
        raise InvalidSpecError(format_validation_error('phi', tuple(phi), 'must be nonempty'),
                               condition='phi_nonempty')
    if not np.all(np.isfinite(coeffs)):
        raise InvalidSpecError(format_validation_error('phi', tuple(phi), 'entries must be finite'),
                               condition='phi_finite')
    if not alpha > 0:
        raise InvalidSpecError(format_validation_error('alpha', alpha, 'must be positive'),
                               condition='alpha_positive')

    radius = spectral_radius(coeffs)
    q = min(1.0, float(alpha))
    q_sum = float(np.sum(np.abs(coeffs) ** q))

    reasons: List[str] = []
    if not radius < 1.0:
        reasons.append(f"spectral radius {radius:.6g} of the companion matrix must be < 1")
    if alpha <= 2 and not q_sum < 1.0:
        reasons.append(f"sum |phi_i|^q = {q_sum:.6g} with q = {q:.6g} must be < 1 when alpha <= 2")

    return ArValidationReport(
        spectral_radius=radius,
        q=q,
        q_sum=q_sum,
        accepted=not reasons,
        reasons=tuple(reasons),
    )


@dataclass(frozen=True)
class ArSpec:
    """
    Validated AR(p) specification.

    Attributes:
        phi: Coefficients phi_1..phi_p
        innovation: Innovation law
        alpha: Innovation tail index (defaults to the innovation's own index)
    """

    phi: Tuple[float, ...]
    innovation: InnovationDist
    alpha: Optional[float] = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, 'phi', tuple(float(c) for c in self.phi))
        if self.alpha is None:
            object.__setattr__(self, 'alpha', float(self.innovation.tail_index()))
        report = validate_ar(self.phi, self.alpha)
        if not report.accepted:
            raise InvalidSpecError(
                format_validation_error('phi', self.phi, '; '.join(report.reasons)),
                condition='spectral_radius' if report.spectral_radius >= 1 else 'q_sum',
            )

    @property
    def order(self) -> int:
        return len(self.phi)

    @property
    def is_iid(self) -> bool:
        return all(c == 0.0 for c in self.phi)

    def default_burn_in(self) -> int:
        return SimulationDefaults.AR_BURN_IN_FACTOR * self.order

    def to_dict(self) -> dict:
        return {
            'model': 'ar',
            'phi': list(self.phi),
            'alpha': self.alpha,
            'innovation': self.innovation.to_dict(),
        }


def simulate_ar(spec: ArSpec, n: Optional[int] = None, seed: int = 0,
                burn_in: Optional[int] = None,
                innovations: Optional[np.ndarray] = None) -> PathSample:
    """
    Simulate an AR(p) path from a zero initial state.

    Args:
        spec: Validated AR specification
        n: Number of returned values (default: whatever the injected stream leaves)
        seed: 64-bit seed for the innovation stream
        burn_in: Steps discarded before the returned values (default 10 * p)
        innovations: Optional injected innovation stream of length >= burn_in + n

    Returns:
        PathSample of length n

    Example:
        >>> spec = ArSpec(phi=(0.5,), innovation=Pareto(alpha=2.0))
        >>> simulate_ar(spec, 3, innovations=np.array([1.0, 0.0, 0.0]), burn_in=0).values
        array([1.  , 0.5 , 0.25])
    """
    if not isinstance(spec, ArSpec):
        raise ValidationError(format_validation_error('spec', type(spec).__name__, 'must be an ArSpec'))
    seed = check_seed(seed)
    if burn_in is None:
        burn_in = spec.default_burn_in()
    burn_in = check_count('burn_in', burn_in, minimum=0)

    if innovations is None:
        n = check_count('n', n)
        eps = spec.innovation.sample(make_rng(seed), burn_in + n)
    else:
        eps = np.asarray(innovations, dtype=float)
        if n is None:
            n = eps.size - burn_in
        n = check_count('n', n)
        if eps.size < burn_in + n:
            raise ValidationError(format_validation_error(
                'innovations', eps.size, f'need at least burn_in + n = {burn_in + n} values'))
        eps = eps[:burn_in + n]

    denominator = np.concatenate(([1.0], -np.asarray(spec.phi)))
    path = signal.lfilter([1.0], denominator, eps)[burn_in:]

    logger.debug(f"Simulated AR({spec.order}) path: n={n}, seed={seed}, burn_in={burn_in}")
    return PathSample(values=path, seed=seed, burn_in=burn_in, model=spec)


def ar1_extremogram(phi: float, alpha: float, lag: int) -> float:
    """c_j(1,1) = phi^(j*alpha) for AR(1) with positive coefficient and positive heavy innovations."""
    return float(phi ** (lag * alpha))


def ar1_theta_plus(phi: float, alpha: float, h: Optional[int] = None) -> float:
    """
    Extremal index of AR(1), or its finite-horizon surrogate theta_+(h).

    With Theta_j = phi^j the probability that no later value exceeds the
    anchor's level is 1 - phi^alpha at every horizon j >= 1, so
    theta_+(h) = (1 + (h - 1)(1 - phi^alpha)) / h.
    """
    base = 1.0 - phi ** alpha
    if h is None:
        return float(base)
    if h < 1:
        raise ValidationError(format_validation_error('h', h, 'must be >= 1'))
    return float((1.0 + (h - 1) * base) / h)


def ar1_theta_tilde(phi: float, alpha: float, h: int) -> float:
    """Population value h*theta_+(h) - (h-1)*theta_+(h-1) for AR(1)."""
    if h == 1:
        return ar1_theta_plus(phi, alpha, 1)
    return float(h * ar1_theta_plus(phi, alpha, h) - (h - 1) * ar1_theta_plus(phi, alpha, h - 1))


def ar1_marginal_tail_constant(phi: float, alpha: float) -> float:
    """Asymptotic ratio P(X > u) / P(eps > u) = 1 / (1 - phi^alpha) for 0 <= phi < 1."""
    if not 0 <= phi < 1:
        raise ValidationError(format_validation_error('phi', phi, 'closed form needs 0 <= phi < 1'))
    return 1.0 / (1.0 - phi ** alpha) if math.isfinite(alpha) else 1.0
