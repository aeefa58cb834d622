"""
Renewal Chain Counterexample: Limit Covariances and Regimes

The renewal chain violates the geometric drift condition, and its tail
empirical process behaves differently depending on n P(Z > u_n):
degenerate when it vanishes, stable-type for beta in (1, 2), Gaussian
for beta > 2.

Two covariance targets are provided for the Gaussian regime:

* counterexample_cov evaluates the closed form
  (beta+1) t^(1-beta) / (beta(beta-1)) - s t^(-beta) / beta, s <= t.
* renewal_tep_covariance evaluates, at a finite level u, the covariance of
  sqrt(n P(Z > u)) (T_n(s) - T(s)) implied by the renewal-cycle
  decomposition: each cycle of length Z contributes (Z - floor(u s))_+
  exceedances of u s.
"""

import logging
import math
from dataclasses import dataclass

from scipy import special

from tailchain.exceptions import OutOfRegimeError, ValidationError, format_validation_error

logger = logging.getLogger(__name__)


def counterexample_cov(beta: float, s: float, t: float) -> float:
    """
    Closed-form Gaussian-regime covariance, ordered so that s <= t.

    Raises:
        OutOfRegimeError: If beta <= 2

    Example:
        >>> round(counterexample_cov(3.0, 1.0, 1.0), 12)
        0.333333333333
    """
    if not beta > 2:
        raise OutOfRegimeError(f"Gaussian-regime covariance needs beta > 2, got {beta}")
    if not (s > 0 and t > 0):
        raise ValidationError(format_validation_error('s/t', (s, t), 'must be positive'))
    s, t = min(s, t), max(s, t)
    return (beta + 1.0) * t ** (1.0 - beta) / (beta * (beta - 1.0)) - s * t ** (-beta) / beta


def excess_first_moment(beta: float, a: int) -> float:
    """E[(Z - a)_+] = sum_{j>=a} P(Z > j) for integer a >= 0."""
    if a == 0:
        return 1.0 + float(special.zeta(beta, 1))
    return float(special.zeta(beta, a))


def excess_second_moment(beta: float, a: int) -> float:
    """E[(Z - a)_+^2] = 2 sum_{j>=a} j P(Z > j) - (2a - 1) E[(Z - a)_+]; finite for beta > 2."""
    if not beta > 2:
        raise OutOfRegimeError(f"Second moment of the renewal jump needs beta > 2, got {beta}")
    weighted = float(special.zeta(beta - 1.0, max(a, 1)))
    return 2.0 * weighted - (2 * a - 1) * excess_first_moment(beta, a)


def excess_cross_moment(beta: float, a: int, b: int) -> float:
    """E[(Z - a)_+ (Z - b)_+] = E[(Z - b)_+^2] + (b - a) E[(Z - b)_+] for a <= b."""
    a, b = min(a, b), max(a, b)
    return excess_second_moment(beta, b) + (b - a) * excess_first_moment(beta, b)


def renewal_marginal_tail_level(beta: float, x: float) -> float:
    """P(X_0 > x) = E[(Z - floor(x))_+] / E[Z] under the stationary law."""
    return excess_first_moment(beta, int(math.floor(max(x, 0.0)))) / excess_first_moment(beta, 0)


def renewal_tep_center(beta: float, u: float, s: float) -> float:
    """Exact centering T(s) = P(X_0 > u s) / P(X_0 > u)."""
    return renewal_marginal_tail_level(beta, u * s) / renewal_marginal_tail_level(beta, u)


def renewal_tep_covariance(beta: float, u: float, s: float, t: float) -> float:
    """
    Finite-level covariance of sqrt(n P(Z > u)) (T_n(s) - T(s)) for the renewal chain.

    With W_a = (Z - a)_+, a = floor(u s), b = floor(u t) and lambda = 1/E[Z],
    the per-step covariance of the exceedance counts is
    lambda Cov(W_a - lambda E[W_a] Z, W_b - lambda E[W_b] Z), scaled by
    P(Z > u) / P(X_0 > u)^2.

    Raises:
        OutOfRegimeError: If beta <= 2
    """
    if not beta > 2:
        raise OutOfRegimeError(f"Renewal covariance needs beta > 2, got {beta}")
    if not (u >= 1 and s > 0 and t > 0):
        raise ValidationError(format_validation_error('u/s/t', (u, s, t), 'need u >= 1 and s, t > 0'))

    a = int(math.floor(u * s))
    b = int(math.floor(u * t))
    mean_z = excess_first_moment(beta, 0)
    lam = 1.0 / mean_z
    mu_a = excess_first_moment(beta, a)
    mu_b = excess_first_moment(beta, b)
    var_z = excess_second_moment(beta, 0) - mean_z ** 2

    cov_ab = excess_cross_moment(beta, a, b) - mu_a * mu_b
    cov_az = excess_cross_moment(beta, 0, a) - mu_a * mean_z
    cov_bz = excess_cross_moment(beta, 0, b) - mu_b * mean_z
    cycle_cov = cov_ab - lam * mu_b * cov_az - lam * mu_a * cov_bz + lam ** 2 * mu_a * mu_b * var_z

    tail_z = math.floor(u) ** (-beta)
    tail_x = renewal_marginal_tail_level(beta, u)
    return tail_z * lam * cycle_cov / tail_x ** 2


@dataclass(frozen=True)
class RegimeInfo:
    """Regime of the renewal tail empirical process for u = n^a."""

    regime: str
    beta: float
    exponent: float
    n_tail_z: float

    def to_dict(self) -> dict:
        return {'regime': self.regime, 'beta': self.beta, 'exponent': self.exponent, 'n_tail_z': self.n_tail_z}


def classify_regime(beta: float, exponent: float, n: int) -> RegimeInfo:
    """
    Regime implied by u = n^a: n P(Z > u) ~ n^(1 - a beta).

    'degenerate' when a beta > 1, otherwise 'stable' for beta < 2 and
    'gaussian' for beta > 2.

    Raises:
        OutOfRegimeError: On the boundaries a beta == 1 or beta == 2
    """
    if not beta > 1:
        raise OutOfRegimeError(f"Renewal chain needs beta > 1, got {beta}")
    if not exponent > 0:
        raise ValidationError(format_validation_error('exponent', exponent, 'must be positive'))
    u = float(n) ** exponent
    n_tail_z = n * math.floor(u) ** (-beta) if u >= 1 else float(n)
    product = exponent * beta
    if math.isclose(product, 1.0):
        raise OutOfRegimeError(f"a * beta = 1 is the boundary between regimes (a={exponent}, beta={beta})")
    if product > 1:
        regime = 'degenerate'
    elif math.isclose(beta, 2.0):
        raise OutOfRegimeError("beta = 2 separates the stable and Gaussian regimes")
    elif beta < 2:
        regime = 'stable'
    else:
        regime = 'gaussian'
    logger.debug(f"Renewal regime {regime}: beta={beta}, a={exponent}, n P(Z>u)={n_tail_z:.3g}")
    return RegimeInfo(regime=regime, beta=float(beta), exponent=float(exponent), n_tail_z=n_tail_z)


def stable_normalizer(beta: float, n: int) -> float:
    """a_n with n P(Z > a_n) = 1, i.e. a_n = n^(1/beta)."""
    return float(n) ** (1.0 / beta)
