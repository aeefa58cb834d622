"""
Threshold ARCH Model

X_j = sqrt(b10 + b11 X_{j-1}^2) Z_j  when X_{j-1} < xi,
X_j = sqrt(b20 + b21 X_{j-1}^2) Z_j  when X_{j-1} >= xi.

Provides the stationarity checks (negative Lyapunov exponent and the
q-th moment contraction), the tail-index root solver, and a numba-compiled
path kernel.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from numba import njit
from scipy import integrate, optimize

from tailchain.constants import NumericalTolerances, SimulationDefaults
from tailchain.exceptions import (
    InvalidSpecError,
    RootNotBracketedError,
    ValidationError,
    format_validation_error,
)
from tailchain.models.base import PathSample, check_count, check_seed, make_rng
from tailchain.models.innovations import InnovationDist, StandardGaussian

logger = logging.getLogger(__name__)


@njit(cache=True)
def tarch_path(b10: float, b11: float, b20: float, b21: float, xi: float,
               z: np.ndarray, x0: float) -> np.ndarray:
    """
    Run the threshold-ARCH recursion over an innovation array.

    No parameter validation is done here; simulate_tarch validates.

    Args:
        b10, b11: Coefficients used when the previous value is below xi
        b20, b21: Coefficients used when the previous value is at or above xi
        xi: Regime threshold
        z: Innovations Z_1..Z_m
        x0: Initial state X_0

    Returns:
        Array X_1..X_m
    """
    m = z.shape[0]
    out = np.empty(m)
    prev = x0
    for t in range(m):
        if prev < xi:
            scale = math.sqrt(b10 + b11 * prev * prev)
        else:
            scale = math.sqrt(b20 + b21 * prev * prev)
        prev = scale * z[t]
        out[t] = prev
    return out


@dataclass(frozen=True)
class LyapunovResult:
    """Lyapunov exponent with its Monte Carlo standard error (0 for closed forms)."""

    exponent: float
    std_error: float
    method: str

    @property
    def negative(self) -> bool:
        return self.exponent < 0


def tarch_lyapunov(b11: float, b21: float, innovation: Optional[InnovationDist] = None,
                   draws: int = SimulationDefaults.LYAPUNOV_MC_DRAWS,
                   seed: int = SimulationDefaults.LYAPUNOV_MC_SEED) -> LyapunovResult:
    """
    Lyapunov exponent p log sqrt(b11) + (1 - p) log sqrt(b21) + E log|Z| with p = P(Z < 0).

    E log|Z| is taken in closed form when the innovation provides one
    (Gaussian, Pareto) and by Monte Carlo with a fixed seed otherwise.

    Args:
        b11: Slope coefficient of the lower regime
        b21: Slope coefficient of the upper regime
        innovation: Innovation law (default standard Gaussian)
        draws: Monte Carlo draws when no closed form exists
        seed: Monte Carlo seed

    Returns:
        LyapunovResult

    Example:
        >>> round(tarch_lyapunov(1.0, 1.0).exponent, 5)
        -0.63518
    """
    if innovation is None:
        innovation = StandardGaussian()
    if b11 <= 0 or b21 <= 0:
        raise InvalidSpecError(format_validation_error('b11/b21', (b11, b21), 'must be positive'),
                               condition='b_positive')

    p = innovation.prob_negative()
    drift = p * 0.5 * math.log(b11) + (1.0 - p) * 0.5 * math.log(b21)

    closed = innovation.log_abs_mean()
    if closed is not None:
        return LyapunovResult(exponent=drift + closed, std_error=0.0, method='closed_form')

    z = innovation.sample(make_rng(seed), draws)
    logs = np.log(np.abs(z.astype(float)))
    mean = float(np.mean(logs))
    se = float(np.std(logs, ddof=1) / math.sqrt(draws))
    logger.debug(f"Lyapunov Monte Carlo: E log|Z| = {mean:.6f} (se {se:.2e}, {draws} draws)")
    return LyapunovResult(exponent=drift + mean, std_error=se, method='monte_carlo')


def truncated_moment(innovation: InnovationDist, a: float, negative: bool) -> float:
    """
    E[|Z|^a 1{Z < 0}] (negative=True) or E[|Z|^a 1{Z >= 0}] by adaptive quadrature.

    Returns math.inf once a reaches the innovation's tail index.
    """
    if not innovation.is_continuous:
        raise InvalidSpecError('T-ARCH innovations must have a density', condition='continuous_innovation')
    if a >= innovation.tail_index():
        return math.inf
    if negative and innovation.prob_negative() == 0.0:
        return 0.0

    sign = -1.0 if negative else 1.0

    def integrand(y: float) -> float:
        return y ** a * float(innovation.pdf(sign * y))

    start = innovation.abs_support_start()
    peak = start + math.sqrt(max(a, 1.0)) + 1.0
    edges = [start, peak, 4.0 * peak + 10.0, math.inf]
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        value, _ = integrate.quad(integrand, lo, hi, epsrel=NumericalTolerances.QUAD_REL_TOL,
                                  epsabs=0.0, limit=NumericalTolerances.QUAD_LIMIT)
        total += value
    return total


def tail_index_equation(a: float, b11: float, b21: float,
                        innovation: Optional[InnovationDist] = None) -> float:
    """Left side minus one of b11^(a/2) E[|Z|^a; Z<0] + b21^(a/2) E[|Z|^a; Z>=0] = 1."""
    if innovation is None:
        innovation = StandardGaussian()
    lower = truncated_moment(innovation, a, negative=True)
    upper = truncated_moment(innovation, a, negative=False)
    if math.isinf(lower) or math.isinf(upper):
        return math.inf
    return b11 ** (a / 2.0) * lower + b21 ** (a / 2.0) * upper - 1.0


def tarch_tail_index(b11: float, b21: float, innovation: Optional[InnovationDist] = None,
                     bracket: Tuple[float, float] = (NumericalTolerances.TAIL_INDEX_BRACKET_LOW,
                                                     NumericalTolerances.TAIL_INDEX_BRACKET_HIGH),
                     tol: float = NumericalTolerances.TAIL_INDEX_ABS_TOL) -> float:
    """
    Solve the stationary tail-index equation by bisection.

    Args:
        b11: Slope coefficient of the lower regime
        b21: Slope coefficient of the upper regime
        innovation: Innovation law (default standard Gaussian)
        bracket: Search interval for alpha
        tol: Absolute tolerance on alpha

    Returns:
        Tail index alpha

    Raises:
        RootNotBracketedError: If the equation has no sign change on the bracket

    Example:
        >>> abs(tarch_tail_index(1.0, 1.0) - 2.0) < 1e-6
        True
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    f_lo = tail_index_equation(lo, b11, b21, innovation)
    f_hi = tail_index_equation(hi, b11, b21, innovation)
    if not (f_lo < 0 < f_hi or f_hi < 0 < f_lo):
        raise RootNotBracketedError(
            f"Tail-index equation has no sign change on [{lo:g}, {hi:g}] "
            f"(values {f_lo:.3g}, {f_hi:.3g})"
        )
    root = float(optimize.bisect(tail_index_equation, lo, hi, args=(b11, b21, innovation),
                           xtol=tol, maxiter=NumericalTolerances.TAIL_INDEX_MAX_ITER))
    logger.debug(f"T-ARCH tail index: alpha={root:.10f} (b11={b11}, b21={b21})")
    return root


@dataclass(frozen=True)
class TarchSpec:
    """
    Validated threshold-ARCH specification.

    Attributes:
        b10, b11, b20, b21: Positive regime coefficients
        xi: Regime threshold
        innovation: Innovation law (default standard Gaussian)
        q: Moment order of the contraction check
    """

    b10: float
    b11: float
    b20: float
    b21: float
    xi: float = 0.0
    innovation: InnovationDist = field(default_factory=StandardGaussian)
    q: float = SimulationDefaults.TARCH_MOMENT_ORDER

    def __post_init__(self):
        report = validate_tarch(self)
        if not report.accepted:
            raise InvalidSpecError(
                format_validation_error('tarch', self.coefficients, '; '.join(report.reasons)),
                condition=report.failed_condition,
            )

    @property
    def coefficients(self) -> Tuple[float, float, float, float]:
        return (self.b10, self.b11, self.b20, self.b21)

    def to_dict(self) -> dict:
        return {
            'model': 'tarch',
            'b10': self.b10,
            'b11': self.b11,
            'b20': self.b20,
            'b21': self.b21,
            'xi': self.xi,
            'q': self.q,
            'innovation': self.innovation.to_dict(),
        }


@dataclass(frozen=True)
class TarchValidationReport:
    """Outcome of the T-ARCH stationarity checks."""

    lyapunov: Optional[LyapunovResult]
    moment_bound: float
    accepted: bool
    reasons: Tuple[str, ...] = ()
    failed_condition: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            'model': 'tarch',
            'lyapunov_exponent': None if self.lyapunov is None else self.lyapunov.exponent,
            'lyapunov_std_error': None if self.lyapunov is None else self.lyapunov.std_error,
            'lyapunov_method': None if self.lyapunov is None else self.lyapunov.method,
            'moment_bound': self.moment_bound,
            'accepted': self.accepted,
            'reasons': list(self.reasons),
        }


def validate_tarch(spec) -> TarchValidationReport:
    """
    Check positivity, the Lyapunov exponent and the q-th moment contraction.

    Accepts anything with b10, b11, b20, b21, innovation and q attributes,
    so it can run before a TarchSpec exists.
    """
    coeffs = (spec.b10, spec.b11, spec.b20, spec.b21)
    if not all(math.isfinite(c) and c > 0 for c in coeffs):
        return TarchValidationReport(
            lyapunov=None, moment_bound=math.nan, accepted=False,
            reasons=(f"all b_ij must be > 0, got {coeffs}",), failed_condition='b_positive',
        )
    if not spec.innovation.is_continuous:
        return TarchValidationReport(
            lyapunov=None, moment_bound=math.nan, accepted=False,
            reasons=("innovation must be continuous",), failed_condition='continuous_innovation',
        )

    lyap = tarch_lyapunov(spec.b11, spec.b21, spec.innovation)
    bound = max(spec.b11, spec.b21) ** (spec.q / 2.0) * spec.innovation.abs_moment(spec.q)

    reasons = []
    failed = None
    if not lyap.exponent < 0:
        reasons.append(f"Lyapunov exponent {lyap.exponent:.6g} must be < 0")
        failed = 'lyapunov'
    if not bound < 1:
        reasons.append(f"(b11 v b21)^(q/2) E|Z|^q = {bound:.6g} with q = {spec.q} must be < 1")
        failed = failed or 'moment_bound'

    return TarchValidationReport(
        lyapunov=lyap, moment_bound=bound, accepted=not reasons,
        reasons=tuple(reasons), failed_condition=failed,
    )


def simulate_tarch(spec: TarchSpec, n: Optional[int] = None, seed: int = 0,
                   burn_in: Optional[int] = None, x0: float = 0.0,
                   innovations: Optional[np.ndarray] = None) -> PathSample:
    """
    Simulate a T-ARCH path.

    Args:
        spec: Validated T-ARCH specification
        n: Number of returned values (default: whatever the injected stream leaves)
        seed: 64-bit seed for the innovation stream
        burn_in: Steps discarded before the returned values (default 1000)
        x0: Initial state
        innovations: Optional injected Z stream of length >= burn_in + n

    Returns:
        PathSample of length n
    """
    if not isinstance(spec, TarchSpec):
        raise ValidationError(format_validation_error('spec', type(spec).__name__, 'must be a TarchSpec'))
    seed = check_seed(seed)
    if burn_in is None:
        burn_in = SimulationDefaults.TARCH_BURN_IN
    burn_in = check_count('burn_in', burn_in, minimum=0)

    if innovations is None:
        n = check_count('n', n)
        z = spec.innovation.sample(make_rng(seed), burn_in + n)
    else:
        z = np.asarray(innovations, dtype=float)
        if n is None:
            n = z.size - burn_in
        n = check_count('n', n)
        if z.size < burn_in + n:
            raise ValidationError(format_validation_error(
                'innovations', z.size, f'need at least burn_in + n = {burn_in + n} values'))
        z = z[:burn_in + n]

    path = tarch_path(spec.b10, spec.b11, spec.b20, spec.b21, spec.xi,
                      np.ascontiguousarray(z, dtype=np.float64), float(x0))[burn_in:]
    logger.debug(f"Simulated T-ARCH path: n={n}, seed={seed}, burn_in={burn_in}")
    return PathSample(values=path, seed=seed, burn_in=burn_in, model=spec)
