"""
Renewal (Descent) Chain

X_j = X_{j-1} - 1 while X_{j-1} > 1, and X_j = Z_j once the chain hits 1,
with i.i.d. integer Pareto Z_j. The chain is positive recurrent when
beta > 1 and has stationary pmf pi(n) = P(Z >= n) / E[Z].
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np
from scipy import special

from tailchain.exceptions import InvalidSpecError, ValidationError, format_validation_error
from tailchain.models.base import PathSample, check_count, check_seed, make_rng
from tailchain.models.innovations import INTEGER_PARETO_CAP, IntegerPareto

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RenewalChainSpec:
    """
    Renewal chain specification.

    Attributes:
        z_dist: Integer Pareto law of the renewal jumps
        initial: 'stationary' or 'fixed'
        initial_state: Starting value when initial == 'fixed'
    """

    z_dist: IntegerPareto
    initial: str = 'stationary'
    initial_state: Optional[int] = None

    def __post_init__(self):
        if not isinstance(self.z_dist, IntegerPareto):
            raise InvalidSpecError(
                format_validation_error('z_dist', type(self.z_dist).__name__, 'must be IntegerPareto'),
                condition='integer_pareto',
            )
        if self.initial not in ('stationary', 'fixed'):
            raise InvalidSpecError(
                format_validation_error('initial', self.initial, "must be 'stationary' or 'fixed'"),
                condition='initial',
            )
        if self.initial == 'fixed':
            if self.initial_state is None or int(self.initial_state) != self.initial_state \
                    or self.initial_state < 1:
                raise InvalidSpecError(
                    format_validation_error('initial_state', self.initial_state, 'must be a positive integer'),
                    condition='initial_state',
                )
            object.__setattr__(self, 'initial_state', int(self.initial_state))

    @property
    def beta(self) -> float:
        return self.z_dist.beta

    def mean_jump(self) -> float:
        """E[Z_0] = 1 + zeta(beta)."""
        return self.z_dist.mean()

    def renewal_rate(self) -> float:
        """lambda = 1 / E[Z_0], the long-run frequency of visits to state 1."""
        return 1.0 / self.mean_jump()

    def to_dict(self) -> dict:
        data = {'model': 'renewal', 'beta': self.beta, 'initial': self.initial}
        if self.initial == 'fixed':
            data['initial_state'] = self.initial_state
        return data


@dataclass(frozen=True)
class StationaryPmf:
    """pi(1..n_max) with the exact mass beyond n_max."""

    pmf: np.ndarray
    tail_mass: float

    @property
    def n_max(self) -> int:
        return int(self.pmf.size)

    def total(self) -> float:
        return float(math.fsum(self.pmf) + self.tail_mass)


def renewal_stationary_pmf(spec_or_dist: Any, n_max: int) -> StationaryPmf:
    """
    Stationary pmf pi(n) = P(Z > n - 1) / E[Z] for n = 1..n_max, plus tail mass.

    Accepts a RenewalChainSpec or any jump law exposing integer_survival(n)
    and mean(); laws that also expose survival_tail_sum(m) get an exact tail
    (for integer Pareto the Hurwitz zeta value), others get 1 - sum.

    Example:
        >>> table = renewal_stationary_pmf(RenewalChainSpec(IntegerPareto(3.0)), 10)
        >>> abs(table.total() - 1.0) < 1e-12
        True
    """
    dist = spec_or_dist.z_dist if isinstance(spec_or_dist, RenewalChainSpec) else spec_or_dist
    n_max = check_count('n_max', n_max)
    mean = float(dist.mean())
    states = np.arange(1, n_max + 1)
    pmf = np.asarray(dist.integer_survival(states - 1), dtype=float) / mean

    if hasattr(dist, 'survival_tail_sum'):
        tail = float(dist.survival_tail_sum(n_max)) / mean
    else:
        tail = max(0.0, 1.0 - float(math.fsum(pmf)))
    return StationaryPmf(pmf=pmf, tail_mass=tail)


def stationary_upper_tail(spec: RenewalChainSpec, m: int) -> float:
    """P(X_0 >= m) under the stationary law; 1 for m <= 1, zeta(beta, m-1)/E[Z] otherwise."""
    if m <= 1:
        return 1.0
    return float(special.zeta(spec.beta, m - 1)) / spec.mean_jump()


def renewal_marginal_tail(spec: RenewalChainSpec, x) -> np.ndarray:
    """
    Stationary survival P(X_0 > x) = E[(Z - floor(x))_+] / E[Z] for x >= 0.

    Vectorised over x.
    """
    x = np.asarray(x, dtype=float)
    a = np.floor(np.maximum(x, 0.0))
    mean = spec.mean_jump()
    safe = np.maximum(a, 1.0)
    tail = np.where(a >= 1, special.zeta(spec.beta, safe), mean) / mean
    return np.where(x < 0, 1.0, tail)


def sample_stationary_initial(spec: RenewalChainSpec, rng: np.random.Generator) -> int:
    """
    Draw X_0 from the stationary law by integer bisection on P(X_0 >= m).

    X_0 = max{m : P(X_0 >= m) > U} for U uniform on [0, 1).
    """
    u = float(rng.random())
    lo, hi = 1, 2
    while hi < INTEGER_PARETO_CAP and stationary_upper_tail(spec, hi) > u:
        lo, hi = hi, hi * 2
    # invariant: S(lo) > u, S(hi) <= u (or hi at cap)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if stationary_upper_tail(spec, mid) > u:
            lo = mid
        else:
            hi = mid
    return lo


def simulate_renewal_chain(spec: RenewalChainSpec, n: int, seed: int = 0) -> PathSample:
    """
    Simulate the renewal chain; the returned path starts with X_0.

    Runs Z, Z - 1, ..., 1 are laid out with np.repeat, and the run still
    in progress at time n is truncated.

    Args:
        spec: Renewal chain specification
        n: Path length (X_0..X_{n-1})
        seed: 64-bit seed

    Returns:
        Integer-valued PathSample

    Example:
        >>> spec = RenewalChainSpec(IntegerPareto(3.0), initial='fixed', initial_state=3)
        >>> simulate_renewal_chain(spec, 3, seed=1).values
        array([3., 2., 1.])
    """
    if not isinstance(spec, RenewalChainSpec):
        raise ValidationError(format_validation_error('spec', type(spec).__name__, 'must be a RenewalChainSpec'))
    n = check_count('n', n)
    seed = check_seed(seed)
    rng = make_rng(seed)

    if spec.initial == 'stationary':
        x0 = sample_stationary_initial(spec, rng)
    else:
        x0 = spec.initial_state

    heads = [np.array([x0], dtype=np.int64)]
    covered = x0
    batch = max(16, int(2 * n / spec.mean_jump()) + 16)
    while covered < n:
        z = spec.z_dist.sample(rng, batch)
        heads.append(z)
        covered += int(np.minimum(z, n).sum())
    heads_arr = np.concatenate(heads)

    lengths = np.minimum(heads_arr, n)
    ends = np.cumsum(lengths)
    last = int(np.searchsorted(ends, n))
    heads_arr = heads_arr[:last + 1]
    lengths = lengths[:last + 1].copy()
    lengths[-1] -= ends[last] - n

    starts = np.concatenate(([0], np.cumsum(lengths)[:-1]))
    offsets = np.arange(n) - np.repeat(starts, lengths)
    path = np.repeat(heads_arr, lengths) - offsets

    logger.debug(f"Simulated renewal chain: n={n}, seed={seed}, X0={x0}, cycles={last + 1}")
    return PathSample(values=path.astype(float), seed=seed, burn_in=0, model=spec)
