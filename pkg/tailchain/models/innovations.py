"""
Innovation Distributions

The fixed catalogue of driving noise laws used by the simulators:
one-sided or symmetric Pareto, standard Gaussian and the integer Pareto
law that drives the renewal chain. Each law knows how to sample itself
by inverse CDF and exposes the moments the stationarity checks need.
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np
from scipy import special, stats

from tailchain.exceptions import InvalidSpecError, ValidationError, format_validation_error


EULER_GAMMA = float(np.euler_gamma)

# Integer Pareto draws are clipped here; P(Z > 2**62) is below 1e-27 for beta > 1.4.
INTEGER_PARETO_CAP = 2 ** 62


class InnovationDist(ABC):
    """Base class for innovation laws."""

    name: str = ''

    @abstractmethod
    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Draw `size` independent variates."""

    @abstractmethod
    def survival(self, x):
        """P(Z > x), vectorised."""

    @abstractmethod
    def pdf(self, x):
        """Density (continuous laws) or probability mass (integer laws)."""

    @abstractmethod
    def prob_negative(self) -> float:
        """P(Z < 0)."""

    @abstractmethod
    def tail_index(self) -> float:
        """Right-tail index; math.inf when all moments are finite."""

    @abstractmethod
    def abs_moment(self, q: float) -> float:
        """E|Z|^q (math.inf when it diverges)."""

    def log_abs_mean(self) -> Optional[float]:
        """E log|Z| in closed form, or None when only Monte Carlo is available."""
        return None

    @property
    def is_continuous(self) -> bool:
        return True

    def abs_support_start(self) -> float:
        """Lower end of the support of |Z|."""
        return 0.0

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        """JSON form with a 'dist' tag."""


@dataclass(frozen=True)
class Pareto(InnovationDist):
    """
    Pareto law with survival (x/scale)^(-alpha) for x >= scale.

    With signed=True the law is the symmetric two-sided version:
    a Pareto magnitude with an independent fair sign.
    """

    alpha: float
    scale: float = 1.0
    signed: bool = False

    name = 'pareto'

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha > 0):
            raise InvalidSpecError(format_validation_error('alpha', self.alpha, 'must be positive'),
                                   condition='alpha_positive')
        if not (math.isfinite(self.scale) and self.scale > 0):
            raise InvalidSpecError(format_validation_error('scale', self.scale, 'must be positive'),
                                   condition='scale_positive')

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        u = 1.0 - rng.random(size)  # (0, 1]
        magnitude = self.scale * u ** (-1.0 / self.alpha)
        if not self.signed:
            return magnitude
        signs = np.where(rng.random(size) < 0.5, -1.0, 1.0)
        return signs * magnitude

    def _magnitude_survival(self, y):
        y = np.asarray(y, dtype=float)
        return np.where(y >= self.scale, (np.maximum(y, self.scale) / self.scale) ** (-self.alpha), 1.0)

    def survival(self, x):
        x = np.asarray(x, dtype=float)
        if not self.signed:
            return self._magnitude_survival(x)
        right = 0.5 * self._magnitude_survival(np.abs(x))
        return np.where(x >= 0, right, 1.0 - right)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        y = np.abs(x) if self.signed else x
        inside = y >= self.scale
        dens = np.where(inside,
                        self.alpha * self.scale ** self.alpha * np.maximum(y, self.scale) ** (-self.alpha - 1.0),
                        0.0)
        return 0.5 * dens if self.signed else dens

    def prob_negative(self) -> float:
        return 0.5 if self.signed else 0.0

    def tail_index(self) -> float:
        return self.alpha

    def abs_moment(self, q: float) -> float:
        if q >= self.alpha:
            return math.inf
        return self.alpha * self.scale ** q / (self.alpha - q)

    def log_abs_mean(self) -> Optional[float]:
        return math.log(self.scale) + 1.0 / self.alpha

    def abs_support_start(self) -> float:
        return self.scale

    def to_dict(self) -> Dict[str, Any]:
        return {'dist': self.name, 'alpha': self.alpha, 'scale': self.scale, 'signed': self.signed}


@dataclass(frozen=True)
class StandardGaussian(InnovationDist):
    """Standard normal innovations; all moments finite."""

    name = 'gaussian'

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.standard_normal(size)

    def survival(self, x):
        return stats.norm.sf(x)

    def pdf(self, x):
        return stats.norm.pdf(x)

    def prob_negative(self) -> float:
        return 0.5

    def tail_index(self) -> float:
        return math.inf

    def abs_moment(self, q: float) -> float:
        return 2.0 ** (q / 2.0) * math.exp(special.gammaln((q + 1.0) / 2.0)) / math.sqrt(math.pi)

    def log_abs_mean(self) -> Optional[float]:
        return -(EULER_GAMMA + math.log(2.0)) / 2.0

    def to_dict(self) -> Dict[str, Any]:
        return {'dist': self.name}


@dataclass(frozen=True)
class IntegerPareto(InnovationDist):
    """
    Integer-valued Pareto law with P(Z > n) = n^(-beta) for n = 1, 2, ...

    Since P(Z > 1) = 1 the mass sits on {2, 3, ...}; E[Z] = 1 + zeta(beta).
    """

    beta: float

    name = 'integer_pareto'

    def __post_init__(self):
        if not (math.isfinite(self.beta) and self.beta > 1):
            raise InvalidSpecError(
                format_validation_error('beta', self.beta, 'integer Pareto needs beta > 1 for a finite mean'),
                condition='beta_gt_1',
            )

    @property
    def is_continuous(self) -> bool:
        return False

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        # P(ceil(U^(-1/beta)) > n) = P(U < n^-beta): closed form of the survival-sequence inverse
        u = 1.0 - rng.random(size)
        draws = np.ceil(np.minimum(u ** (-1.0 / self.beta), float(INTEGER_PARETO_CAP)))
        return draws.astype(np.int64)

    def integer_survival(self, n):
        """P(Z > n) for integer n >= 0."""
        n = np.asarray(n, dtype=float)
        return np.where(n >= 1, np.maximum(n, 1.0) ** (-self.beta), 1.0)

    def survival(self, x):
        return self.integer_survival(np.floor(np.asarray(x, dtype=float)))

    def pdf(self, x):
        n = np.asarray(x, dtype=float)
        mass = self.integer_survival(n - 1) - self.integer_survival(n)
        return np.where((n >= 1) & (n == np.floor(n)), mass, 0.0)

    def survival_tail_sum(self, m: int) -> float:
        """Sum of P(Z > j) over j >= m, i.e. E[(Z - m)_+]."""
        if m < 0:
            raise ValidationError(format_validation_error('m', m, 'must be nonnegative'))
        if m == 0:
            return self.mean()
        return float(special.zeta(self.beta, m))

    def mean(self) -> float:
        return 1.0 + float(special.zeta(self.beta, 1))

    def prob_negative(self) -> float:
        return 0.0

    def tail_index(self) -> float:
        return self.beta

    def abs_moment(self, q: float) -> float:
        if q >= self.beta:
            return math.inf
        if q == 1:
            return self.mean()
        # E Z^q = sum_n n^q P(Z = n), summed to a cutoff plus an integral tail bound
        cutoff = 100_000
        n = np.arange(2, cutoff + 1, dtype=float)
        mass = (n - 1.0) ** (-self.beta) - n ** (-self.beta)
        head = float(np.sum(n ** q * mass))
        tail = self.beta * cutoff ** (q - self.beta) / (self.beta - q)
        return head + tail

    def abs_support_start(self) -> float:
        return 2.0

    def to_dict(self) -> Dict[str, Any]:
        return {'dist': self.name, 'beta': self.beta}


def innovation_from_dict(data: Dict[str, Any]) -> InnovationDist:
    """
    Rebuild an innovation law from its JSON form.

    Raises:
        ValidationError: On an unknown 'dist' tag or missing parameters
    """
    tag = data.get('dist')
    try:
        if tag == 'pareto':
            return Pareto(alpha=float(data['alpha']), scale=float(data.get('scale', 1.0)),
                          signed=bool(data.get('signed', False)))
        if tag == 'gaussian':
            return StandardGaussian()
        if tag == 'integer_pareto':
            return IntegerPareto(beta=float(data['beta']))
    except KeyError as e:
        raise ValidationError(f"Innovation '{tag}' is missing parameter {e}") from e
    raise ValidationError(format_validation_error('dist', tag, "must be 'pareto', 'gaussian' or 'integer_pareto'"))
