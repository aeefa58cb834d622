"""
Weight Functions for the Weighted Tail Empirical Distribution

psi is applied to the rescaled window X_{j..j+h} / u. The catalogue covers
the indicator (psi = 1), a single coordinate (psi(x) = x_i), and products
of powers of absolute coordinates.
"""

import logging
import warnings
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from tailchain.exceptions import ValidationError, WeightGrowthWarning, format_validation_error

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightFn:
    """
    A weight function psi on (h+1)-dimensional windows.

    Attributes:
        kind: 'indicator', 'coordinate' or 'product_power'
        index: Coordinate used by 'coordinate'
        exponents: Powers q_0..q_h used by 'product_power'
        growth: Declared growth exponents; derived from the kind when omitted
    """

    kind: str = 'indicator'
    index: Optional[int] = None
    exponents: Optional[Tuple[float, ...]] = None
    growth: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        if self.kind == 'coordinate':
            if self.index is None or self.index < 0:
                raise ValidationError(format_validation_error('index', self.index, 'coordinate index must be >= 0'))
        elif self.kind == 'product_power':
            if not self.exponents or any(q < 0 for q in self.exponents):
                raise ValidationError(format_validation_error(
                    'exponents', self.exponents, 'product_power needs nonnegative exponents'))
            object.__setattr__(self, 'exponents', tuple(float(q) for q in self.exponents))
        elif self.kind != 'indicator':
            raise ValidationError(format_validation_error(
                'kind', self.kind, "must be 'indicator', 'coordinate' or 'product_power'"))
        if self.growth is not None:
            if any(q < 0 for q in self.growth):
                raise ValidationError(format_validation_error('growth', self.growth, 'exponents must be >= 0'))
            object.__setattr__(self, 'growth', tuple(float(q) for q in self.growth))

    @classmethod
    def indicator(cls) -> 'WeightFn':
        return cls(kind='indicator')

    @classmethod
    def coordinate(cls, index: int) -> 'WeightFn':
        return cls(kind='coordinate', index=int(index))

    @classmethod
    def product_power(cls, exponents) -> 'WeightFn':
        return cls(kind='product_power', exponents=tuple(exponents))

    @property
    def is_indicator(self) -> bool:
        return self.kind == 'indicator'

    def check_dimension(self, h: int):
        if self.kind == 'coordinate' and self.index > h:
            raise ValidationError(format_validation_error('index', self.index, f'must be <= h = {h}'))
        if self.kind == 'product_power' and len(self.exponents) != h + 1:
            raise ValidationError(format_validation_error(
                'exponents', self.exponents, f'need h + 1 = {h + 1} exponents'))

    def growth_exponents(self, h: int) -> Tuple[float, ...]:
        """Exponents q_0..q_h with |psi(x)| <= sum_i (|x_i| v 1)^{q_i}."""
        if self.growth is not None:
            return self.growth
        if self.kind == 'indicator':
            return (0.0,) * (h + 1)
        if self.kind == 'coordinate':
            return tuple(1.0 if i == self.index else 0.0 for i in range(h + 1))
        total = float(sum(self.exponents))
        return (total,) * (h + 1)

    def check_growth(self, alpha: float, h: int) -> bool:
        """
        Check q_i + q_i' < alpha / 2 for all pairs.

        A violation is reported as a WeightGrowthWarning, never an error.

        Returns:
            True when the condition holds
        """
        q = self.growth_exponents(h)
        worst = 2.0 * max(q)
        ok = worst < alpha / 2.0
        if not ok:
            warnings.warn(
                f"Weight {self.kind} has pairwise growth {worst:g} >= alpha/2 = {alpha / 2:g}",
                WeightGrowthWarning, stacklevel=2,
            )
            logger.warning(f"Weight growth condition fails: 2*max q = {worst:g}, alpha = {alpha:g}")
        return ok

    def __call__(self, windows: np.ndarray) -> np.ndarray:
        """Evaluate psi row-wise on an (m, h+1) array of rescaled windows."""
        windows = np.asarray(windows, dtype=float)
        if self.kind == 'indicator':
            return np.ones(windows.shape[0])
        if self.kind == 'coordinate':
            return windows[:, self.index]
        return np.prod(np.abs(windows) ** np.asarray(self.exponents), axis=1)

    def to_dict(self) -> dict:
        data = {'kind': self.kind}
        if self.index is not None:
            data['index'] = self.index
        if self.exponents is not None:
            data['exponents'] = list(self.exponents)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> 'WeightFn':
        exponents = data.get('exponents')
        growth = data.get('growth')
        return cls(kind=data.get('kind', 'indicator'), index=data.get('index'),
                   exponents=None if exponents is None else tuple(exponents),
                   growth=None if growth is None else tuple(growth))
