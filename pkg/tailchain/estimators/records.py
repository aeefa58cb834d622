"""
Estimate Records

One estimator output together with the tuning parameters it was computed
with. Records serialize to a single CSV row or a JSON object.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict

from tailchain.exceptions import ValidationError, format_validation_error


@dataclass(frozen=True)
class EstimateRecord:
    """
    Attributes:
        name: Estimator tag ('hill', 'extremal_index_hat', ...)
        value: Estimate
        k: Intermediate order index
        h: Lag count (0 when unused)
        n: Sample size
        auxiliary: Named extras such as the threshold used
    """

    name: str
    value: float
    k: int
    h: int
    n: int
    auxiliary: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if not self.k < self.n:
            raise ValidationError(format_validation_error('k', self.k, f'must be < n = {self.n}'))
        if not math.isfinite(self.value):
            raise ValidationError(format_validation_error('value', self.value, 'estimate must be finite'))

    def to_row(self) -> Dict[str, Any]:
        """Flat row: name, n, k, h, value, then auxiliary fields in sorted order."""
        row: Dict[str, Any] = {'name': self.name, 'n': self.n, 'k': self.k, 'h': self.h, 'value': self.value}
        for key in sorted(self.auxiliary):
            row[key] = self.auxiliary[key]
        return row

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'value': self.value,
            'k': self.k,
            'h': self.h,
            'n': self.n,
            'auxiliary': dict(sorted(self.auxiliary.items())),
        }
