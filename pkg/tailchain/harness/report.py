"""
Monte Carlo Reports

McReport holds one record per replication (seed, raw statistic values,
normalized deviations, normalization factors) and the aggregates derived
from them. Aggregates are always recomputed from the stored records, so
any subset of replications can be re-aggregated exactly.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from tailchain.constants import HarnessDefaults

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReplicationRecord:
    """
    Outcome of one replication.

    Attributes:
        index: Replication index
        seed: Derived 64-bit seed
        raw: Statistic values (one per grid point)
        deviations: Normalized deviations (one per grid point)
        factors: Normalization factors used ('sqrt_k', 'sqrt_nFz', ...)
        error: Error message when the replication failed
    """

    index: int
    seed: int
    raw: Tuple[float, ...] = ()
    deviations: Tuple[float, ...] = ()
    factors: Dict[str, float] = field(default_factory=dict)
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'index': self.index,
            'seed': self.seed,
            'raw': list(self.raw),
            'deviations': list(self.deviations),
            'factors': dict(sorted(self.factors.items())),
            'error': self.error,
        }


def summarize(values: np.ndarray, jb_floor: float = HarnessDefaults.JB_P_VALUE_FLOOR) -> Dict[str, Any]:
    """
    Moments and Jarque-Bera diagnostic of an (R, m) array of deviations.

    Moments are per grid point; the normality diagnostic uses the first column.
    """
    values = np.atleast_2d(np.asarray(values, dtype=float))
    r = values.shape[0]
    out: Dict[str, Any] = {'replications': r}
    if r == 0:
        return out
    out['mean'] = values.mean(axis=0).tolist()
    if r >= 2:
        out['variance'] = values.var(axis=0, ddof=1).tolist()
        out['std_error'] = (values.std(axis=0, ddof=1) / math.sqrt(r)).tolist()
        out['covariance'] = np.atleast_2d(np.cov(values, rowvar=False, ddof=1)).tolist()
    if r >= 3:
        out['skewness'] = stats.skew(values, axis=0, bias=False).tolist()
        out['excess_kurtosis'] = stats.kurtosis(values, axis=0, fisher=True, bias=True).tolist()
        jb = stats.jarque_bera(values[:, 0])
        out['jarque_bera'] = {
            'statistic': float(jb.statistic),
            'p_value': float(jb.pvalue),
            'p_value_floor': jb_floor,
            'normal': bool(jb.pvalue >= jb_floor),
        }
    return out


@dataclass(frozen=True)
class McReport:
    """
    Sealed result of a replicated experiment.

    Attributes:
        config: Dictionary form of the experiment configuration
        records: One ReplicationRecord per replication, sorted by index
        center: Centering values used for the deviations
        target: Theory target for the variance of the first grid point
        tolerance: Relative tolerance on the target
        extra: Experiment-specific results (regime verdicts, diagnostics)
        elapsed_seconds: Wall-clock runtime; logged, never serialized
    """

    config: Dict[str, Any]
    records: Tuple[ReplicationRecord, ...]
    center: Tuple[float, ...] = ()
    target: Optional[float] = None
    tolerance: Optional[float] = None
    extra: Dict[str, Any] = field(default_factory=dict)
    elapsed_seconds: float = field(default=0.0, compare=False)

    @property
    def ok_records(self) -> List[ReplicationRecord]:
        return [rec for rec in self.records if rec.ok]

    @property
    def failures(self) -> int:
        return sum(1 for rec in self.records if not rec.ok)

    @property
    def values(self) -> np.ndarray:
        """(R_ok, m) array of normalized deviations."""
        rows = [rec.deviations for rec in self.ok_records]
        if not rows:
            return np.empty((0, len(self.center)))
        return np.asarray(rows, dtype=float)

    @property
    def raw_values(self) -> np.ndarray:
        rows = [rec.raw for rec in self.ok_records]
        if not rows:
            return np.empty((0, len(self.center)))
        return np.asarray(rows, dtype=float)

    @property
    def statistics(self) -> Dict[str, Any]:
        floor = self.config.get('jb_p_value_floor', HarnessDefaults.JB_P_VALUE_FLOOR)
        return summarize(self.values, floor)

    @property
    def variance(self) -> float:
        values = self.values
        if values.shape[0] < 2:
            return math.nan
        return float(values[:, 0].var(ddof=1))

    @property
    def mean(self) -> float:
        values = self.values
        return float(values[:, 0].mean()) if values.shape[0] else math.nan

    @property
    def relative_error(self) -> Optional[float]:
        if self.target is None or self.target == 0:
            return None
        return abs(self.variance - self.target) / abs(self.target)

    @property
    def passed(self) -> Optional[bool]:
        """True/False against the tolerance, None when no target or tolerance is configured."""
        if self.tolerance is None or self.relative_error is None:
            return None
        return bool(self.relative_error <= self.tolerance)

    def subset(self, indices: Sequence[int]) -> 'McReport':
        """Report restricted to the given replication indices."""
        keep = set(int(i) for i in indices)
        records = tuple(rec for rec in self.records if rec.index in keep)
        return replace(self, records=records)

    def to_dict(self) -> Dict[str, Any]:
        """Full JSON form; excludes wall-clock time so files are byte-reproducible."""
        return {
            'config': self.config,
            'center': list(self.center),
            'target': self.target,
            'tolerance': self.tolerance,
            'relative_error': self.relative_error,
            'passed': self.passed,
            'failures': self.failures,
            'statistics': self.statistics,
            'extra': self.extra,
            'records': [rec.to_dict() for rec in self.records],
        }

    def values_table(self) -> List[Dict[str, Any]]:
        """Per-replication rows for the CSV output."""
        rows = []
        for rec in self.records:
            row: Dict[str, Any] = {'index': rec.index, 'seed': rec.seed}
            for i in range(len(self.center)):
                row[f'raw_{i}'] = rec.raw[i] if rec.ok else math.nan
                row[f'deviation_{i}'] = rec.deviations[i] if rec.ok else math.nan
            for key in sorted(rec.factors):
                row[f'factor_{key}'] = rec.factors[key]
            row['error'] = rec.error or ''
            rows.append(row)
        return rows
