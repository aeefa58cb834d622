"""
Experiment Configuration

ExperimentConfig describes one replicated Monte Carlo experiment: the
model, the sample size, the statistic and its tuning, the centering and
normalization of the deviations, and the seed. Configs are read from and
written to JSON (see tailchain/schemas/experiment_config.schema.json).
"""

import json
import logging
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from tailchain.constants import HarnessDefaults
from tailchain.exceptions import ConfigurationError
from tailchain.models import ArSpec, RenewalChainSpec, spec_from_dict, spec_to_dict
from tailchain.models.base import check_seed
from tailchain.models.serialization import ModelSpec

logger = logging.getLogger(__name__)

SCALAR_STATISTICS = {'hill', 'extremal_index_hat', 'extremal_index_tilde', 'cluster_index', 'cte',
                     'order_statistic'}
LAGGED_STATISTICS = {'extremal_index_hat', 'extremal_index_tilde', 'cluster_index'}

CONFIG_FIELDS = {
    'name', 'model', 'n', 'statistic', 'k', 'level', 'h', 'grid', 'replications', 'master_seed',
    'normalization', 'centering', 'theory_center', 'theory_target', 'tolerance', 'pilot_multiplier',
    'normalizer', 'burn_in', 'workers', 'failure_budget', 'jb_p_value_floor', 'k_grid',
}


@dataclass(frozen=True)
class ExperimentConfig:
    """
    One replicated experiment.

    Attributes:
        model: Model spec simulated in every replication
        n: Path length
        statistic: One of HarnessDefaults.STATISTICS
        k: Intermediate order index (order-statistic threshold)
        level: Explicit threshold level (alternative to k for 'ted')
        h: Lag count
        grid: TED argument points, each of length h + 1
        replications: Number of replications R
        master_seed: Seed all replication and pilot seeds derive from
        normalization: 'sqrt_k', 'sqrt_nFz', 'stable_an' or 'none'
        centering: 'pilot', 'theory' or 'exact'
        theory_center: Center value(s) for centering == 'theory'
        theory_target: Target variance of the first grid point's deviation
        tolerance: Relative tolerance on theory_target
        pilot_multiplier: Pilot path length as a multiple of n
        normalizer: TED normalizer D, 'empirical' or 'model' (n * P(X > u))
        burn_in: Simulator burn-in (None = model default)
        workers: Process pool size; never affects results
        failure_budget: Fraction of replications allowed to fail
        jb_p_value_floor: Jarque-Bera p-value below which normality is rejected
        k_grid: Optional k values for a sweep
    """

    model: ModelSpec
    n: int
    statistic: str
    k: Optional[int] = None
    level: Optional[float] = None
    h: int = 0
    grid: Optional[List[List[float]]] = None
    replications: int = 100
    master_seed: int = 0
    normalization: str = 'sqrt_k'
    centering: str = 'pilot'
    theory_center: Optional[Union[float, List[float]]] = None
    theory_target: Optional[float] = None
    tolerance: Optional[float] = None
    pilot_multiplier: int = HarnessDefaults.PILOT_MULTIPLIER
    normalizer: str = 'empirical'
    burn_in: Optional[int] = None
    workers: int = 1
    failure_budget: float = HarnessDefaults.FAILURE_BUDGET
    jb_p_value_floor: float = HarnessDefaults.JB_P_VALUE_FLOOR
    k_grid: Optional[List[int]] = None
    name: str = 'experiment'

    def __post_init__(self):
        if self.grid is None:
            object.__setattr__(self, 'grid', [[1.0] * (self.h + 1)])
        else:
            object.__setattr__(self, 'grid', [[float(c) for c in point] for point in self.grid])
        object.__setattr__(self, 'master_seed', check_seed(self.master_seed))
        self.validate()

    @property
    def grid_size(self) -> int:
        return len(self.grid) if self.statistic in ('ted',) else 1

    def validate(self) -> bool:
        """
        Check field consistency.

        Raises:
            ConfigurationError: On inconsistent or out-of-range settings
        """
        if self.statistic not in HarnessDefaults.STATISTICS:
            raise ConfigurationError(f"Unknown statistic '{self.statistic}'. "
                                     f"Must be one of: {', '.join(HarnessDefaults.STATISTICS)}")
        if self.normalization not in HarnessDefaults.NORMALIZATIONS:
            raise ConfigurationError(f"Unknown normalization '{self.normalization}'")
        if self.centering not in HarnessDefaults.CENTERINGS:
            raise ConfigurationError(f"Unknown centering '{self.centering}'")
        if self.normalizer not in HarnessDefaults.NORMALIZERS:
            raise ConfigurationError(f"Unknown normalizer '{self.normalizer}'")
        if self.replications < 1:
            raise ConfigurationError("replications must be >= 1")
        if self.n < 2 or self.n <= self.h:
            raise ConfigurationError(f"n must exceed max(1, h); got n={self.n}, h={self.h}")
        if self.h < 0:
            raise ConfigurationError("h must be >= 0")
        if self.pilot_multiplier < 1:
            raise ConfigurationError("pilot_multiplier must be >= 1")
        if self.workers < 1:
            raise ConfigurationError("workers must be >= 1")
        if not 0 <= self.failure_budget < 1:
            raise ConfigurationError("failure_budget must lie in [0, 1)")

        if self.statistic in SCALAR_STATISTICS:
            if self.k is None:
                raise ConfigurationError(f"Statistic '{self.statistic}' needs k")
            if self.statistic in LAGGED_STATISTICS and self.h < 1:
                raise ConfigurationError(f"Statistic '{self.statistic}' needs h >= 1")
        else:
            if (self.k is None) == (self.level is None):
                raise ConfigurationError(f"Statistic '{self.statistic}' needs exactly one of k or level")
            if any(len(point) != self.h + 1 for point in self.grid):
                raise ConfigurationError(f"Every grid point needs h + 1 = {self.h + 1} coordinates")
            if any(c <= 0 for point in self.grid for c in point):
                raise ConfigurationError("Grid coordinates must be positive")

        if self.k is not None and not 1 <= self.k < self.n:
            raise ConfigurationError(f"k must lie in [1, n-1], got {self.k}")
        if self.level is not None and not self.level > 0:
            raise ConfigurationError(f"level must be positive, got {self.level}")

        if self.normalizer == 'model':
            if self.level is None:
                raise ConfigurationError("normalizer 'model' needs a level threshold")
            if not _has_marginal_tail(self.model):
                raise ConfigurationError("normalizer 'model' needs a model with a closed-form marginal tail")
        if self.normalization in ('sqrt_nFz', 'stable_an'):
            if not isinstance(self.model, RenewalChainSpec):
                raise ConfigurationError(f"normalization '{self.normalization}' needs a renewal model")
        if self.statistic == 'any_exceedance' and (self.centering == 'pilot' or self.normalization != 'none'):
            raise ConfigurationError("any_exceedance needs centering 'theory' and normalization 'none'")
        if self.centering == 'theory' and self.theory_center is None:
            raise ConfigurationError("centering 'theory' needs theory_center")
        if isinstance(self.theory_center, list) and len(self.theory_center) != self.grid_size:
            raise ConfigurationError(f"theory_center needs {self.grid_size} values, got {len(self.theory_center)}")
        if self.centering == 'exact':
            if self.statistic != 'ted' or self.h != 0 or self.level is None \
                    or not _has_marginal_tail(self.model):
                raise ConfigurationError("centering 'exact' needs a univariate level TED on a model "
                                         "with a closed-form marginal tail")
        if self.tolerance is not None and self.theory_target is None:
            raise ConfigurationError("tolerance needs theory_target")
        if self.k_grid is not None and (not self.k_grid or any(not 1 <= kk < self.n for kk in self.k_grid)):
            raise ConfigurationError("k_grid entries must lie in [1, n-1]")
        return True

    def with_overrides(self, **changes) -> 'ExperimentConfig':
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'name': self.name,
            'model': spec_to_dict(self.model),
            'n': self.n,
            'statistic': self.statistic,
            'k': self.k,
            'level': self.level,
            'h': self.h,
            'grid': self.grid,
            'replications': self.replications,
            'master_seed': self.master_seed,
            'normalization': self.normalization,
            'centering': self.centering,
            'theory_center': self.theory_center,
            'theory_target': self.theory_target,
            'tolerance': self.tolerance,
            'pilot_multiplier': self.pilot_multiplier,
            'normalizer': self.normalizer,
            'burn_in': self.burn_in,
            'failure_budget': self.failure_budget,
            'jb_p_value_floor': self.jb_p_value_floor,
            'k_grid': self.k_grid,
        }
        # workers is an execution detail and stays out of reports
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ExperimentConfig':
        """
        Build a config from its dictionary form.

        Raises:
            ConfigurationError: Unknown keys or missing required fields
            InvalidSpecError: If the model parameters are rejected
        """
        if not isinstance(data, dict):
            raise ConfigurationError("Experiment config must be a JSON object")
        unknown = set(data) - CONFIG_FIELDS
        if unknown:
            raise ConfigurationError(f"Unknown experiment config keys: {', '.join(sorted(unknown))}")
        for required in ('model', 'n', 'statistic'):
            if required not in data:
                raise ConfigurationError(f"Experiment config is missing '{required}'")
        kwargs = dict(data)
        kwargs['model'] = spec_from_dict(data['model'])
        return cls(**kwargs)

    @classmethod
    def load(cls, path: Union[str, Path]) -> 'ExperimentConfig':
        path = Path(path)
        try:
            data = json.loads(path.read_text(encoding='utf-8'))
        except (OSError, ValueError) as e:
            raise ConfigurationError(f"Cannot read experiment config {path}: {e}") from e
        logger.info(f"Loaded experiment config from: {path}")
        return cls.from_dict(data)


def _has_marginal_tail(model: ModelSpec) -> bool:
    return isinstance(model, RenewalChainSpec) or (isinstance(model, ArSpec) and model.is_iid)


def expand_grid(values: List[float]) -> List[List[float]]:
    """Univariate grid [[s_1], [s_2], ...] from a flat list."""
    return [[float(s)] for s in values]


__all__ = ['CONFIG_FIELDS', 'ExperimentConfig', 'expand_grid']
