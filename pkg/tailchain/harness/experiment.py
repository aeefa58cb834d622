"""
Replicated Monte Carlo Experiments

Each replication derives its own seed from the master seed and its index,
simulates a path, evaluates the configured statistic and stores the
normalized deviation from the centering. Records are collected in index
order, so a report does not depend on the number of worker processes.
"""

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from tqdm import tqdm

from tailchain.config import get_config
from tailchain.constants import SimulationDefaults
from tailchain.exceptions import ConfigurationError, ExperimentFailedError, TailChainError, ToleranceViolationError
from tailchain.harness.experiment_config import ExperimentConfig
from tailchain.harness.report import McReport, ReplicationRecord
from tailchain.harness.statistics import (
    evaluate_statistic,
    exact_center,
    normalized_deviations,
    pilot_k,
    theory_center,
)
from tailchain.models import PathSample, derive_seed, simulate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Centering:
    """Center values and where they came from."""

    values: Tuple[float, ...]
    mode: str
    pilot_seed: Optional[int] = None
    pilot_length: Optional[int] = None
    pilot_k: Optional[int] = None

    def to_dict(self) -> dict:
        return {'mode': self.mode, 'pilot_seed': self.pilot_seed, 'pilot_length': self.pilot_length,
                'pilot_k': self.pilot_k}


def replication_seed(master_seed: int, index: int) -> int:
    return derive_seed(master_seed, index, SimulationDefaults.REPLICATION_STREAM)


def pilot_seed(master_seed: int) -> int:
    """Pilot seed; its stream is disjoint from every replication seed."""
    return derive_seed(master_seed, 0, SimulationDefaults.PILOT_STREAM)


def simulate_pilot(config: ExperimentConfig) -> PathSample:
    length = config.n * config.pilot_multiplier
    seed = pilot_seed(config.master_seed)
    logger.info(f"Simulating pilot path of length {length} (seed={seed})")
    return simulate(config.model, length, seed, config.burn_in)


def resolve_center(config: ExperimentConfig, pilot: Optional[PathSample] = None) -> Centering:
    """
    Centering values for the configured mode.

    Args:
        config: Experiment configuration
        pilot: Already simulated pilot path, reused across a k sweep

    Returns:
        Centering with one value per grid point
    """
    if config.centering == 'theory':
        return Centering(values=theory_center(config), mode='theory')
    if config.centering == 'exact':
        return Centering(values=exact_center(config), mode='exact')

    if pilot is None:
        pilot = simulate_pilot(config)
    k = pilot_k(config, pilot.n)
    raw, _ = evaluate_statistic(config, pilot.values, k)
    logger.debug(f"Pilot center {raw} (k={k}, length={pilot.n})")
    return Centering(values=raw, mode='pilot', pilot_seed=pilot.seed, pilot_length=pilot.n, pilot_k=k)


def run_replication(config: ExperimentConfig, index: int, center: Sequence[float]) -> ReplicationRecord:
    """
    One replication, reproducible in isolation from (config, index).

    Estimation failures are captured in the record instead of raised.
    """
    seed = replication_seed(config.master_seed, index)
    try:
        path = simulate(config.model, config.n, seed, config.burn_in)
        raw, factors = evaluate_statistic(config, path.values)
        deviations = normalized_deviations(config, raw, center, factors)
    except TailChainError as e:
        logger.debug(f"Replication {index} failed: {e}")
        return ReplicationRecord(index=index, seed=seed, error=f"{type(e).__name__}: {e}")
    return ReplicationRecord(index=index, seed=seed, raw=raw, deviations=deviations, factors=factors)


def _replication_task(task: Tuple[ExperimentConfig, int, Tuple[float, ...]]) -> ReplicationRecord:
    config, index, center = task
    return run_replication(config, index, center)


def _collect(config: ExperimentConfig, center: Tuple[float, ...], workers: int,
             show_progress: bool) -> List[ReplicationRecord]:
    tasks = [(config, index, center) for index in range(config.replications)]
    progress = dict(total=len(tasks), desc=config.name, disable=not show_progress)
    if workers <= 1:
        return [_replication_task(task) for task in tqdm(tasks, **progress)]

    chunksize = max(1, len(tasks) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as executor:
        # map keeps submission order
        records = list(tqdm(executor.map(_replication_task, tasks, chunksize=chunksize), **progress))
    return records


def run_experiment(config: ExperimentConfig, pilot: Optional[PathSample] = None,
                   workers: Optional[int] = None, show_progress: Optional[bool] = None) -> McReport:
    """
    Run all replications of an experiment.

    Args:
        config: Experiment configuration
        pilot: Pilot path for centering == 'pilot' (simulated when omitted)
        workers: Process count; defaults to config.workers
        show_progress: Progress bar; defaults to the toolkit setting

    Returns:
        Sealed McReport

    Raises:
        ExperimentFailedError: If more than failure_budget of the replications fail
    """
    workers = config.workers if workers is None else workers
    if show_progress is None:
        show_progress = get_config().harness.show_progress

    start = time.perf_counter()
    logger.info(f"Experiment '{config.name}': statistic={config.statistic}, n={config.n}, "
                f"R={config.replications}, workers={workers}")
    centering = resolve_center(config, pilot)
    records = _collect(config, centering.values, workers, show_progress)
    elapsed = time.perf_counter() - start

    failed = sum(1 for rec in records if not rec.ok)
    if failed > math.floor(config.failure_budget * config.replications):
        raise ExperimentFailedError(
            f"{failed} of {config.replications} replications failed "
            f"(budget {config.failure_budget:.0%}); first error: "
            f"{next(rec.error for rec in records if not rec.ok)}",
            failed=failed, total=config.replications)
    if failed:
        logger.warning(f"{failed} of {config.replications} replications failed within the budget")

    report = McReport(
        config=config.to_dict(),
        records=tuple(records),
        center=centering.values,
        target=config.theory_target,
        tolerance=config.tolerance,
        extra={'centering': centering.to_dict()},
        elapsed_seconds=elapsed,
    )
    logger.info(f"Experiment '{config.name}' finished in {elapsed:.1f}s: "
                f"mean={report.mean:.4g}, variance={report.variance:.4g}")
    return report


def sweep_k(config: ExperimentConfig, k_grid: Optional[Sequence[int]] = None,
            workers: Optional[int] = None, show_progress: Optional[bool] = None) -> List[McReport]:
    """
    One experiment per k with common random numbers.

    Every cell uses the same master seed, so replication i sees the same
    path for every k, and one pilot path is shared by all cells.

    Raises:
        ConfigurationError: If the grid is empty or a k is out of range
    """
    k_grid = list(k_grid if k_grid is not None else (config.k_grid or []))
    cells = [config.with_overrides(k=int(k), k_grid=None) for k in k_grid]
    if not cells:
        raise ConfigurationError("sweep_k needs a non-empty k grid")

    pilot = simulate_pilot(config) if config.centering == 'pilot' else None
    reports = []
    for cell in cells:
        reports.append(run_experiment(cell, pilot=pilot, workers=workers, show_progress=show_progress))
    return reports


def check_tolerance(report: McReport) -> McReport:
    """
    Raise when a configured theory target is missed.

    Raises:
        ToleranceViolationError: If the report has a tolerance and misses it
    """
    if report.passed is False:
        raise ToleranceViolationError(
            f"Variance {report.variance:.6g} misses target {report.target:.6g} "
            f"by {report.relative_error:.1%} (tolerance {report.tolerance:.1%})",
            observed=report.variance, target=report.target)
    return report
