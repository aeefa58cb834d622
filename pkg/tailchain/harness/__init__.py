"""Seeded, replicated Monte Carlo experiments and their reports."""

from tailchain.harness.counterexample import check_verdict, counterexample_config, counterexample_experiment
from tailchain.harness.experiment import (
    check_tolerance,
    replication_seed,
    resolve_center,
    run_experiment,
    run_replication,
    sweep_k,
)
from tailchain.harness.experiment_config import ExperimentConfig, expand_grid
from tailchain.harness.report import McReport, ReplicationRecord, summarize

__all__ = [
    'ExperimentConfig', 'McReport', 'ReplicationRecord', 'check_tolerance', 'check_verdict',
    'counterexample_config', 'counterexample_experiment', 'expand_grid', 'replication_seed',
    'resolve_center', 'run_experiment', 'run_replication', 'summarize', 'sweep_k',
]
