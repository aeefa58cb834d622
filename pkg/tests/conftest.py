"""
Pytest configuration and shared fixtures for the tailchain test suite.

This module provides:
- Model spec fixtures (i.i.d. Pareto, AR(1), T-ARCH, renewal chain)
- Simulated path fixtures of modest length
- Experiment config builders
- Isolation of the global toolkit configuration
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add the project root to the Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from tailchain.config import ToolkitConfig, set_config
from tailchain.harness import ExperimentConfig
from tailchain.models import (
    ArSpec,
    IntegerPareto,
    Pareto,
    RenewalChainSpec,
    StandardGaussian,
    TarchSpec,
    simulate,
)


@pytest.fixture(autouse=True)
def default_toolkit_config(monkeypatch):
    """
    Run every test against the default toolkit configuration.

    A user config file under ~/.tailchain or TAILCHAIN_ environment
    variables must not change test outcomes.
    """
    monkeypatch.delenv('TAILCHAIN_USE_ENV_CONFIG', raising=False)
    set_config(ToolkitConfig.default())
    yield
    set_config(None)


@pytest.fixture
def iid_pareto_spec() -> ArSpec:
    """i.i.d. Pareto(alpha=2) written as AR(1) with phi = 0."""
    return ArSpec(phi=(0.0,), innovation=Pareto(alpha=2.0))


@pytest.fixture
def ar1_spec() -> ArSpec:
    """AR(1) with phi = 0.7 and positive Pareto(alpha=2) innovations."""
    return ArSpec(phi=(0.7,), innovation=Pareto(alpha=2.0))


@pytest.fixture
def ar1_signed_spec() -> ArSpec:
    """AR(1) with phi = 0.7 and symmetric Pareto(alpha=2) innovations."""
    return ArSpec(phi=(0.7,), innovation=Pareto(alpha=2.0, signed=True))


@pytest.fixture
def tarch_spec() -> TarchSpec:
    """Symmetric T-ARCH with b11 = b21 = 1 and Gaussian innovations (tail index 2)."""
    return TarchSpec(b10=1.0, b11=1.0, b20=1.0, b21=1.0, innovation=StandardGaussian())


@pytest.fixture
def renewal_spec() -> RenewalChainSpec:
    """Stationary renewal chain with beta = 3."""
    return RenewalChainSpec(IntegerPareto(3.0))


@pytest.fixture
def pareto_sample(iid_pareto_spec):
    """i.i.d. Pareto(2) path of length 5000."""
    return simulate(iid_pareto_spec, 5000, seed=11)


@pytest.fixture
def ar1_sample(ar1_spec):
    """AR(1) path of length 5000."""
    return simulate(ar1_spec, 5000, seed=12)


@pytest.fixture
def small_rng() -> np.random.Generator:
    """Deterministic generator for hand-built inputs."""
    return np.random.default_rng(20240917)


@pytest.fixture
def hill_config(iid_pareto_spec) -> ExperimentConfig:
    """Small Hill experiment on i.i.d. Pareto(2) with theory centering."""
    return ExperimentConfig(
        model=iid_pareto_spec,
        n=2000,
        statistic='hill',
        k=100,
        replications=20,
        master_seed=5,
        centering='theory',
        theory_center=0.5,
        name='hill-small',
    )


@pytest.fixture
def configs_dir() -> Path:
    """Directory of the shipped example configs."""
    return project_root / 'configs'
