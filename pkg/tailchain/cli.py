"""
Command-Line Interface

Every subcommand reads one JSON config, applies --seed, --workers and
--override, runs the matching toolkit operation and writes its results to
--out. Failures end with one JSON line on stderr and a mapped exit status:
2 for configuration and validation errors, 3 for runtime errors, 1 when an
mc run misses its configured tolerance.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from tailchain import __version__
from tailchain.asymptotics import (
    anticlustering_diagnostic,
    ar1_covariance,
    covariance_series,
    extremogram,
    extremogram_from_spectral,
    hill_limit_variance,
    order_statistic_limit_variance,
    spectral_tail_from_model,
    theta_plus_from_spectral,
)
from tailchain.config import get_config, setup_logging
from tailchain.constants import ExitCodes
from tailchain.estimators import (
    ESTIMATORS,
    EstimateRecord,
    cte_extrapolated,
    extreme_quantile,
)
from tailchain.exceptions import (
    ConfigurationError,
    InvalidSpecError,
    TailChainError,
    ToleranceViolationError,
    ValidationError,
)
from tailchain.export import ResultWriter
from tailchain.harness import (
    ExperimentConfig,
    check_tolerance,
    check_verdict,
    counterexample_experiment,
    run_experiment,
    sweep_k,
)
from tailchain.models import (
    IntegerPareto,
    PathSample,
    RenewalChainSpec,
    simulate,
    spec_from_dict,
    validation_report,
)

logger = logging.getLogger(__name__)

SUBCOMMANDS = ('simulate', 'estimate', 'extremogram', 'variance', 'mc', 'counterexample', 'validate')
MASTER_SEED_COMMANDS = ('mc', 'counterexample')


# ==================== Config handling ====================

def load_config(path: Path) -> Dict[str, Any]:
    """Read a JSON object from disk."""
    try:
        data = json.loads(Path(path).read_text(encoding='utf-8'))
    except FileNotFoundError as e:
        raise ConfigurationError(f"Config file not found: {path}") from e
    except (OSError, ValueError) as e:
        raise ConfigurationError(f"Cannot parse config {path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigurationError(f"Config {path} must hold a JSON object")
    return data


def apply_override(data: Dict[str, Any], expression: str) -> None:
    """
    Apply one dotted-path override in place.

    The value is parsed as JSON when possible and kept as a string otherwise.

    Example:
        >>> cfg = {'model': {'phi': [0.5]}}
        >>> apply_override(cfg, 'model.phi=[0.7]')
        >>> cfg['model']['phi']
        [0.7]
    """
    key, sep, raw = expression.partition('=')
    if not sep or not key.strip():
        raise ConfigurationError(f"Override must look like key=value, got {expression!r}")
    try:
        value = json.loads(raw)
    except ValueError:
        value = raw
    parts = key.strip().split('.')
    target = data
    for part in parts[:-1]:
        node = target.get(part)
        if node is None:
            node = target[part] = {}
        if not isinstance(node, dict):
            raise ConfigurationError(f"Override path {key!r} runs through a non-object at {part!r}")
        target = node
    target[parts[-1]] = value


def _require(data: Dict[str, Any], *keys: str) -> None:
    missing = [key for key in keys if key not in data]
    if missing:
        raise ConfigurationError(f"Config is missing: {', '.join(missing)}")


def load_sample(data: Dict[str, Any]) -> PathSample:
    """Either read 'data' (a CSV with an 'x' column) or simulate 'model' for n steps with 'seed'."""
    if 'data' in data:
        try:
            frame = pd.read_csv(data['data'], float_precision='round_trip')
        except (OSError, ValueError) as e:
            raise ConfigurationError(f"Cannot read sample file {data['data']}: {e}") from e
        if 'x' not in frame.columns:
            raise ConfigurationError(f"Sample file {data['data']} has no 'x' column")
        return PathSample.from_values(frame['x'].to_numpy(dtype=float))
    _require(data, 'model', 'n')
    spec = spec_from_dict(data['model'])
    return simulate(spec, int(data['n']), int(data.get('seed', 0)), data.get('burn_in'))


# ==================== Subcommands ====================

def cmd_simulate(data: Dict[str, Any], writer: ResultWriter, args) -> int:
    _require(data, 'model', 'n')
    sample = load_sample(data)
    writer.write_path(sample)
    return ExitCodes.SUCCESS


def _estimate_one(x: np.ndarray, item: Dict[str, Any]) -> EstimateRecord:
    _require(item, 'name', 'k')
    name = item['name']
    k = int(item['k'])
    h = int(item.get('h', 0))
    if name in ESTIMATORS:
        return ESTIMATORS[name](x, k, h)
    if name == 'extreme_quantile':
        p = float(item['p'])
        return EstimateRecord(name=name, value=extreme_quantile(x, k, p), k=k, h=0, n=x.size,
                              auxiliary={'p': p})
    if name == 'cte_extrapolated':
        p = float(item['p'])
        return EstimateRecord(name=name, value=cte_extrapolated(x, h, k, p), k=k, h=h, n=x.size,
                              auxiliary={'p': p})
    raise ConfigurationError(f"Unknown estimator '{name}'")


def cmd_estimate(data: Dict[str, Any], writer: ResultWriter, args) -> int:
    _require(data, 'estimators')
    sample = load_sample(data)
    items = data['estimators']
    if not isinstance(items, list) or not items:
        raise ConfigurationError("'estimators' must be a non-empty list")
    records = [_estimate_one(sample.values, item) for item in items]
    writer.write_estimates(records)
    return ExitCodes.SUCCESS


def cmd_extremogram(data: Dict[str, Any], writer: ResultWriter, args) -> int:
    _require(data, 'k', 'max_lag')
    sample = load_sample(data)
    estimate = extremogram(sample, float(data.get('v', 1.0)), float(data.get('w', 1.0)),
                           int(data['k']), int(data['max_lag']))
    writer.write_extremogram(estimate)
    if 'anticlustering' in data:
        block = data['anticlustering']
        _require(block, 'level', 'r', 'm_grid')
        sums = anticlustering_diagnostic(sample, float(block['level']), int(block['r']), block['m_grid'])
        writer.write_json({'level': block['level'], 'r': block['r'], 'partial_sums': sums}, 'anticlustering.json')
    return ExitCodes.SUCCESS


def cmd_variance(data: Dict[str, Any], writer: ResultWriter, args) -> int:
    _require(data, 'alpha', 'theta')
    alpha = float(data['alpha'])
    max_lag = int(data.get('max_lag', get_config().harness.truncation_lag))
    theta = data['theta']
    results: Dict[str, Any] = {'alpha': alpha}

    if theta == 'independent':
        results['hill'] = hill_limit_variance('independent', alpha, max_lag)
        results['covariance_11'] = 1.0
    elif isinstance(theta, dict) and 'ar1' in theta:
        phi = float(theta['ar1'])
        results['hill'] = hill_limit_variance(('ar1', phi), alpha, max_lag)
        results['covariance_11'] = ar1_covariance(phi, alpha)
    elif isinstance(theta, dict) and 'model' in theta:
        _require(theta, 'n', 'k')
        spec = spec_from_dict(theta['model'])
        estimate = spectral_tail_from_model(spec, int(theta['n']), int(theta.get('seed', 0)), max_lag,
                                            int(theta['k']), min_anchors=get_config().harness.min_spectral_anchors)
        results['hill'] = hill_limit_variance(estimate, alpha, max_lag)
        results['covariance_11'] = covariance_series(extremogram_from_spectral(estimate, 1.0, 1.0, alpha)).value
        results['spectral'] = estimate.summary()
        if 'h' in data:
            results['theta_plus'] = theta_plus_from_spectral(estimate, int(data['h']))
    else:
        raise ConfigurationError("theta must be 'independent', {'ar1': phi} or {'model': ..., 'n': ..., 'k': ...}")

    results['order_statistic'] = order_statistic_limit_variance(results['covariance_11'], alpha)
    writer.write_series(results)
    return ExitCodes.SUCCESS


def cmd_mc(data: Dict[str, Any], writer: ResultWriter, args) -> int:
    harness = get_config().harness
    for key in ('pilot_multiplier', 'failure_budget', 'jb_p_value_floor', 'workers'):
        data.setdefault(key, getattr(harness, key))
    config = ExperimentConfig.from_dict(data)
    if args.workers is not None:
        config = config.with_overrides(workers=args.workers)
    if config.k_grid:
        reports = sweep_k(config)
        writer.write_reports(reports)
        for report in reports:
            check_tolerance(report)
        return ExitCodes.SUCCESS
    report = run_experiment(config)
    writer.write_report(report)
    check_tolerance(report)
    return ExitCodes.SUCCESS


def cmd_counterexample(data: Dict[str, Any], writer: ResultWriter, args) -> int:
    _require(data, 'beta', 'n', 'exponent', 's_grid', 'replications')
    spec = RenewalChainSpec(IntegerPareto(float(data['beta'])))
    report = counterexample_experiment(
        spec, int(data['n']), float(data['exponent']), [float(s) for s in data['s_grid']],
        int(data['replications']), int(data.get('master_seed', 0)),
        workers=args.workers or int(data.get('workers', 1)),
        centering=data.get('centering', 'exact'),
        tolerance=data.get('tolerance'),
    )
    writer.write_report(report, 'counterexample')
    check_verdict(report)
    return ExitCodes.SUCCESS


def cmd_validate(data: Dict[str, Any], writer: ResultWriter, args) -> int:
    spec_data = data['model'] if isinstance(data.get('model'), dict) else data
    try:
        spec = spec_from_dict(spec_data)
    except InvalidSpecError as e:
        # rejected at construction; the report still names the failing condition
        writer.write_validation({'model': spec_data.get('model'), 'accepted': False,
                                 'condition': e.condition, 'reasons': [str(e)]})
        raise
    report = validation_report(spec)
    writer.write_validation(report)
    return ExitCodes.SUCCESS if report['accepted'] else ExitCodes.CONFIG_ERROR


COMMANDS = {
    'simulate': cmd_simulate,
    'estimate': cmd_estimate,
    'extremogram': cmd_extremogram,
    'variance': cmd_variance,
    'mc': cmd_mc,
    'counterexample': cmd_counterexample,
    'validate': cmd_validate,
}

HELP = {
    'simulate': 'simulate a model path and write path.csv',
    'estimate': 'run estimators on a simulated or supplied path',
    'extremogram': 'empirical extremogram and anticlustering diagnostic',
    'variance': 'limit variances from the spectral tail process',
    'mc': 'replicated Monte Carlo experiment (or k sweep when k_grid is set)',
    'counterexample': 'renewal chain regime experiment',
    'validate': 'stationarity checks for a model spec; exit 0 iff accepted',
}


# ==================== Entry point ====================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='tailchain',
        description='Tail empirical processes of regularly varying Markov chains',
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    subparsers = parser.add_subparsers(dest='command', required=True, metavar='SUBCOMMAND')
    for name in SUBCOMMANDS:
        sub = subparsers.add_parser(name, help=HELP[name], description=HELP[name])
        sub.add_argument('--config', type=Path, required=True, metavar='PATH', help='JSON config file')
        sub.add_argument('--out', type=Path, default=None, metavar='DIR',
                         help='output directory (default: output.out_dir setting)')
        sub.add_argument('--seed', type=int, default=None, metavar='U64',
                         help='seed (master seed for mc and counterexample)')
        sub.add_argument('--workers', type=int, default=None, metavar='N',
                         help='worker processes; never changes results')
        sub.add_argument('--override', action='append', default=[], metavar='KEY=VALUE',
                         help='dotted-path JSON override, repeatable')
        sub.add_argument('--verbose', action='store_true', help='debug logging')
    return parser


def _emit_error(kind: str, code: int, message: str) -> int:
    sys.stderr.write(json.dumps({'error': kind, 'exit': code, 'message': message}) + '\n')
    return code


def run(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, dispatch, and map errors onto exit codes."""
    args = build_parser().parse_args(argv)
    toolkit = get_config()
    if args.verbose:
        toolkit.logging.level = 'DEBUG'
    setup_logging(toolkit.logging)

    try:
        if args.workers is not None and args.workers < 1:
            raise ConfigurationError(f"--workers must be >= 1, got {args.workers}")
        data = load_config(args.config)
        for expression in args.override:
            apply_override(data, expression)
        if args.seed is not None:
            data['master_seed' if args.command in MASTER_SEED_COMMANDS else 'seed'] = args.seed
        writer = ResultWriter(args.out or toolkit.output.out_dir, toolkit.output)
        logger.info(f"tailchain {args.command}: config={args.config}")
        return COMMANDS[args.command](data, writer, args)
    except ToleranceViolationError as e:
        return _emit_error(type(e).__name__, ExitCodes.TOLERANCE_VIOLATION, str(e))
    except (ConfigurationError, ValidationError) as e:
        return _emit_error(type(e).__name__, ExitCodes.CONFIG_ERROR, str(e))
    except TailChainError as e:
        return _emit_error(type(e).__name__, ExitCodes.RUNTIME_ERROR, str(e))
    except (KeyError, TypeError, ValueError) as e:
        # malformed config values surface here
        return _emit_error('ConfigurationError', ExitCodes.CONFIG_ERROR, f"{type(e).__name__}: {e}")


def main() -> None:
    sys.exit(run())
