"""
Test suite for the tailchain command-line interface.
"""

import json

import pandas as pd
import pytest

from tailchain.cli import apply_override, build_parser, run
from tailchain.config import get_config
from tailchain.exceptions import ConfigurationError


@pytest.fixture(autouse=True)
def quiet_console():
    """Keep log records off stderr so it only carries the error line."""
    get_config().logging.console_output = False


def write_config(tmp_path, data, name='config.json'):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding='utf-8')
    return path


def error_line(capsys):
    lines = [line for line in capsys.readouterr().err.splitlines() if line.strip()]
    return json.loads(lines[-1])


IID = {'model': 'ar', 'phi': [0.0], 'innovation': {'dist': 'pareto', 'alpha': 2.0}}


class TestParser:
    """Test suite for argument parsing and overrides."""

    def test_subcommands(self):
        """Test every subcommand accepts the shared options."""
        args = build_parser().parse_args(['mc', '--config', 'c.json', '--seed', '3', '--workers', '2',
                                          '--override', 'n=10', '--override', 'k=2'])
        assert args.command == 'mc'
        assert args.seed == 3
        assert args.override == ['n=10', 'k=2']

    def test_unknown_subcommand(self):
        """Test argparse rejects unknown subcommands."""
        with pytest.raises(SystemExit):
            build_parser().parse_args(['plot', '--config', 'c.json'])

    def test_apply_override(self):
        """Test dotted paths, JSON values, string fallback and new objects."""
        data = {'model': {'phi': [0.5]}}
        apply_override(data, 'model.phi=[0.7]')
        apply_override(data, 'name=run-7')
        apply_override(data, 'anticlustering.r=5')
        assert data == {'model': {'phi': [0.7]}, 'name': 'run-7', 'anticlustering': {'r': 5}}

    def test_apply_override_errors(self):
        """Test malformed overrides and paths through scalars."""
        with pytest.raises(ConfigurationError):
            apply_override({}, 'novalue')
        with pytest.raises(ConfigurationError):
            apply_override({'n': 5}, 'n.k=1')


class TestSimulateAndValidate:
    """Test suite for simulate and validate."""

    def test_simulate_reruns_byte_identical(self, tmp_path, configs_dir):
        """Test two runs of the renewal config write identical files."""
        for out in ('one', 'two'):
            assert run(['simulate', '--config', str(configs_dir / 'renewal_simulate.json'),
                        '--out', str(tmp_path / out)]) == 0
        for name in ('path.csv', 'path.json'):
            assert (tmp_path / 'one' / name).read_bytes() == (tmp_path / 'two' / name).read_bytes()
        assert len(pd.read_csv(tmp_path / 'one' / 'path.csv')) == 1000

    def test_seed_and_override(self, tmp_path, configs_dir):
        """Test --seed and --override reach the config."""
        assert run(['simulate', '--config', str(configs_dir / 'renewal_simulate.json'), '--out', str(tmp_path),
                    '--seed', '99', '--override', 'n=50']) == 0
        meta = json.loads((tmp_path / 'path.json').read_text(encoding='utf-8'))
        assert meta['seed'] == 99
        assert meta['n'] == 50

    def test_validate_explosive_ar(self, tmp_path, configs_dir, capsys):
        """Test a nonstationary AR spec exits 2 and names the failing condition."""
        code = run(['validate', '--config', str(configs_dir / 'ar_explosive.json'), '--out', str(tmp_path)])
        assert code == 2
        error = error_line(capsys)
        assert error['error'] == 'InvalidSpecError'
        assert error['exit'] == 2
        report = json.loads((tmp_path / 'validation.json').read_text(encoding='utf-8'))
        assert report['accepted'] is False
        assert report['condition'] == 'spectral_radius'

    def test_validate_tarch(self, tmp_path, configs_dir):
        """Test the symmetric Gaussian T-ARCH spec is accepted with tail index 2."""
        assert run(['validate', '--config', str(configs_dir / 'tarch_validate.json'), '--out', str(tmp_path)]) == 0
        report = json.loads((tmp_path / 'validation.json').read_text(encoding='utf-8'))
        assert report['accepted'] is True
        assert report['tail_index'] == pytest.approx(2.0, abs=1e-6)


class TestEstimationCommands:
    """Test suite for estimate, extremogram and variance."""

    def test_estimate(self, tmp_path):
        """Test several estimators on one simulated path."""
        config = write_config(tmp_path, {'model': IID, 'n': 5000, 'seed': 1, 'estimators': [
            {'name': 'hill', 'k': 100},
            {'name': 'extreme_quantile', 'k': 100, 'p': 0.001},
            {'name': 'extremal_index_tilde', 'k': 100, 'h': 3},
        ]})
        assert run(['estimate', '--config', str(config), '--out', str(tmp_path / 'out')]) == 0
        frame = pd.read_csv(tmp_path / 'out' / 'estimates.csv')
        assert list(frame['name']) == ['hill', 'extreme_quantile', 'extremal_index_tilde']

    def test_estimate_from_data_file(self, tmp_path):
        """Test a supplied CSV sample with an x column."""
        pd.DataFrame({'x': [float(v) for v in range(1, 101)]}).to_csv(tmp_path / 'sample.csv', index=False)
        config = write_config(tmp_path, {'data': str(tmp_path / 'sample.csv'),
                                         'estimators': [{'name': 'cte', 'k': 1, 'h': 0}]})
        assert run(['estimate', '--config', str(config), '--out', str(tmp_path / 'out')]) == 0
        frame = pd.read_csv(tmp_path / 'out' / 'estimates.csv')
        assert frame['value'][0] == pytest.approx(100.0 / 99.0)

    def test_unknown_estimator(self, tmp_path, capsys):
        """Test an unknown estimator name is a configuration error."""
        config = write_config(tmp_path, {'model': IID, 'n': 100, 'estimators': [{'name': 'pickands', 'k': 10}]})
        assert run(['estimate', '--config', str(config), '--out', str(tmp_path)]) == 2
        assert error_line(capsys)['error'] == 'ConfigurationError'

    def test_estimator_without_k(self, tmp_path, capsys):
        """Test an estimator entry without k is a configuration error."""
        config = write_config(tmp_path, {'model': IID, 'n': 100, 'estimators': [{'name': 'hill'}]})
        assert run(['estimate', '--config', str(config), '--out', str(tmp_path)]) == 2
        assert error_line(capsys)['error'] == 'ConfigurationError'

    def test_runtime_error(self, tmp_path, capsys):
        """Test an undefined estimator on the data exits 3."""
        signed = {**IID, 'innovation': {'dist': 'pareto', 'alpha': 2.0, 'signed': True}}
        config = write_config(tmp_path, {'model': signed, 'n': 200, 'seed': 1,
                                         'estimators': [{'name': 'hill', 'k': 190}]})
        assert run(['estimate', '--config', str(config), '--out', str(tmp_path)]) == 3
        assert error_line(capsys)['error'] == 'UndefinedEstimatorError'

    def test_extremogram(self, tmp_path):
        """Test the extremogram and anticlustering outputs."""
        config = write_config(tmp_path, {
            'model': {'model': 'ar', 'phi': [0.7], 'innovation': {'dist': 'pareto', 'alpha': 2.0}},
            'n': 5000, 'seed': 2, 'k': 100, 'max_lag': 5,
            'anticlustering': {'level': 20.0, 'r': 10, 'm_grid': [1, 5]},
        })
        assert run(['extremogram', '--config', str(config), '--out', str(tmp_path / 'out')]) == 0
        assert len(pd.read_csv(tmp_path / 'out' / 'extremogram.csv')) == 6
        sums = json.loads((tmp_path / 'out' / 'anticlustering.json').read_text(encoding='utf-8'))
        assert set(sums['partial_sums']) == {'1', '5'}

    def test_variance_ar1(self, tmp_path, configs_dir):
        """Test the shipped AR(1) variance config reproduces 0.7304."""
        assert run(['variance', '--config', str(configs_dir / 'variance_ar1.json'), '--out', str(tmp_path)]) == 0
        data = json.loads((tmp_path / 'variance.json').read_text(encoding='utf-8'))
        assert round(data['hill']['value'], 4) == 0.7304
        assert data['order_statistic'] == pytest.approx((1.0 + 2.0 * 0.49 / 0.51) / 4.0)

    def test_variance_bad_theta(self, tmp_path):
        """Test an unrecognised theta description exits 2."""
        config = write_config(tmp_path, {'alpha': 2.0, 'theta': {'garch': 0.1}})
        assert run(['variance', '--config', str(config), '--out', str(tmp_path)]) == 2


class TestExperimentCommands:
    """Test suite for mc and counterexample."""

    MC = {'name': 'cli-hill', 'model': IID, 'n': 2000, 'statistic': 'hill', 'k': 100, 'replications': 10,
          'master_seed': 4, 'centering': 'theory', 'theory_center': 0.5}

    def test_mc(self, tmp_path):
        """Test a small experiment writes its report and values."""
        config = write_config(tmp_path, self.MC)
        assert run(['mc', '--config', str(config), '--out', str(tmp_path / 'out')]) == 0
        report = json.loads((tmp_path / 'out' / 'report.json').read_text(encoding='utf-8'))
        assert report['config']['master_seed'] == 4
        assert len(pd.read_csv(tmp_path / 'out' / 'report_values.csv')) == 10

    def test_mc_seed_sets_master_seed(self, tmp_path):
        """Test --seed replaces the master seed."""
        config = write_config(tmp_path, self.MC)
        assert run(['mc', '--config', str(config), '--out', str(tmp_path), '--seed', '11']) == 0
        report = json.loads((tmp_path / 'report.json').read_text(encoding='utf-8'))
        assert report['config']['master_seed'] == 11

    def test_mc_tolerance_violation(self, tmp_path, capsys):
        """Test a missed target exits 1 after the report is written."""
        config = write_config(tmp_path, {**self.MC, 'theory_target': 10.0, 'tolerance': 0.01})
        assert run(['mc', '--config', str(config), '--out', str(tmp_path)]) == 1
        assert error_line(capsys)['error'] == 'ToleranceViolationError'
        assert (tmp_path / 'report.json').exists()

    def test_mc_sweep(self, tmp_path):
        """Test k_grid turns mc into a sweep."""
        config = write_config(tmp_path, {**self.MC, 'k_grid': [50, 100]})
        assert run(['mc', '--config', str(config), '--out', str(tmp_path)]) == 0
        assert list(pd.read_csv(tmp_path / 'sweep.csv')['k']) == [50, 100]

    def test_mc_bad_config(self, tmp_path, capsys):
        """Test an invalid experiment exits 2."""
        config = write_config(tmp_path, {**self.MC, 'statistic': 'median'})
        assert run(['mc', '--config', str(config), '--out', str(tmp_path)]) == 2
        assert error_line(capsys)['exit'] == 2

    def test_counterexample(self, tmp_path):
        """Test a short degenerate-regime run passes its verdict."""
        config = write_config(tmp_path, {'beta': 1.5, 'n': 2000, 'exponent': 3.0, 's_grid': [1.0],
                                         'replications': 5, 'master_seed': 1})
        assert run(['counterexample', '--config', str(config), '--out', str(tmp_path)]) == 0
        report = json.loads((tmp_path / 'counterexample.json').read_text(encoding='utf-8'))
        assert report['extra']['regime']['regime'] == 'degenerate'
        assert report['extra']['verdict']['passed'] is True

    def test_counterexample_failed_verdict(self, tmp_path, capsys):
        """Test a Gaussian-regime covariance outside a tiny tolerance exits 1 after the report is written."""
        config = write_config(tmp_path, {'beta': 3.0, 'n': 20000, 'exponent': 0.2, 's_grid': [1.0],
                                         'replications': 20, 'master_seed': 5, 'tolerance': 1e-4})
        assert run(['counterexample', '--config', str(config), '--out', str(tmp_path)]) == 1
        assert error_line(capsys)['error'] == 'ToleranceViolationError'
        report = json.loads((tmp_path / 'counterexample.json').read_text(encoding='utf-8'))
        assert report['extra']['verdict']['passed'] is False


class TestErrors:
    """Test suite for error mapping."""

    def test_missing_config(self, tmp_path, capsys):
        """Test a missing config file exits 2 with a JSON error line."""
        assert run(['simulate', '--config', str(tmp_path / 'absent.json'), '--out', str(tmp_path)]) == 2
        error = error_line(capsys)
        assert set(error) == {'error', 'exit', 'message'}
        assert error['error'] == 'ConfigurationError'

    def test_invalid_workers(self, tmp_path, configs_dir):
        """Test --workers must be positive."""
        assert run(['simulate', '--config', str(configs_dir / 'renewal_simulate.json'), '--out', str(tmp_path),
                    '--workers', '0']) == 2
