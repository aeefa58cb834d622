"""
Test suite for the toolkit configuration.
"""

import json
import logging

import pytest

from tailchain.config import LoggingConfig, ToolkitConfig, get_config, set_config, setup_logging
from tailchain.exceptions import ConfigurationError


class TestToolkitConfig:
    """Test suite for ToolkitConfig defaults, files and validation."""

    def test_defaults(self):
        """Test the default settings validate."""
        config = ToolkitConfig.default()
        assert config.validate() is True
        assert config.harness.workers == 1
        assert config.harness.pilot_multiplier == 100
        assert config.simulation.tarch_burn_in == 1000
        assert set(config.to_dict()) == {'logging', 'simulation', 'harness', 'output'}

    def test_save_and_load(self, tmp_path):
        """Test a saved configuration loads back unchanged."""
        config = ToolkitConfig.default()
        config.harness.workers = 6
        config.output.out_dir = str(tmp_path / 'results')
        path = tmp_path / 'config.json'
        config.save_to_file(path)
        assert ToolkitConfig.load_from_file(path) == config

    def test_missing_file_gives_defaults(self, tmp_path):
        """Test an absent config file falls back to defaults."""
        assert ToolkitConfig.load_from_file(tmp_path / 'absent.json') == ToolkitConfig.default()

    def test_malformed_file(self, tmp_path):
        """Test a broken or mistyped config file raises."""
        broken = tmp_path / 'broken.json'
        broken.write_text('{', encoding='utf-8')
        with pytest.raises(ConfigurationError):
            ToolkitConfig.load_from_file(broken)
        unknown = tmp_path / 'unknown.json'
        unknown.write_text(json.dumps({'harness': {'threads': 4}}), encoding='utf-8')
        with pytest.raises(ConfigurationError):
            ToolkitConfig.load_from_file(unknown)

    @pytest.mark.parametrize('section, key, value', [
        ('logging', 'level', 'LOUD'),
        ('harness', 'workers', 0),
        ('harness', 'failure_budget', 1.0),
        ('harness', 'jb_p_value_floor', 0.0),
        ('harness', 'truncation_lag', 0),
        ('simulation', 'tarch_burn_in', -1),
    ])
    def test_validate_rejects(self, section, key, value):
        """Test out-of-range settings."""
        config = ToolkitConfig.default()
        setattr(getattr(config, section), key, value)
        with pytest.raises(ConfigurationError):
            config.validate()


class TestEnvironment:
    """Test suite for TAILCHAIN_ environment variables."""

    def test_typed_values(self, monkeypatch, tmp_path):
        """Test environment strings are coerced to the field types."""
        monkeypatch.setenv('TAILCHAIN_HARNESS_WORKERS', '4')
        monkeypatch.setenv('TAILCHAIN_HARNESS_SHOW_PROGRESS', 'true')
        monkeypatch.setenv('TAILCHAIN_HARNESS_FAILURE_BUDGET', '0.1')
        monkeypatch.setenv('TAILCHAIN_LOGGING_LEVEL', 'DEBUG')
        config = ToolkitConfig.load_from_env(env_file=tmp_path / 'absent.env')
        assert config.harness.workers == 4
        assert config.harness.show_progress is True
        assert config.harness.failure_budget == 0.1
        assert config.logging.level == 'DEBUG'

    def test_invalid_number(self, monkeypatch, tmp_path):
        """Test a non-numeric value for a numeric field raises."""
        monkeypatch.setenv('TAILCHAIN_HARNESS_WORKERS', 'many')
        with pytest.raises(ConfigurationError):
            ToolkitConfig.load_from_env(env_file=tmp_path / 'absent.env')

    def test_dotenv_file(self, monkeypatch, tmp_path):
        """Test values from a .env file are picked up."""
        # register the variable with monkeypatch so the value loaded from .env is removed afterwards
        monkeypatch.setenv('TAILCHAIN_OUTPUT_OUT_DIR', 'placeholder')
        monkeypatch.delenv('TAILCHAIN_OUTPUT_OUT_DIR')
        env_file = tmp_path / '.env'
        env_file.write_text('TAILCHAIN_OUTPUT_OUT_DIR=/data/tail\n', encoding='utf-8')
        assert ToolkitConfig.load_from_env(env_file=env_file).output.out_dir == '/data/tail'

    def test_global_config_from_env(self, monkeypatch):
        """Test get_config reads the environment when TAILCHAIN_USE_ENV_CONFIG is set."""
        monkeypatch.setenv('TAILCHAIN_USE_ENV_CONFIG', '1')
        monkeypatch.setenv('TAILCHAIN_HARNESS_WORKERS', '3')
        set_config(None)
        assert get_config().harness.workers == 3


class TestSetupLogging:
    """Test suite for setup_logging."""

    def test_file_output(self, tmp_path):
        """Test the rotating file handler writes under log_dir."""
        logger = setup_logging(LoggingConfig(level='DEBUG', console_output=False, file_output=True,
                                             log_dir=str(tmp_path)))
        try:
            assert logger.level == logging.DEBUG
            logging.getLogger('tailchain.models').info('simulated')
            for handler in logger.handlers:
                handler.flush()
            assert 'simulated' in (tmp_path / 'tailchain.log').read_text(encoding='utf-8')
        finally:
            for handler in list(logger.handlers):
                handler.close()
                logger.removeHandler(handler)

    def test_handlers_replaced(self):
        """Test repeated setup does not stack handlers."""
        setup_logging(LoggingConfig(console_output=True))
        logger = setup_logging(LoggingConfig(console_output=True))
        assert len(logger.handlers) == 1
        logger.removeHandler(logger.handlers[0])
