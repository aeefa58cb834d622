"""
Configuration Management for tailchain

This module provides a centralized configuration system for tailchain.
Configuration can be loaded from JSON files, environment variables
(optionally via a .env file), or defaults.
"""

import os
import sys
import json
import logging
import logging.handlers
from pathlib import Path
from typing import Optional, Dict, Any
from dataclasses import dataclass, asdict, field

from dotenv import load_dotenv

from tailchain.constants import SimulationDefaults, HarnessDefaults, OutputFormat
from tailchain.exceptions import ConfigurationError

logger = logging.getLogger(__name__)


@dataclass
class LoggingConfig:
    """Logging configuration settings."""

    level: str = "INFO"            # Logging level: DEBUG, INFO, WARNING, ERROR, CRITICAL
    log_dir: Optional[str] = None  # Directory for log files (None = ~/.tailchain/logs)
    console_output: bool = True    # Output logs to stderr
    file_output: bool = False      # Output logs to a rotating file
    max_file_size_mb: int = 10     # Maximum log file size before rotation
    backup_count: int = 5          # Number of backup log files to keep

    def get_log_dir(self) -> Path:
        """
        Get log directory, using default if not specified.

        Returns:
            Path to log directory
        """
        if self.log_dir:
            return Path(self.log_dir)
        return Path.home() / ".tailchain" / "logs"


@dataclass
class SimulationConfig:
    """Simulator settings."""

    ar_burn_in_factor: int = SimulationDefaults.AR_BURN_IN_FACTOR
    tarch_burn_in: int = SimulationDefaults.TARCH_BURN_IN


@dataclass
class HarnessConfig:
    """Monte Carlo harness settings."""

    workers: int = 1                                   # Process pool size (1 = serial)
    pilot_multiplier: int = HarnessDefaults.PILOT_MULTIPLIER
    failure_budget: float = HarnessDefaults.FAILURE_BUDGET
    jb_p_value_floor: float = HarnessDefaults.JB_P_VALUE_FLOOR
    truncation_lag: int = HarnessDefaults.TRUNCATION_LAG
    min_spectral_anchors: int = HarnessDefaults.MIN_SPECTRAL_ANCHORS
    show_progress: bool = False                        # tqdm progress bar over replications


@dataclass
class OutputConfig:
    """Result file settings."""

    out_dir: str = "results"
    float_format: str = OutputFormat.FLOAT_FORMAT
    json_indent: int = OutputFormat.JSON_INDENT


@dataclass
class ToolkitConfig:
    """
    Main tailchain configuration class.

    This class holds all configuration settings for the toolkit.
    Settings can be loaded from a JSON file, from the environment, or use defaults.
    """

    logging: LoggingConfig = field(default_factory=LoggingConfig)
    simulation: SimulationConfig = field(default_factory=SimulationConfig)
    harness: HarnessConfig = field(default_factory=HarnessConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    @classmethod
    def load_from_file(cls, config_path: Optional[Path] = None) -> 'ToolkitConfig':
        """
        Load configuration from JSON file.

        A missing file yields the default configuration. A present but
        malformed file raises ConfigurationError rather than silently
        falling back, since result reproducibility depends on it.

        Args:
            config_path: Path to config file (default: ~/.tailchain/config.json)

        Returns:
            ToolkitConfig instance

        Raises:
            ConfigurationError: If the file cannot be parsed

        Example:
            >>> config = ToolkitConfig.load_from_file()
            >>> config.harness.workers = 8
        """
        if config_path is None:
            config_path = Path.home() / ".tailchain" / "config.json"
        config_path = Path(config_path)

        if not config_path.exists():
            logger.info(f"Configuration file not found, using defaults: {config_path}")
            return cls.default()

        try:
            with open(config_path, 'r') as f:
                data = json.load(f)
            config = cls.from_dict(data)
        except (OSError, ValueError, TypeError) as e:
            raise ConfigurationError(f"Failed to load config from {config_path}: {e}") from e

        logger.info(f"Loaded configuration from: {config_path}")
        return config

    @classmethod
    def load_from_env(cls, env_file: Optional[Path] = None) -> 'ToolkitConfig':
        """
        Load configuration from environment variables.

        Environment variables are prefixed with TAILCHAIN_ followed by the
        section and field name. A .env file is read first if present.

        Examples:
            TAILCHAIN_LOGGING_LEVEL=DEBUG
            TAILCHAIN_HARNESS_WORKERS=8
            TAILCHAIN_OUTPUT_OUT_DIR=/tmp/results

        Args:
            env_file: Optional explicit .env path

        Returns:
            ToolkitConfig instance with values from environment
        """
        load_dotenv(dotenv_path=env_file, override=False)
        config = cls.default()

        for section_name in ('logging', 'simulation', 'harness', 'output'):
            section = getattr(config, section_name)
            for key, current in asdict(section).items():
                raw = os.getenv(f"TAILCHAIN_{section_name.upper()}_{key.upper()}")
                if raw is None:
                    continue
                setattr(section, key, _coerce_env_value(raw, current, f"{section_name}.{key}"))

        logger.info("Loaded configuration from environment variables")
        return config

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ToolkitConfig':
        """Build a configuration from its dictionary form."""
        return cls(
            logging=LoggingConfig(**data.get('logging', {})),
            simulation=SimulationConfig(**data.get('simulation', {})),
            harness=HarnessConfig(**data.get('harness', {})),
            output=OutputConfig(**data.get('output', {})),
        )

    @classmethod
    def default(cls) -> 'ToolkitConfig':
        """
        Create default configuration.

        Returns:
            ToolkitConfig with default values
        """
        return cls(
            logging=LoggingConfig(),
            simulation=SimulationConfig(),
            harness=HarnessConfig(),
            output=OutputConfig(),
        )

    def save_to_file(self, config_path: Optional[Path] = None):
        """
        Save configuration to JSON file.

        Args:
            config_path: Path to save config (default: ~/.tailchain/config.json)
        """
        if config_path is None:
            config_path = Path.home() / ".tailchain" / "config.json"
        config_path = Path(config_path)
        config_path.parent.mkdir(parents=True, exist_ok=True)

        try:
            with open(config_path, 'w') as f:
                json.dump(self.to_dict(), f, indent=2, sort_keys=True)
            logger.info(f"Configuration saved to: {config_path}")
        except OSError as e:
            logger.error(f"Failed to save config to {config_path}: {e}")
            raise

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert configuration to dictionary.

        Returns:
            Dictionary representation of configuration
        """
        return {
            'logging': asdict(self.logging),
            'simulation': asdict(self.simulation),
            'harness': asdict(self.harness),
            'output': asdict(self.output),
        }

    def validate(self) -> bool:
        """
        Validate configuration settings.

        Returns:
            True if configuration is valid

        Raises:
            ConfigurationError: If configuration is invalid
        """
        valid_levels = ['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL']
        if self.logging.level.upper() not in valid_levels:
            raise ConfigurationError(
                f"Invalid logging level: {self.logging.level}. "
                f"Must be one of: {', '.join(valid_levels)}"
            )

        if self.harness.workers < 1:
            raise ConfigurationError("Worker count must be at least 1")

        if self.harness.pilot_multiplier < 1:
            raise ConfigurationError("Pilot multiplier must be at least 1")

        if not 0.0 <= self.harness.failure_budget < 1.0:
            raise ConfigurationError("Failure budget must lie in [0, 1)")

        if not 0.0 < self.harness.jb_p_value_floor < 1.0:
            raise ConfigurationError("Jarque-Bera p-value floor must lie in (0, 1)")

        if self.harness.truncation_lag < 1:
            raise ConfigurationError("Truncation lag must be at least 1")

        if self.simulation.ar_burn_in_factor < 0 or self.simulation.tarch_burn_in < 0:
            raise ConfigurationError("Burn-in lengths must be nonnegative")

        return True


def _coerce_env_value(raw: str, current: Any, name: str) -> Any:
    """Convert an environment string to the type of the field's current value."""
    try:
        if isinstance(current, bool):
            return raw.strip().lower() in ('1', 'true', 'yes', 'on')
        if isinstance(current, int):
            return int(raw)
        if isinstance(current, float):
            return float(raw)
    except ValueError as e:
        raise ConfigurationError(f"Invalid value for {name}: {raw!r}") from e
    return raw


def setup_logging(config: Optional[LoggingConfig] = None) -> logging.Logger:
    """
    Configure the 'tailchain' logger from a LoggingConfig.

    Console output goes to stderr so stdout stays free for data. File
    output uses a size-rotated log under the configured directory.

    Args:
        config: Logging settings (default: from the global configuration)

    Returns:
        The configured package logger
    """
    if config is None:
        config = get_config().logging

    root = logging.getLogger('tailchain')
    root.setLevel(config.level.upper())
    for handler in list(root.handlers):
        root.removeHandler(handler)

    formatter = logging.Formatter('%(asctime)s %(levelname)s %(name)s: %(message)s')

    if config.console_output:
        console = logging.StreamHandler(sys.stderr)
        console.setFormatter(formatter)
        root.addHandler(console)

    if config.file_output:
        log_dir = config.get_log_dir()
        log_dir.mkdir(parents=True, exist_ok=True)
        file_handler = logging.handlers.RotatingFileHandler(
            log_dir / 'tailchain.log',
            maxBytes=config.max_file_size_mb * 1024 * 1024,
            backupCount=config.backup_count,
        )
        file_handler.setFormatter(formatter)
        root.addHandler(file_handler)

    return root


# Global configuration instance
_config: Optional[ToolkitConfig] = None


def get_config() -> ToolkitConfig:
    """
    Get global configuration instance.

    Returns:
        ToolkitConfig singleton instance

    Example:
        >>> from tailchain.config import get_config
        >>> config = get_config()
        >>> print(config.harness.pilot_multiplier)
    """
    global _config
    if _config is None:
        if os.getenv('TAILCHAIN_USE_ENV_CONFIG'):
            _config = ToolkitConfig.load_from_env()
        else:
            _config = ToolkitConfig.load_from_file()
    return _config


def set_config(config: Optional[ToolkitConfig]):
    """
    Set global configuration instance.

    Args:
        config: ToolkitConfig instance to use globally (None resets to lazy loading)
    """
    global _config
    _config = config
