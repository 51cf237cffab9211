# Copyright (c) 2025 Contributors to the ergolab project
# SPDX-License-Identifier: MIT

"""
Configuration Management

Handles loading and saving the laboratory configuration. Command-line flags
override values read here.
"""

import logging
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, Optional

try:
    import yaml
except ImportError:
    yaml = None

from ergolab.core import constants as const
from ergolab.core.errors import ConfigurationError

logger = logging.getLogger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
OUTPUT_FORMATS = ("csv", "json")


@dataclass
class RuntimeConfig:
    """Worker pool and seeding."""

    threads: Optional[int] = None  # None = CPU count; ERGOLAB_THREADS wins
    seed: int = const.DEFAULT_SEED


@dataclass
class NumericsConfig:
    """Numerical defaults shared by the subcommands."""

    oversample: int = const.DEFAULT_OVERSAMPLE  # sup-norm grid factor (>= 4)
    rho: float = const.DEFAULT_RHO  # lacunary time base (> 1)
    x_samples: int = const.DEFAULT_X_SAMPLES  # base points per decay profile


@dataclass
class FixtureConfig:
    """Frozen empirical constants."""

    directory: Optional[str] = None  # None = fixtures shipped with the package
    growth_tolerance: float = const.FIXTURE_GROWTH_TOLERANCE
    bootstrap: bool = True  # calibrate and freeze a missing fixture


@dataclass
class OutputConfig:
    """Report output."""

    format: str = "csv"  # "csv" or "json"
    directory: str = "."
    lock_enabled: bool = True
    lock_timeout: float = const.DEFAULT_LOCK_TIMEOUT
    lock_dir: Optional[str] = None  # None = next to each report


@dataclass
class LabConfig:
    """Main laboratory configuration."""

    runtime: RuntimeConfig = field(default_factory=RuntimeConfig)
    numerics: NumericsConfig = field(default_factory=NumericsConfig)
    fixtures: FixtureConfig = field(default_factory=FixtureConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    # Per-subcommand defaults, e.g. {"bilinear": {"nmax": 65536}}
    commands: Dict[str, Dict[str, Any]] = field(default_factory=dict)

    # Global settings
    log_level: str = "INFO"
    log_file: Optional[str] = None  # Log to file (None = console only)

    def command_defaults(self, name: str) -> Dict[str, Any]:
        return dict(self.commands.get(name, {}))

    def validate(self) -> None:
        """
        Check value ranges.

        Raises:
            ConfigurationError: Naming the first offending field
        """
        if self.runtime.threads is not None and self.runtime.threads < 1:
            raise ConfigurationError(f"runtime.threads must be >= 1, got {self.runtime.threads}")
        if self.numerics.oversample < const.MIN_OVERSAMPLE:
            raise ConfigurationError(
                f"numerics.oversample must be >= {const.MIN_OVERSAMPLE}, got {self.numerics.oversample}"
            )
        if self.numerics.rho <= 1.0:
            raise ConfigurationError(f"numerics.rho must be > 1, got {self.numerics.rho}")
        if self.numerics.x_samples < 1:
            raise ConfigurationError(f"numerics.x_samples must be >= 1, got {self.numerics.x_samples}")
        if self.fixtures.growth_tolerance < 0:
            raise ConfigurationError(
                f"fixtures.growth_tolerance must be >= 0, got {self.fixtures.growth_tolerance}"
            )
        if self.output.format not in OUTPUT_FORMATS:
            raise ConfigurationError(f"output.format must be one of {OUTPUT_FORMATS}, got {self.output.format!r}")
        if self.output.lock_timeout <= 0:
            raise ConfigurationError(f"output.lock_timeout must be > 0, got {self.output.lock_timeout}")
        if self.log_level.upper() not in LOG_LEVELS:
            raise ConfigurationError(f"log_level must be one of {LOG_LEVELS}, got {self.log_level!r}")


def _section(cls: type, name: str, data: Any) -> Any:
    """Build one dataclass section, rejecting unknown keys."""
    if data is None:
        return cls()
    if not isinstance(data, dict):
        raise ConfigurationError(f"Section '{name}' must be a mapping, got {type(data).__name__}")
    known = {f.name for f in fields(cls)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigurationError(f"Unknown field '{name}.{unknown[0]}'")
    return cls(**data)


class ConfigManager:
    """
    Configuration file manager.

    Handles loading, saving, and validation of configuration files.
    Supports YAML format and provides sensible defaults.
    """

    DEFAULT_CONFIG_LOCATIONS = [
        Path.home() / ".config" / "ergolab" / "ergolab.yaml",
        Path("/etc/ergolab/ergolab.yaml"),
    ]

    def __init__(self, config_path: Optional[Path] = None) -> None:
        """
        Initialize configuration manager.

        Args:
            config_path: Optional path to configuration file.
                        If not provided, searches default locations.
        """
        if yaml is None:
            logger.warning("PyYAML not installed, configuration loading disabled")

        self.config_path = Path(config_path) if config_path is not None else None
        if self.config_path is None:
            self.config_path = self._find_config()

        self.config = LabConfig()

    def _find_config(self) -> Optional[Path]:
        """Find configuration file in default locations."""
        for path in self.DEFAULT_CONFIG_LOCATIONS:
            if path.exists():
                logger.info(f"Found configuration: {path}")
                return path
        return None

    def load(self) -> LabConfig:
        """
        Load configuration from file.

        Unreadable files are logged and the defaults returned; invalid
        fields are usage errors.

        Returns:
            LabConfig with loaded values or defaults

        Raises:
            ConfigurationError: If a field is unknown or out of range
        """
        if self.config_path is None or not self.config_path.exists():
            logger.info("No configuration file found, using defaults")
            return self.config

        if yaml is None:
            logger.warning("PyYAML not installed, cannot load configuration")
            return self.config

        try:
            with open(self.config_path) as f:
                data = yaml.safe_load(f)
        except (OSError, yaml.YAMLError) as e:
            logger.error(f"Failed to load configuration: {e}")
            return self.config

        if data is None:
            return self.config
        if not isinstance(data, dict):
            raise ConfigurationError(f"Configuration root must be a mapping in {self.config_path}")

        unknown = sorted(set(data) - {"runtime", "numerics", "fixtures", "output", "commands", "log_level", "log_file"})
        if unknown:
            raise ConfigurationError(f"Unknown field '{unknown[0]}' in {self.config_path}")

        commands = data.get("commands") or {}
        if not isinstance(commands, dict) or not all(isinstance(v, dict) for v in commands.values()):
            raise ConfigurationError("Section 'commands' must map subcommand names to mappings")

        config = LabConfig(
            runtime=_section(RuntimeConfig, "runtime", data.get("runtime")),
            numerics=_section(NumericsConfig, "numerics", data.get("numerics")),
            fixtures=_section(FixtureConfig, "fixtures", data.get("fixtures")),
            output=_section(OutputConfig, "output", data.get("output")),
            commands={str(k): dict(v) for k, v in commands.items()},
            log_level=str(data.get("log_level", "INFO")),
            log_file=data.get("log_file"),
        )
        config.validate()
        self.config = config

        logger.info(f"Configuration loaded from {self.config_path}")
        return self.config

    def save(self, config: LabConfig) -> bool:
        """
        Save configuration to file.

        Args:
            config: Configuration to save

        Returns:
            True if saved successfully, False otherwise
        """
        if yaml is None:
            logger.warning("PyYAML not installed, cannot save configuration")
            return False

        if self.config_path is None:
            self.config_path = self.DEFAULT_CONFIG_LOCATIONS[0]

        # Ensure directory exists
        self.config_path.parent.mkdir(parents=True, exist_ok=True)

        try:
            data = asdict(config)
            if not config.log_file:
                data.pop("log_file")

            with open(self.config_path, "w") as f:
                yaml.safe_dump(data, f, default_flow_style=False, sort_keys=False)

            logger.info(f"Configuration saved to {self.config_path}")
            return True

        except Exception as e:
            logger.error(f"Failed to save configuration: {e}")
            return False

    def create_default(self, path: Optional[Path] = None) -> bool:
        """
        Create default configuration file.

        Args:
            path: Optional path for config file (default: user config location)

        Returns:
            True if created successfully, False otherwise
        """
        if path:
            self.config_path = Path(path)
        elif self.config_path is None:
            self.config_path = self.DEFAULT_CONFIG_LOCATIONS[0]

        default_config = LabConfig(
            commands={
                "bilinear": {"nmax": 65536, "weight": "mobius", "system": "rotation"},
                "lemma": {"trials": 200},
            }
        )
        return self.save(default_config)
