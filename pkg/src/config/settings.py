"""
Run configuration.

Settings resolve in three layers: RunConfig defaults, then a ``key = value``
config file, then command-line flags. The config file path comes from the
caller or from the REALITY_DOMAIN_CONFIG environment variable, which may
itself be set in a ``.env`` file.
"""

import logging
import os
import threading
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Tuple, Union

from dotenv import dotenv_values, load_dotenv

from utils.formatting import format_number, parse_window

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "REALITY_DOMAIN_CONFIG"
VALID_FORMATS = ["csv", "json"]
VALID_LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


class ConfigError(ValueError):
    """Raised for malformed or out-of-range configuration values."""
    pass


@dataclass
class RunConfig:
    """Tolerances, grid sizes and output settings for one run."""
    abs_tol: float = 1e-10
    rel_tol: float = 1e-12
    boundary_band: float = 1e-9
    agreement_band: float = 1e-6
    resolution: int = 101
    rays: int = 64
    trace_tol: float = 1e-8
    figure_steps: int = 400
    window: Tuple[float, float, float, float] = (0.0, 4.0, 0.0, 4.0)
    output_format: str = "csv"
    out: str = ""  # empty = stdout
    workers: int = 0  # 0 = one per CPU
    seed: int = 12345
    samples: int = 20000
    log_level: str = "INFO"
    log_file: str = "reality_domain.log"

    def __post_init__(self):
        """Validate settings after initialization."""
        for name in ("abs_tol", "rel_tol", "boundary_band", "agreement_band", "trace_tol"):
            value = getattr(self, name)
            if not value > 0:
                raise ConfigError(f"Invalid {name}: {value}. Must be > 0")

        if self.resolution < 2:
            raise ConfigError(f"Invalid resolution: {self.resolution}. Must be >= 2")
        if self.rays < 8:
            raise ConfigError(f"Invalid rays: {self.rays}. Must be >= 8")
        if self.figure_steps < 2:
            raise ConfigError(f"Invalid figure_steps: {self.figure_steps}. Must be >= 2")
        if self.workers < 0:
            raise ConfigError(f"Invalid workers: {self.workers}. Must be >= 0")
        if self.samples < 1:
            raise ConfigError(f"Invalid samples: {self.samples}. Must be >= 1")

        if self.output_format not in VALID_FORMATS:
            raise ConfigError(f"Invalid output_format: {self.output_format}. Must be one of {VALID_FORMATS}")

        self.log_level = self.log_level.upper()
        if self.log_level not in VALID_LOG_LEVELS:
            raise ConfigError(f"Invalid log_level: {self.log_level}. Must be one of {VALID_LOG_LEVELS}")

        if len(self.window) != 4:
            raise ConfigError(f"Invalid window: {self.window}. Expected (lo_a, hi_a, lo_c, hi_c)")
        lo_a, hi_a, lo_c, hi_c = self.window
        if lo_a > hi_a or lo_c > hi_c:
            raise ConfigError(f"Invalid window: {self.window}. Each lo must not exceed its hi")

    @property
    def worker_count(self) -> int:
        return self.workers or (os.cpu_count() or 1)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["window"] = list(self.window)
        return data


def _parse_int(text: str) -> int:
    return int(text.strip())


def _parse_window(text: str) -> Tuple[float, float, float, float]:
    return parse_window(text.strip())


_PARSERS: Dict[str, Callable[[str], Any]] = {
    "abs_tol": float,
    "rel_tol": float,
    "boundary_band": float,
    "agreement_band": float,
    "resolution": _parse_int,
    "rays": _parse_int,
    "trace_tol": float,
    "figure_steps": _parse_int,
    "window": _parse_window,
    "output_format": str.strip,
    "out": str.strip,
    "workers": _parse_int,
    "seed": _parse_int,
    "samples": _parse_int,
    "log_level": str.strip,
    "log_file": str.strip,
}


def _format_setting(value: Any) -> str:
    if isinstance(value, (tuple, list)):
        return ",".join(format_number(v) for v in value)
    if isinstance(value, float):
        return format_number(value)
    return str(value)


class ConfigManager:
    """Loads RunConfig from a key = value file and applies overrides."""

    def __init__(self, config_file: Optional[Union[str, Path]] = None):
        """Initialize the manager.

        Args:
            config_file: Path to the config file. When None, the path in
                REALITY_DOMAIN_CONFIG is used, if set.
        """
        self._lock = threading.Lock()
        if config_file is None:
            load_dotenv()
            config_file = os.getenv(CONFIG_ENV_VAR) or None
        self.config_file = Path(config_file) if config_file else None

    def read_values(self) -> Dict[str, Any]:
        """Parsed values from the config file (empty if there is none)."""
        if self.config_file is None:
            return {}
        with self._lock:
            if not self.config_file.exists():
                logger.warning("Config file %s not found; using defaults", self.config_file)
                return {}
            raw = dotenv_values(self.config_file)

        values: Dict[str, Any] = {}
        for key, text in raw.items():
            name = key.strip().lower()
            if name not in _PARSERS:
                logger.warning("Ignoring unknown config key %r in %s", key, self.config_file)
                continue
            if text is None:
                raise ConfigError(f"Config key {key!r} in {self.config_file} has no value")
            try:
                values[name] = _PARSERS[name](text)
            except ValueError as e:
                raise ConfigError(f"Invalid value for {name} in {self.config_file}: {text!r} ({e})")
        logger.debug("Loaded %d settings from %s", len(values), self.config_file)
        return values

    def load(self, overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
        """RunConfig from defaults, the config file and non-None overrides."""
        values = self.read_values()
        for name, value in (overrides or {}).items():
            if value is None:
                continue
            if name not in _PARSERS:
                raise ConfigError(f"Unknown setting: {name}")
            values[name] = value
        try:
            return RunConfig(**values)
        except TypeError as e:
            raise ConfigError(f"Invalid configuration: {e}")

    def save(self, config: RunConfig, path: Optional[Union[str, Path]] = None) -> Path:
        """Write config in the same key = value format.

        Raises:
            ConfigError: If no path is known.
        """
        target = Path(path) if path is not None else self.config_file
        if target is None:
            raise ConfigError("No config file path to save to")
        lines = [f"{f.name} = {_format_setting(getattr(config, f.name))}" for f in fields(config)]
        with self._lock:
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text("\n".join(lines) + "\n", encoding="utf-8")
        logger.info("Saved configuration to %s", target)
        return target

