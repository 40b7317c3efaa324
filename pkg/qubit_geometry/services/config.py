"""
Configuration Service for run defaults

Built-in defaults, optionally overridden by a JSON settings file passed with
--config. No environment variables are consulted.
"""

import json
from pathlib import Path
from dataclasses import dataclass, fields
from typing import List, Optional, Tuple

# Output formats
FORMATS = ['csv', 'json', 'xlsx']

# Significant digits a float can carry through repr
DIGITS_RANGE = (1, 17)

# Commands
COMMANDS = ['eval', 'sweep', 'verify', 'compare-random']


@dataclass
class AppConfig:
    """Application defaults"""
    format: str = 'json'  # Output format
    tolerance: float = 1e-9  # Pass threshold for compare-random
    samples: int = 10000  # Random ensembles drawn by compare-random
    seed: int = 42  # Master seed
    theta_steps: int = 50  # Sweep grid, theta axis (endpoints included)
    phi_steps: int = 50  # Sweep grid, phi axis
    workers: int = 1  # Thread pool size for sweep and compare-random
    log_dir: str = 'outputs/logs'  # Activity log folder
    digits: int = 12  # Significant digits of serialized numbers

    @classmethod
    def from_dict(cls, data: dict) -> 'AppConfig':
        defaults = cls()
        return cls(
            format=data.get('format', defaults.format),
            tolerance=data.get('tolerance', defaults.tolerance),
            samples=data.get('samples', defaults.samples),
            seed=data.get('seed', defaults.seed),
            theta_steps=data.get('theta_steps', defaults.theta_steps),
            phi_steps=data.get('phi_steps', defaults.phi_steps),
            workers=data.get('workers', defaults.workers),
            log_dir=data.get('log_dir', defaults.log_dir),
            digits=data.get('digits', defaults.digits),
        )


def _check_types(data: dict) -> List[str]:
    """Unknown keys and wrongly typed values in a settings document"""
    errors = []
    expected = {f.name: f.type for f in fields(AppConfig)}
    for key, value in data.items():
        if key not in expected:
            errors.append(f"Unknown setting '{key}'")
            continue
        kind = expected[key]
        if kind in (int, 'int'):
            ok = isinstance(value, int) and not isinstance(value, bool)
        elif kind in (float, 'float'):
            ok = isinstance(value, (int, float)) and not isinstance(value, bool)
        else:
            ok = isinstance(value, str)
        if not ok:
            errors.append(f"Setting '{key}' has the wrong type: {value!r}")
    if 'format' in data and data['format'] not in FORMATS:
        errors.append(f"Setting 'format' must be one of {', '.join(FORMATS)}")
    digits = data.get('digits')
    if isinstance(digits, int) and not isinstance(digits, bool):
        low, high = DIGITS_RANGE
        if not low <= digits <= high:
            errors.append(f"Setting 'digits' must be between {low} and {high}")
    return errors


@dataclass
class RunConfig:
    """Everything one command invocation needs"""
    command: str
    format: str = 'json'
    tolerance: float = 1e-9
    samples: int = 10000
    seed: int = 42
    grid: Tuple[int, int] = (50, 50)
    sector: str = 's0'
    degrees: bool = False
    output: Optional[str] = None
    workers: int = 1

    @property
    def theta_steps(self) -> int:
        return self.grid[0]

    @property
    def phi_steps(self) -> int:
        return self.grid[1]

    def validate(self) -> List[str]:
        """Returns the list of violated constraints (empty when valid)"""
        errors = []
        if self.command not in COMMANDS:
            errors.append(f"Unknown command '{self.command}'")
        if self.format not in FORMATS:
            errors.append(f"Format must be one of {', '.join(FORMATS)}")
        if self.format == 'xlsx' and not self.output:
            errors.append("xlsx output needs --output")
        if not (self.tolerance > 0):
            errors.append("Tolerance must be positive")
        if self.samples < 1:
            errors.append("Samples must be at least 1")
        if self.seed < 0:
            errors.append("Seed must be non-negative")
        if self.grid[0] < 2 or self.grid[1] < 2:
            errors.append("Grid steps must be at least 2")
        if self.sector not in ('s0', 's1'):
            errors.append("Sector must be s0 or s1")
        if self.workers < 1:
            errors.append("Workers must be at least 1")
        return errors


class ConfigService:
    """Holds the application defaults"""

    _instance = None
    _config: AppConfig = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._config = AppConfig()
        return cls._instance

    @property
    def config(self) -> AppConfig:
        return self._config

    def load(self, file_path: str) -> List[str]:
        """
        Replace the defaults with a JSON settings file.

        Returns:
            List of error messages; the current config is left untouched when non-empty
        """
        path = Path(file_path)
        if not path.exists():
            return [f"Config file not found: {file_path}"]
        try:
            with open(path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            return [f"Invalid JSON in {file_path}: {e.msg} (line {e.lineno})"]
        except (OSError, UnicodeDecodeError) as e:
            return [f"Could not read {file_path}: {e}"]

        if not isinstance(data, dict):
            return [f"Config file {file_path} must hold a JSON object"]
        errors = _check_types(data)
        if errors:
            return errors

        self._config = AppConfig.from_dict(data)
        return []

    def reset(self):
        """Back to built-in defaults"""
        self._config = AppConfig()


def get_config() -> ConfigService:
    """Get the singleton config service instance"""
    return ConfigService()
