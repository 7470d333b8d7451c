"""
Configuration constants and runtime settings.

Guards and numeric knobs live here as module constants; library functions take
them as keyword defaults. The CLI bundles them in a Settings model that can be
loaded from a key=value file.
"""

import os
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from fractions import Fraction
from pathlib import Path
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .errors import ConfigError

# Tool identity
TOOL_VERSION = "1.0.0"
REPORT_SCHEMA = "loja-report/1"
CONFIG_ENV_VAR = "LOJA_CONFIG"

# Size guards
MAX_VARIABLES = 6  # Facet enumeration is O(m^n)
MAX_SUPPORT = 64  # Support points per polynomial

# Curve probing
TRUNCATION_FACTOR = 4  # Default T = factor * max facet offset
FLOAT_TOLERANCE = 1e-9  # Relative zero test for numeric coefficient groups
NUMERIC_PRECISION_BITS = 96  # mpmath working precision

# Monomial curve sweep
SWEEP_BUDGET = 12
SWEEP_SAMPLES = 4
SWEEP_FULL_GRID_LIMIT = 4096  # Enumerate the whole grid below this size
SWEEP_GRID_CAP = 4  # Grid side used when the full grid is too large
SWEEP_SEED = 20240611
CRITICAL_SYSTEM_MAX_DEGREE = 24  # Skip critical systems above this degree product

# Tameness refutation grid
REFUTATION_GRID: Tuple[Fraction, ...] = (
    Fraction(1),
    Fraction(-1),
    Fraction(2),
    Fraction(-2),
    Fraction(1, 2),
    Fraction(-1, 2),
)

# Milnor number stabilization
MILNOR_MAX_VARIABLES = 3
MILNOR_BUDGET = (25, 32, 64)  # Axis powers N tried in order
MILNOR_STEP = 7  # Compare N with N + step

# Simplex picture
SVG_WIDTH = 1000
SVG_HEIGHT = 866
SVG_MARGIN = 50


class Settings(BaseModel):
    """Guards and numeric knobs the CLI passes down to the library."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    max_variables: int = Field(default=MAX_VARIABLES, ge=1)
    max_support: int = Field(default=MAX_SUPPORT, ge=1)
    truncation: Optional[int] = Field(default=None, ge=1)
    truncation_factor: int = Field(default=TRUNCATION_FACTOR, ge=1)
    tolerance: float = Field(default=FLOAT_TOLERANCE, gt=0)
    precision_bits: int = Field(default=NUMERIC_PRECISION_BITS, ge=64)
    sweep_budget: int = Field(default=SWEEP_BUDGET, ge=1)
    sweep_samples: int = Field(default=SWEEP_SAMPLES, ge=1)
    sweep_seed: int = SWEEP_SEED


def load_settings(path: Optional[Path] = None, **overrides) -> Settings:
    """
    Load settings from a key=value file.

    The file is read from `path`, else from the file named by $LOJA_CONFIG,
    else defaults are used. Keyword overrides whose value is not None win over
    the file.

    Args:
        path: Explicit config file
        **overrides: Per-flag overrides from the command line

    Returns:
        Validated Settings
    """
    values = {}
    if path is None and os.environ.get(CONFIG_ENV_VAR):
        path = Path(os.environ[CONFIG_ENV_VAR])

    if path is not None:
        try:
            values = tomllib.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"malformed config file {path}: {exc}") from exc

    values.update({key: value for key, value in overrides.items() if value is not None})
    try:
        return Settings(**values)
    except ValidationError as exc:
        raise ConfigError(f"invalid configuration: {exc.errors()[0]['msg']}") from exc
