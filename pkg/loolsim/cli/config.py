"""Run configuration for the command-line front end.

Parameters are layered from lowest to highest precedence: built-in
defaults, ``config/default_config.json``, an optional ``--config`` file
(JSON or YAML) and finally command-line flags. ``LOOLSIM_SEED`` fills in
the seed when none of those sets one.
"""

import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, Mapping, Optional

import yaml

from loolsim.fock.modes import BasisTag
from loolsim.measurement.kets import Subspace
from loolsim.utils.constants import (
    COINCIDENCE_WINDOW_S,
    DEFAULT_OAM,
    DEFAULT_RADIAL,
    DEFAULT_REFLECTIVITY,
    DEFAULT_SIGMA,
    DEFAULT_SINC_WIDTH,
    SEED_ENV_VAR,
)
from loolsim.utils.errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / "config" / "default_config.json"
RESULTS_DIR = Path("results")

COMMANDS = ("hom-scan", "eraser", "witness", "tomo", "schmidt", "lift")
FORMATS = ("json", "csv")
PROFILES = ("gauss", "sinc")
STATES = ("ideal", "mixed", "white", "crosstalk")
BASES = ("azimuthal", "radial")

BUILTIN_DEFAULTS: Dict[str, Any] = {
    "basis": "azimuthal",
    "l": DEFAULT_OAM,
    "p": DEFAULT_RADIAL,
    "theta": 0.7853981633974483,
    "r": DEFAULT_REFLECTIVITY,
    "profile": "gauss",
    "sigma": DEFAULT_SIGMA,
    "width": DEFAULT_SINC_WIDTH,
    "tau_min": -5.0,
    "tau_max": 5.0,
    "points": 101,
    "counts": 100000,
    "seed": None,
    "eta": 1.0,
    "state": "ideal",
    "bootstrap": 1000,
    "background": 0.0,
    "weighted": False,
    "sigma_plus": 1.0,
    "sigma_minus": 3.0,
    "grid_points": 64,
    "half_width": 10.0,
    "rank": None,
    "out": None,
    "format": "json",
}

_SCAN_KEYS = ("profile", "sigma", "width", "tau_min", "tau_max", "points", "eta")
_COUNT_KEYS = ("state", "counts", "seed", "eta", "r", "bootstrap", "background")
_SUBSPACE_KEYS = ("basis", "l", "p")
_OUTPUT_KEYS = ("out", "format")

COMMAND_PARAMETERS: Dict[str, tuple] = {
    "hom-scan": _SCAN_KEYS + _OUTPUT_KEYS,
    "eraser": _SCAN_KEYS + _SUBSPACE_KEYS + _OUTPUT_KEYS,
    "witness": _COUNT_KEYS + _SUBSPACE_KEYS + _OUTPUT_KEYS,
    "tomo": _COUNT_KEYS + ("weighted",) + _SUBSPACE_KEYS + _OUTPUT_KEYS,
    "schmidt": ("sigma_plus", "sigma_minus", "grid_points", "half_width", "rank") + _OUTPUT_KEYS,
    "lift": ("theta", "r") + _SUBSPACE_KEYS + _OUTPUT_KEYS,
}


def _as_bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    if isinstance(value, str) and value.lower() in ("true", "false", "yes", "no", "1", "0"):
        return value.lower() in ("true", "yes", "1")
    raise ValueError(f"not a boolean: {value!r}")


def _as_int(value: Any) -> int:
    if isinstance(value, bool):
        raise ValueError(f"not an integer: {value!r}")
    if isinstance(value, int):
        return value
    number = float(value)
    if not number.is_integer():
        raise ValueError(f"not an integer: {value!r}")
    return int(number)


def _optional(convert: Callable[[Any], Any]) -> Callable[[Any], Any]:
    return lambda value: None if value is None else convert(value)


def _choice(options: tuple) -> Callable[[Any], str]:
    def convert(value: Any) -> str:
        if str(value) not in options:
            raise ValueError(f"expected one of {', '.join(options)}")
        return str(value)

    return convert


PARAMETER_TYPES: Dict[str, Callable[[Any], Any]] = {
    "basis": _choice(BASES),
    "l": _as_int,
    "p": _as_int,
    "theta": float,
    "r": float,
    "profile": _choice(PROFILES),
    "sigma": float,
    "width": float,
    "tau_min": float,
    "tau_max": float,
    "points": _as_int,
    "counts": _as_int,
    "seed": _optional(_as_int),
    "eta": float,
    "state": _choice(STATES),
    "bootstrap": _as_int,
    "background": float,
    "weighted": _as_bool,
    "sigma_plus": float,
    "sigma_minus": float,
    "grid_points": _as_int,
    "half_width": float,
    "rank": _optional(_as_int),
    "out": _optional(str),
    "format": _choice(FORMATS),
}

# (key, predicate, requirement) checked after type coercion
RANGE_CHECKS = (
    ("r", lambda v: 0.0 <= v <= 1.0, "0 <= r <= 1"),
    ("eta", lambda v: 0.0 <= v <= 1.0, "0 <= eta <= 1"),
    ("sigma", lambda v: v > 0.0, "sigma > 0"),
    ("width", lambda v: v > 0.0, "width > 0"),
    ("counts", lambda v: v > 0, "counts > 0"),
    ("points", lambda v: v >= 3, "points >= 3"),
    ("p", lambda v: v >= 0, "p >= 0"),
    ("bootstrap", lambda v: v >= 0, "bootstrap >= 0"),
    ("background", lambda v: v >= 0.0, "background >= 0"),
    ("sigma_plus", lambda v: v > 0.0, "sigma_plus > 0"),
    ("sigma_minus", lambda v: v > 0.0, "sigma_minus > 0"),
    ("grid_points", lambda v: v >= 3, "grid_points >= 3"),
    ("half_width", lambda v: v > 0.0, "half_width > 0"),
    ("rank", lambda v: v is None or v >= 1, "rank >= 1"),
    ("seed", lambda v: v is None or v >= 0, "seed >= 0"),
)


def load_mapping(path: Path) -> Dict[str, Any]:
    """Read a JSON or YAML mapping from disk.

    Raises:
        ConfigError: If the file is missing, unparsable or not a mapping
    """
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"Configuration file not found: {path}")
    try:
        with open(path, "r") as f:
            if path.suffix.lower() == ".json":
                data = json.load(f)
            else:
                data = yaml.safe_load(f)
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise ConfigError(f"Cannot parse configuration file {path}: {e}") from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(
            f"Configuration file {path} must hold a mapping, got {type(data).__name__}"
        )
    return data


def load_defaults(path: Path = DEFAULT_CONFIG_PATH) -> Dict[str, Dict[str, Any]]:
    """Default parameters and metadata, falling back to the built-in values.

    Returns:
        {"parameters": {...}, "metadata": {...}}
    """
    defaults: Dict[str, Dict[str, Any]] = {
        "parameters": dict(BUILTIN_DEFAULTS),
        "metadata": {"coincidence_window_s": COINCIDENCE_WINDOW_S},
    }
    if not Path(path).exists():
        logger.info(f"No default configuration at {path}, using built-in defaults")
        return defaults

    data = load_mapping(path)
    unknown = sorted(set(data) - {"parameters", "metadata"})
    if unknown:
        raise ConfigError(f"Unknown sections in {path}: {', '.join(unknown)}")
    defaults["parameters"].update(data.get("parameters", {}))
    defaults["metadata"].update(data.get("metadata", {}))
    logger.debug(f"Default configuration loaded from {path}")
    return defaults


def _coerce(key: str, value: Any) -> Any:
    try:
        return PARAMETER_TYPES[key](value)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"Invalid value for '{key}': {value!r} ({e})") from e


@dataclass(frozen=True)
class RunConfig:
    """A validated command with the parameters it uses."""

    command: str
    parameters: Dict[str, Any]
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"Unknown command '{self.command}'")
        allowed = COMMAND_PARAMETERS[self.command]
        unknown = sorted(set(self.parameters) - set(allowed))
        if unknown:
            raise ConfigError(f"Unknown parameters for '{self.command}': {', '.join(unknown)}")
        missing = sorted(set(allowed) - set(self.parameters))
        if missing:
            raise ConfigError(f"Missing parameters for '{self.command}': {', '.join(missing)}")

        coerced = {key: _coerce(key, value) for key, value in self.parameters.items()}
        for key, check, requirement in RANGE_CHECKS:
            if key in coerced and coerced[key] is not None and not check(coerced[key]):
                raise ConfigError(
                    f"Parameter out of range: {key}={coerced[key]!r}, need {requirement}"
                )
        if "tau_min" in coerced and not coerced["tau_min"] < coerced["tau_max"]:
            raise ConfigError(
                f"Empty delay range: tau_min={coerced['tau_min']} >= tau_max={coerced['tau_max']}"
            )
        object.__setattr__(self, "parameters", coerced)

    @classmethod
    def from_sources(
        cls,
        command: str,
        config_file: Optional[Path] = None,
        overrides: Optional[Mapping[str, Any]] = None,
        defaults_path: Path = DEFAULT_CONFIG_PATH,
        environ: Optional[Mapping[str, str]] = None,
    ) -> "RunConfig":
        """Layer defaults, the config file and flag overrides for one command.

        Args:
            command: Subcommand name
            config_file: Optional JSON or YAML parameter file
            overrides: Values given on the command line (None entries ignored)
            defaults_path: Location of the JSON defaults
            environ: Environment used for the seed fallback (os.environ by default)

        Raises:
            ConfigError: On unknown keys, bad types or out-of-range values
        """
        if command not in COMMANDS:
            raise ConfigError(f"Unknown command '{command}'")
        defaults = load_defaults(defaults_path)
        merged = dict(defaults["parameters"])

        if config_file is not None:
            supplied = load_mapping(Path(config_file))
            unknown = sorted(set(supplied) - set(PARAMETER_TYPES))
            if unknown:
                raise ConfigError(f"Unknown keys in {config_file}: {', '.join(unknown)}")
            merged.update(supplied)
            logger.debug(f"Applied {len(supplied)} parameters from {config_file}")

        for key, value in (overrides or {}).items():
            if value is None:
                continue
            if key not in PARAMETER_TYPES:
                raise ConfigError(f"Unknown parameter '{key}'")
            merged[key] = value

        environ = os.environ if environ is None else environ
        if merged.get("seed") is None and environ.get(SEED_ENV_VAR):
            merged["seed"] = environ[SEED_ENV_VAR]
            logger.debug(f"Seed taken from {SEED_ENV_VAR}")

        allowed = COMMAND_PARAMETERS[command]
        parameters = {key: merged.get(key) for key in allowed}
        return cls(command, parameters, dict(defaults["metadata"]))

    def get(self, key: str) -> Any:
        return self.parameters[key]

    @property
    def seed(self) -> int:
        """Seed for the run; 0 when nothing set one."""
        seed = self.parameters.get("seed")
        return 0 if seed is None else seed

    @property
    def subspace(self) -> Subspace:
        if self.parameters.get("basis") == "radial":
            return Subspace(BasisTag.RADIAL, self.parameters["p"])
        return Subspace(BasisTag.AZIMUTHAL, self.parameters.get("l", DEFAULT_OAM))

    @property
    def output_format(self) -> str:
        return self.parameters["format"]

    @property
    def output_path(self) -> Path:
        """``--out`` when given, else ``results/<command>.<format>``."""
        out = self.parameters.get("out")
        if out:
            return Path(out)
        return RESULTS_DIR / f"{self.command}.{self.output_format}"

    def describe(self) -> Dict[str, Any]:
        """Parameters without the output plumbing, for logs and metadata."""
        return {k: v for k, v in self.parameters.items() if k not in ("out", "format")}
