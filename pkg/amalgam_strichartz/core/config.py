import logging
import os
from dataclasses import asdict, dataclass
from typing import Any, Dict, Mapping, Optional, Tuple

import fastjsonschema
from dotenv import dotenv_values

from amalgam_strichartz.core.errors import ConfigError
from amalgam_strichartz.core.oracle import Exponent
from amalgam_strichartz.core.spectral import Grid
from amalgam_strichartz.defaults import CONFIG_ENV_KEYS, ENV_OVERRIDES, RUN_CONFIG_VALIDATIONS, RUN_DEFAULTS

LOG = logging.getLogger(__name__)

_VALIDATE = fastjsonschema.compile(RUN_CONFIG_VALIDATIONS['validation'], formats=RUN_CONFIG_VALIDATIONS['formats'])

# Not echoed into report.json: they change where and how fast, never what.
_NON_REPRODUCIBLE = ("jobs", "output_dir")

_TRUE = ("1", "true", "yes", "on")
_FALSE = ("0", "false", "no", "off")


def parse_exponents(value: str) -> Tuple[Exponent, ...]:
    """'1,2,4,inf' -> (1.0, 2.0, 4.0, inf)."""
    return tuple(float(v) for v in value.split(","))


def _coerce(key: str, value: Any) -> Any:
    """Converts strings read from files or the environment to the schema type of key."""
    if not isinstance(value, str):
        return value
    types = RUN_CONFIG_VALIDATIONS['validation']['properties'][key]['type']
    types = types if isinstance(types, list) else [types]
    text = value.strip()
    if "null" in types and text.lower() in ("", "none", "null"):
        return None
    try:
        if "integer" in types:
            return int(text)
        if "number" in types:
            return float(text)
    except ValueError:
        raise ConfigError(f"Invalid value for {key}: {value!r}")
    if "boolean" in types:
        if text.lower() in _TRUE:
            return True
        if text.lower() in _FALSE:
            return False
        raise ConfigError(f"Invalid value for {key}: {value!r}")
    return text


def _from_keys(values: Mapping[str, Optional[str]], allowed, source: str) -> Dict[str, Any]:
    config = {}
    for env_key, value in values.items():
        if env_key not in CONFIG_ENV_KEYS:
            if source == 'file':
                raise ConfigError(f"Unknown configuration key {env_key} in config file")
            continue
        if env_key not in allowed or value is None:
            continue
        key = CONFIG_ENV_KEYS[env_key]
        config[key] = _coerce(key, value)
    return config


@dataclass(frozen=True)
class RunConfig:
    """Validated configuration of one run.

    Build it with from_sources(); precedence is defaults < config file <
    environment < command line flags.
    """
    experiment: str = RUN_DEFAULTS["experiment"]
    dim: int = RUN_DEFAULTS["dim"]
    grid_n: Optional[int] = RUN_DEFAULTS["grid_n"]
    grid_l: Optional[float] = RUN_DEFAULTS["grid_l"]
    seed: int = RUN_DEFAULTS["seed"]
    jobs: int = RUN_DEFAULTS["jobs"]
    tol_slope: float = RUN_DEFAULTS["tol_slope"]
    tol_norm: float = RUN_DEFAULTS["tol_norm"]
    output_dir: str = RUN_DEFAULTS["output_dir"]
    dump_fields: bool = RUN_DEFAULTS["dump_fields"]
    lambda_min: float = RUN_DEFAULTS["lambda_min"]
    lambda_max: float = RUN_DEFAULTS["lambda_max"]
    t_min: float = RUN_DEFAULTS["t_min"]
    t_max: float = RUN_DEFAULTS["t_max"]
    exponents: str = RUN_DEFAULTS["exponents"]

    @classmethod
    def from_sources(cls, config_file: Optional[str] = None, env: Optional[Mapping[str, str]] = None,
                     flags: Optional[Mapping[str, Any]] = None) -> 'RunConfig':
        """Merges and validates all configuration sources.

        Args:
            config_file (str): A dotenv style file with AMALGAM_* keys
            env (Mapping): The process environment, os.environ if None
            flags (Mapping): Command line values; None entries are ignored

        Raises:
            ConfigError: if a value is malformed or the merged configuration is invalid
        """
        config = dict(RUN_DEFAULTS)
        if config_file:
            if not os.path.isfile(config_file):
                raise ConfigError(f"Config file {config_file} not found")
            config.update(_from_keys(dotenv_values(config_file), CONFIG_ENV_KEYS, 'file'))
        config.update(_from_keys(os.environ if env is None else env, ENV_OVERRIDES, 'env'))
        config.update({k: v for k, v in (flags or {}).items() if v is not None})
        return cls.validated(config)

    @classmethod
    def validated(cls, config: Dict[str, Any]) -> 'RunConfig':
        try:
            _VALIDATE(config)
        except fastjsonschema.JsonSchemaException as e:
            raise ConfigError(f"Invalid configuration: {e.message}")
        grid_n = config.get("grid_n")
        if grid_n is not None and grid_n & (grid_n - 1):
            raise ConfigError(f"grid_n must be a power of two, got {grid_n}")
        if config["lambda_min"] >= config["lambda_max"]:
            raise ConfigError("lambda_min must be smaller than lambda_max")
        if config["t_min"] >= config["t_max"]:
            raise ConfigError("t_min must be smaller than t_max")
        LOG.debug("configuration: %s", config)
        return cls(**config)

    @property
    def exponent_values(self) -> Tuple[Exponent, ...]:
        return parse_exponents(self.exponents)

    @property
    def grid(self) -> Grid:
        """The base grid: per-dimension defaults with the overrides applied."""
        base = Grid.default(self.dim)
        return Grid(self.dim, self.grid_l or base.extent, self.grid_n or base.points)

    def to_dict(self, reproducible: bool = False) -> Dict[str, Any]:
        config = asdict(self)
        if reproducible:
            for key in _NON_REPRODUCIBLE:
                config.pop(key)
        return config
