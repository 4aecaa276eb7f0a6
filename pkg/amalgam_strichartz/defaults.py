import math
import os

GRID_DEFAULTS = {
    1: {"extent": 64.0, "points": 2 ** 14},
    2: {"extent": 32.0, "points": 2 ** 10},
    3: {"extent": 16.0, "points": 2 ** 6},
}

RUN_DEFAULTS = {
    "experiment": "all",
    "dim": 1,
    "grid_n": None,
    "grid_l": None,
    "seed": 0,
    "jobs": os.cpu_count() or 1,
    "tol_slope": 0.05,
    "tol_norm": 0.02,
    "output_dir": "amalgam-out",
    "dump_fields": False,
    "lambda_min": 0.1,
    "lambda_max": 10.0,
    "t_min": 0.01,
    "t_max": 100.0,
    "exponents": "1,2,4,inf",
}

# Keys understood in configuration files and the environment.
CONFIG_ENV_KEYS = {
    "AMALGAM_EXPERIMENT": "experiment",
    "AMALGAM_DIM": "dim",
    "AMALGAM_GRID_N": "grid_n",
    "AMALGAM_GRID_L": "grid_l",
    "AMALGAM_SEED": "seed",
    "AMALGAM_JOBS": "jobs",
    "AMALGAM_TOL_SLOPE": "tol_slope",
    "AMALGAM_TOL_NORM": "tol_norm",
    "AMALGAM_OUTPUT_DIR": "output_dir",
    "AMALGAM_DUMP_FIELDS": "dump_fields",
    "AMALGAM_LAMBDA_MIN": "lambda_min",
    "AMALGAM_LAMBDA_MAX": "lambda_max",
    "AMALGAM_T_MIN": "t_min",
    "AMALGAM_T_MAX": "t_max",
    "AMALGAM_EXPONENTS": "exponents",
}

# Only these may be overridden from the process environment.
ENV_OVERRIDES = ("AMALGAM_OUTPUT_DIR", "AMALGAM_JOBS", "AMALGAM_SEED")

EXPERIMENTS = ("norms", "fixed-time", "strichartz", "sharpness", "potential", "all")


def _is_exponent_list(value: str) -> bool:
    try:
        items = [float(v) for v in value.split(",")]
    except ValueError:
        return False
    return len(items) > 0 and all(v >= 1 or math.isinf(v) for v in items)


RUN_CONFIG_VALIDATIONS = {
    'validation': {
        "type": "object",
        "properties": {
            "experiment": {"type": "string", "format": "valid_experiment"},
            "dim": {"type": "integer", "minimum": 1, "maximum": 3},
            "grid_n": {"type": ["integer", "null"], "minimum": 2},
            "grid_l": {"type": ["number", "null"], "exclusiveMinimum": 0},
            "seed": {"type": "integer", "minimum": 0},
            "jobs": {"type": "integer", "minimum": 1},
            "tol_slope": {"type": "number", "exclusiveMinimum": 0},
            "tol_norm": {"type": "number", "exclusiveMinimum": 0},
            "output_dir": {"type": "string", "minLength": 1},
            "dump_fields": {"type": "boolean"},
            "lambda_min": {"type": "number", "exclusiveMinimum": 0},
            "lambda_max": {"type": "number", "exclusiveMinimum": 0},
            "t_min": {"type": "number", "exclusiveMinimum": 0},
            "t_max": {"type": "number", "exclusiveMinimum": 0},
            "exponents": {"type": "string", "format": "exponent_list"},
        },
        "required": ["experiment", "dim", "seed", "jobs", "output_dir"],
        "additionalProperties": False,
    },
    'formats': {
        "valid_experiment": lambda value: value in EXPERIMENTS,
        "exponent_list": _is_exponent_list,
    }
}

SHARPNESS_CLAIMS = ("r_ge_2", "z2", "z3", "s2", "s3", "dd3", "dd3bis", "dd5", "dd6", "q2")

# Exponents used by `amalgam sharpness --claim ...` when a flag is omitted.
CLAIM_DEFAULTS = {
    "r": 4.0,
    "r1": 4.0,
    "r2": 4.0,
    "q1": 8.0,
    "q2": 8.0,
    "alpha": None,
    "beta": None,
}
