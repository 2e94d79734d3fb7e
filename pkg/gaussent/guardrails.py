"""
Run-parameter guardrails: single source of truth for the numeric knobs of a
run with min/max bounds. Used by the settings defaults, the config-file
loader and RunConfig validation.
"""

RUN_PARAMS: dict[str, dict] = {
    "points": {
        "description": "Number of grid points per curve (uniform in tau, or in gamma*t for purity figures)",
        "default": 400,
        "min": 2,
        "max": 1_000_000,
        "type": "int",
    },
    "tau_max": {
        "description": "Largest rescaled time on the grid (tau = 1 means t = infinity)",
        "default": 0.9975,
        "min": 1e-6,
        "max": 0.999999,
        "type": "float",
    },
    "precision": {
        "description": "Significant digits of floats written to CSV",
        "default": 12,
        "min": 1,
        "max": 17,
        "type": "int",
    },
    "gamma": {
        "description": "Reservoir coupling rate gamma (1/time)",
        "default": 1.0,
        "min": 1e-6,
        "max": 1e6,
        "type": "float",
    },
    "dt": {
        "description": "Dimensionless integrator step gamma*dt used by validation",
        "default": 1e-3,
        "min": 1e-6,
        "max": 0.5,
        "type": "float",
    },
    "r": {
        "description": "Squeezing parameter of the initial two-mode squeezed vacuum (closed forms lose precision beyond |r| = 4)",
        "default": 1.0,
        "min": -4.0,
        "max": 4.0,
        "type": "float",
    },
    "nbar": {
        "description": "Mean thermal photon number of the reservoir",
        "default": 0.5,
        "min": 0.0,
        "max": 1e6,
        "type": "float",
    },
    "workers": {
        "description": "Threads used for per-curve computation",
        "default": 1,
        "min": 1,
        "max": 64,
        "type": "int",
    },
}

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def coerce_run_param(key: str, value):
    """Convert value to the declared type of key. Raises KeyError, ValueError or TypeError."""
    spec = RUN_PARAMS[key]
    if spec["type"] == "int":
        if isinstance(value, float) and not value.is_integer():
            raise ValueError(f"{value!r} is not an integer")
        return int(value)
    return float(value)


def validate_run_param(key: str, value) -> tuple[bool, str]:
    """Validate a run parameter value against guardrails.

    Returns (is_valid, error_message). error_message is empty on success.
    """
    if key not in RUN_PARAMS:
        return False, f"Unknown parameter: {key}"

    spec = RUN_PARAMS[key]

    try:
        value = coerce_run_param(key, value)
    except (ValueError, TypeError):
        return False, f"Invalid value for {key}: cannot convert {value!r} to {spec['type']}"

    if value != value:
        return False, f"{key} value is NaN"
    if value < spec["min"]:
        return False, f"{key} value {value} is below minimum {spec['min']}"
    if value > spec["max"]:
        return False, f"{key} value {value} is above maximum {spec['max']}"

    return True, ""


def validate_log_level(value) -> tuple[bool, str]:
    """Same contract as validate_run_param, for the logging level name."""
    if str(value).upper() not in LOG_LEVELS:
        return False, f"Invalid log level {value!r}: expected one of {', '.join(LOG_LEVELS)}"
    return True, ""
