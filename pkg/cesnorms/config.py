import collections
import enum
import logging
import os
import pprint

_DEFAULT_N_MAX = 10 ** 6
_DEFAULT_TOL = 1e-9
_DEFAULT_DIVERGENCE_THRESHOLD = 1e15

_logger = logging.getLogger(__name__)


EnvConfig = collections.namedtuple(
    "EnvConfig",
    [
        "threads",
        "n_max",
        "tol",
        "divergence_threshold"
    ])


class ConfigVars(enum.Enum):
    THREADS = "NORMS_THREADS"
    N_MAX = "NORMS_N_MAX"
    TOL = "NORMS_TOL"
    DIVERGENCE_THRESHOLD = "NORMS_DIVERGENCE_THRESHOLD"


DEFAULT_CONFIG_VARS = {
    ConfigVars.THREADS: None,
    ConfigVars.N_MAX: _DEFAULT_N_MAX,
    ConfigVars.TOL: _DEFAULT_TOL,
    ConfigVars.DIVERGENCE_THRESHOLD: _DEFAULT_DIVERGENCE_THRESHOLD
}


def _warn_default(name, default):
    _logger.warning(
        "Unexpected value (%s) in variable %s: Using default (%s)",
        os.getenv(name), name, default)


def _getenv_int(name, default, minimum=1):
    raw = os.getenv(name)

    if raw is None or raw.strip() == "":
        return default

    try:
        val = int(raw)
    except ValueError:
        _warn_default(name, default)
        return default

    if val < minimum:
        _warn_default(name, default)
        return default

    return val


def _getenv_float(name, default):
    raw = os.getenv(name)

    if raw is None or raw.strip() == "":
        return default

    try:
        val = float(raw)
    except ValueError:
        _warn_default(name, default)
        return default

    if not val > 0 or val == float("inf"):
        _warn_default(name, default)
        return default

    return val


def default_threads():
    return max(os.cpu_count() or 1, 1)


def get_env_config():
    threads = _getenv_int(
        ConfigVars.THREADS.value,
        DEFAULT_CONFIG_VARS.get(ConfigVars.THREADS))

    n_max = _getenv_int(
        ConfigVars.N_MAX.value,
        DEFAULT_CONFIG_VARS.get(ConfigVars.N_MAX))

    tol = _getenv_float(
        ConfigVars.TOL.value,
        DEFAULT_CONFIG_VARS.get(ConfigVars.TOL))

    divergence_threshold = _getenv_float(
        ConfigVars.DIVERGENCE_THRESHOLD.value,
        DEFAULT_CONFIG_VARS.get(ConfigVars.DIVERGENCE_THRESHOLD))

    config = EnvConfig(
        threads=threads or default_threads(),
        n_max=n_max,
        tol=tol,
        divergence_threshold=divergence_threshold)

    return config


def log_config():
    conf_env = {key.value: os.getenv(key.value, None) for key in ConfigVars}
    _logger.debug("Configuration environment:\n%s", pprint.pformat(conf_env))
    _logger.debug("Current configuration: %s", get_env_config())
