"""Runtime settings for golden_pair.

Settings come from environment variables with typed defaults; there are no
configuration files. Checks in order:
1. Explicit CLI flags (applied by the caller)
2. GOLDEN_PAIR_* environment variables
3. Built-in defaults
"""

import logging
import os
from dataclasses import dataclass

from .errors import ContractError

DEFAULT_DIGITS = 50
DEFAULT_GUARD_DIGITS = 20
MIN_GUARD_DIGITS = 20
DEFAULT_WORKERS = 1
DEFAULT_LOG_LEVEL = "WARNING"

ENV_DIGITS = "GOLDEN_PAIR_DIGITS"
ENV_GUARD_DIGITS = "GOLDEN_PAIR_GUARD_DIGITS"
ENV_WORKERS = "GOLDEN_PAIR_WORKERS"
ENV_LOG_LEVEL = "GOLDEN_PAIR_LOG_LEVEL"


@dataclass(frozen=True)
class Settings:
    """Resolved defaults for a CLI invocation."""

    digits: int = DEFAULT_DIGITS
    guard_digits: int = DEFAULT_GUARD_DIGITS
    workers: int = DEFAULT_WORKERS
    log_level: str = DEFAULT_LOG_LEVEL


def _int_from_env(name: str, default: int, minimum: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ContractError(f"{name} must be an integer, got {raw!r}")
    if value < minimum:
        raise ContractError(f"{name} must be >= {minimum}, got {value}")
    return value


def load_settings() -> Settings:
    """Read settings from the environment.

    Raises:
        ContractError: If a variable is set to an invalid value.
    """
    level = os.environ.get(ENV_LOG_LEVEL, DEFAULT_LOG_LEVEL).strip().upper()
    if level not in logging.getLevelNamesMapping():
        raise ContractError(f"{ENV_LOG_LEVEL} is not a logging level: {level!r}")

    return Settings(
        digits=_int_from_env(ENV_DIGITS, DEFAULT_DIGITS, 1),
        guard_digits=_int_from_env(ENV_GUARD_DIGITS, DEFAULT_GUARD_DIGITS, MIN_GUARD_DIGITS),
        workers=_int_from_env(ENV_WORKERS, DEFAULT_WORKERS, 1),
        log_level=level,
    )
