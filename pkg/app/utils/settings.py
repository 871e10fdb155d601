"""Environment-driven settings.

Flags are read from ZORNLAB_* environment variables. A flag is enabled when its
value is one of "1", "true", "yes", "on" (case-insensitive, surrounding
whitespace ignored).
"""

import os
from pathlib import Path
from typing import Optional

_TRUTHY = {"1", "true", "yes", "on"}

# Sample budget ceiling while ZORNLAB_TEST_MODE is on.
TEST_MODE_SAMPLE_CAP = 2000


def env_flag(name: str) -> bool:
    """
    Check whether a boolean environment flag is enabled.

    Args:
        name: Environment variable name

    Returns:
        True if the variable holds a truthy value, False otherwise (default)
    """
    return os.getenv(name, "").strip().lower() in _TRUTHY


def is_dev_mode() -> bool:
    """Debug logging requested via ZORNLAB_DEV_MODE."""
    return env_flag("ZORNLAB_DEV_MODE")


def is_test_mode() -> bool:
    """Reduced sample budgets requested via ZORNLAB_TEST_MODE."""
    return env_flag("ZORNLAB_TEST_MODE")


def sample_budget(requested: int) -> int:
    """
    Apply the test-mode ceiling to a requested number of samples.

    Args:
        requested: Number of sampled instances asked for

    Returns:
        The requested count, capped while test mode is enabled
    """
    if is_test_mode():
        return min(requested, TEST_MODE_SAMPLE_CAP)
    return requested


def cache_dir(override: Optional[Path] = None) -> Path:
    """
    Directory for cached generator manifests.

    Args:
        override: Explicit directory; wins over the environment

    Returns:
        ZORNLAB_CACHE_DIR if set, else ~/.cache/zornlab
    """
    if override is not None:
        return Path(override)
    env_value = os.getenv("ZORNLAB_CACHE_DIR", "").strip()
    if env_value:
        return Path(env_value)
    return Path.home() / ".cache" / "zornlab"
