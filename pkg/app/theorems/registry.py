"""Registry of verification checks and the YAML suite catalogue."""

import logging
from dataclasses import dataclass
from pathlib import Path
from functools import lru_cache
from typing import Any, Callable, Dict, List, Optional

import yaml

from app.utils.errors import PreconditionError, UnknownSuiteError

logger = logging.getLogger(__name__)

CheckFn = Callable[..., Any]

_CHECKS: Dict[str, CheckFn] = {}

CATALOGUE_PATH = Path(__file__).parent / "suites.yaml"


def register_check(name: str) -> Callable[[CheckFn], CheckFn]:
    """Decorator registering a check function under a stable name."""

    def decorator(fn: CheckFn) -> CheckFn:
        if name in _CHECKS and _CHECKS[name] is not fn:
            raise ValueError(f"check {name!r} registered twice")
        _CHECKS[name] = fn
        return fn

    return decorator


def registered_checks() -> Dict[str, CheckFn]:
    # Importing the check modules fills the registry.
    from app.theorems import additivity, algebra_checks, auto_checks, loop_checks, main_theorem, orbits  # noqa: F401

    return dict(_CHECKS)


@lru_cache(maxsize=None)
def _read_catalogue(config_path: Path) -> Dict[str, Any]:
    with open(config_path, "r", encoding="utf-8") as f:
        return yaml.safe_load(f) or {}


def catalogue_defaults() -> Dict[str, Any]:
    """Budgets, seed and witness limit from the bundled catalogue."""
    return dict(_read_catalogue(CATALOGUE_PATH).get("defaults", {}))


@dataclass
class Suite:
    """A named group of checks with the field orders it applies to."""

    name: str
    description: str
    orders: List[int]
    checks: List[str]

    def applies_to(self, q: int) -> bool:
        return q in self.orders


class SuiteRegistry:
    """Suites loaded from YAML, resolved against the registered checks."""

    def __init__(self, config_path: Optional[Path] = None):
        """
        Load the suite catalogue.

        Args:
            config_path: Path to a YAML catalogue. If None, uses suites.yaml
                         next to this module.
        """
        if config_path is None:
            config_path = CATALOGUE_PATH
        self.defaults: Dict[str, Any] = {}
        self.suites: Dict[str, Suite] = {}
        self._load(config_path)

    def _load(self, config_path: Path) -> None:
        if not config_path.exists():
            raise FileNotFoundError(f"Suite catalogue not found: {config_path}")

        config = _read_catalogue(config_path)
        self.defaults = dict(config.get("defaults", {}))
        checks = registered_checks()
        for name, definition in config.get("suites", {}).items():
            unknown = [c for c in definition.get("checks", []) if c not in checks]
            if unknown:
                raise ValueError(f"suite {name!r} names unknown checks: {unknown}")
            self.suites[name] = Suite(
                name=name,
                description=definition.get("description", ""),
                orders=list(definition.get("orders", [])),
                checks=list(definition.get("checks", [])),
            )
        logger.debug(f"Loaded {len(self.suites)} suites from {config_path}")

    def names(self) -> List[str]:
        return list(self.suites)

    def get(self, name: str) -> Suite:
        """
        Raises:
            UnknownSuiteError: unknown suite name
        """
        if name not in self.suites:
            raise UnknownSuiteError(f"unknown suite {name!r}; choose from {', '.join(self.suites)} or all")
        return self.suites[name]

    def select(self, name: str, q: int) -> List[Suite]:
        """
        Suites to run for a --suite argument.

        "all" picks every suite applicable to q; a named suite outside its
        orders is a scope error.

        Raises:
            UnknownSuiteError: unknown suite
            PreconditionError: the suite does not apply to q
        """
        if name == "all":
            return [s for s in self.suites.values() if s.applies_to(q)]
        suite = self.get(name)
        if not suite.applies_to(q):
            raise PreconditionError(f"suite {name!r} applies to q in {suite.orders}, not {q}")
        return [suite]

    def check_names(self, suites: List[Suite]) -> List[str]:
        """Distinct check names in first-seen order."""
        seen: Dict[str, None] = {}
        for suite in suites:
            for check in suite.checks:
                seen.setdefault(check, None)
        return list(seen)

    def check(self, name: str) -> CheckFn:
        return registered_checks()[name]
