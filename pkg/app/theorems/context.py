"""Per-run state shared by the checks: field, loop, named elements and the automorphism group."""

import logging
import zlib
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Any, Dict, List, Optional

import numpy as np

from app.algebra.batch import ZornBatch
from app.algebra.gf import Field, get_field
from app.autos.closure import ClosedGroup, group_closure
from app.autos.constructions import default_generators
from app.autos.permutation import LoopAutomorphism
from app.loops.named import NamedElements
from app.loops.table import LoopTable, enumerate_loop
from app.theorems.registry import catalogue_defaults
from app.utils.constants import MAIN_THEOREM_ORDER
from app.utils.errors import PreconditionError
from app.utils.settings import sample_budget

logger = logging.getLogger(__name__)

# Budgets replaced by an explicit --samples.
SAMPLE_KEYS = frozenset(
    {"samples", "composition_samples", "moufang_samples", "scalar_samples", "multi_summand_instances", "diassociativity_pairs"}
)


@dataclass
class SuiteContext:
    """
    Everything a check may need, built lazily.

    `samples` overrides the sampled-suite default. `options` is laid over the
    catalogue defaults in suites.yaml, and a missing seed is taken from there.
    """

    q: int
    seed: Optional[int] = None
    samples: Optional[int] = None
    options: Dict[str, Any] = dc_field(default_factory=dict)

    def __post_init__(self):
        self.options = {**catalogue_defaults(), **self.options}
        if self.seed is None:
            self.seed = int(self.options["seed"])

    def option(self, key: str) -> Any:
        return self.options[key]

    def budget(self, key: str = "samples") -> int:
        """Sample count for a budget key, after CLI override and test-mode cap."""
        overridden = self.samples is not None and key in SAMPLE_KEYS
        requested = self.samples if overridden else self.option(key)
        return sample_budget(int(requested))

    def rng(self, stream: str) -> np.random.Generator:
        """Independent deterministic generator per check."""
        return np.random.default_rng([self.seed, zlib.crc32(stream.encode("utf-8"))])

    @property
    def exhaustive(self) -> bool:
        return self.q in self.option("exhaustive_orders")

    @cached_property
    def field(self) -> Field:
        return get_field(self.q)

    @cached_property
    def batch(self) -> ZornBatch:
        return ZornBatch(self.field)

    @cached_property
    def loop(self) -> LoopTable:
        return enumerate_loop(self.q)

    @cached_property
    def sphere(self) -> np.ndarray:
        """Codes of all norm-one elements."""
        return self.batch.unit_codes()

    def require_main_order(self, what: str) -> None:
        if self.q != MAIN_THEOREM_ORDER:
            raise PreconditionError(f"{what} is computed over GF({MAIN_THEOREM_ORDER}) only")

    @cached_property
    def named(self) -> NamedElements:
        self.require_main_order("the named elements")
        return NamedElements.q2()

    @cached_property
    def named_index(self) -> Dict[str, int]:
        return self.named.indices(self.loop)

    @cached_property
    def generators(self) -> List[LoopAutomorphism]:
        self.require_main_order("the automorphism group")
        return default_generators(self.loop)

    @cached_property
    def group(self) -> ClosedGroup:
        logger.info("=" * 60)
        logger.info(f"Closing the automorphism group of {self.loop!r}")
        logger.info("=" * 60)
        return group_closure(self.generators)
