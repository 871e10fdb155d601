"""Check reports and the recorder that builds them."""

import time
from typing import Callable, Dict, List, Union

import numpy as np
from pydantic import BaseModel, Field, model_validator

from app.utils.constants import MAX_WITNESSES, CheckStatus

NoteValue = Union[int, str, List[int]]


class CheckReport(BaseModel):
    """Outcome of one named check. Wall time is shown on the console only."""

    name: str
    status: CheckStatus
    cases: int = 0
    witnesses: List[str] = Field(default_factory=list)
    notes: Dict[str, NoteValue] = Field(default_factory=dict)
    elapsed: float = Field(default=0.0, exclude=True)

    @model_validator(mode="after")
    def _pass_has_no_witnesses(self) -> "CheckReport":
        if self.status is CheckStatus.PASS and self.witnesses:
            raise ValueError(f"check {self.name} passed but lists witnesses")
        return self

    @property
    def passed(self) -> bool:
        return self.status is CheckStatus.PASS


class OrbitSummary(BaseModel):
    """Orbits of the automorphism group on copies of one subgroup type."""

    structure: str
    count: int
    sizes: List[int]
    representatives: List[str]


class CheckRecorder:
    """
    Accumulates cases and failures for one check.

    Usage:
        rec = CheckRecorder("moufang-identities")
        rec.record(ok, lambda: f"{x}, {y}, {z}")
        report = rec.report()
    """

    def __init__(self, name: str, max_witnesses: int = MAX_WITNESSES):
        self.name = name
        self.max_witnesses = max_witnesses
        self.cases = 0
        self.failures = 0
        self.witnesses: List[str] = []
        self.notes: Dict[str, NoteValue] = {}
        self._started = time.perf_counter()

    def record(self, ok: bool, witness: Union[str, Callable[[], str]] = "") -> bool:
        self.cases += 1
        if not ok:
            self.fail(witness)
        return ok

    def fail(self, witness: Union[str, Callable[[], str]] = "") -> None:
        self.failures += 1
        if len(self.witnesses) < self.max_witnesses:
            text = witness() if callable(witness) else witness
            self.witnesses.append(text or f"failure #{self.failures}")

    def record_batch(self, ok, witness: Callable[[int], str]) -> None:
        """Record a boolean array of cases; witness(k) describes failing case k."""
        ok = np.asarray(ok, dtype=bool).ravel()
        self.cases += ok.size
        bad = np.flatnonzero(~ok)
        room = max(self.max_witnesses - len(self.witnesses), 0)
        self.witnesses.extend(witness(int(k)) for k in bad[:room])
        self.failures += bad.size

    def add_cases(self, n: int) -> None:
        self.cases += n

    def note(self, key: str, value: NoteValue) -> None:
        self.notes[key] = value

    def report(self) -> CheckReport:
        status = CheckStatus.FAIL if self.failures else CheckStatus.PASS
        return CheckReport(
            name=self.name,
            status=status,
            cases=self.cases,
            witnesses=self.witnesses if self.failures else [],
            notes=self.notes,
            elapsed=time.perf_counter() - self._started,
        )
