"""Runs checks against a SuiteContext and merges their reports."""

import logging
import time
from typing import Iterable, List

from app.theorems.context import SuiteContext
from app.theorems.registry import SuiteRegistry
from app.theorems.report import CheckRecorder, CheckReport
from app.utils.constants import CheckStatus
from app.utils.errors import AutomorphismRejected, InternalConsistencyError, InvalidTripleError

logger = logging.getLogger(__name__)

UNIT_SPHERE_CHECKS = ("special-bilinear", "norm-one-equivalence", "mult-to-add")


def run_check(ctx: SuiteContext, registry: SuiteRegistry, name: str) -> CheckReport:
    """
    Run one registered check.

    An audit or consistency error raised inside the check becomes a failing
    report carrying its witness; precondition errors propagate.
    """
    started = time.perf_counter()
    try:
        report = registry.check(name)(ctx)
    except (AutomorphismRejected, InternalConsistencyError, InvalidTripleError) as exc:
        logger.warning(f"{name}: {exc}")
        rec = CheckRecorder(name, max_witnesses=ctx.option("max_witnesses"))
        rec.fail(str(getattr(exc, "witness", None) or exc))
        report = rec.report()
    report.elapsed = time.perf_counter() - started
    if report.passed:
        logger.info(f"{name}: pass ({report.cases} cases, {report.elapsed:.2f}s)")
    else:
        logger.warning(f"{name}: FAIL ({len(report.witnesses)} witnesses shown)")
        for witness in report.witnesses:
            logger.warning(f"  {witness}")
    return report


def run_checks(ctx: SuiteContext, registry: SuiteRegistry, names: Iterable[str]) -> List[CheckReport]:
    """Reports ordered by check name."""
    return sorted((run_check(ctx, registry, name) for name in names), key=lambda r: r.name)


def run_suite(ctx: SuiteContext, registry: SuiteRegistry, suite: str) -> List[CheckReport]:
    """
    Run a named suite (or "all") at ctx.q.

    Raises:
        UnknownSuiteError: unknown suite
        PreconditionError: the suite does not apply to ctx.q
    """
    suites = registry.select(suite, ctx.q)
    names = registry.check_names(suites)
    logger.info("=" * 60)
    logger.info(f"Suite {suite} over GF({ctx.q}): {len(names)} checks")
    logger.info("=" * 60)
    return run_checks(ctx, registry, names)


def merge_reports(name: str, reports: List[CheckReport], max_witnesses: int) -> CheckReport:
    """One report whose cases and witnesses are the union of the parts."""
    witnesses = [f"{r.name}: {w}" for r in reports for w in r.witnesses][:max_witnesses]
    failed = any(not r.passed for r in reports)
    return CheckReport(
        name=name,
        status=CheckStatus.FAIL if failed else CheckStatus.PASS,
        cases=sum(r.cases for r in reports),
        witnesses=witnesses if failed else [],
        notes={f"{r.name}.{key}": value for r in reports for key, value in r.notes.items()},
        elapsed=sum(r.elapsed for r in reports),
    )


def verify_unit_sphere(ctx: SuiteContext, registry: SuiteRegistry) -> CheckReport:
    """
    The bilinear identity ⟨xy, y⟩ = ⟨x, e⟩N(y), the four equivalent
    conditions for x + y to have norm one, and x + y = −xy⁻¹x, as one report.
    """
    reports = run_checks(ctx, registry, UNIT_SPHERE_CHECKS)
    return merge_reports("unit-sphere", reports, ctx.option("max_witnesses"))
