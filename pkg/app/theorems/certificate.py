"""
Certificates and the cached generator manifest.

Both are pydantic models serialized as canonical JSON (sorted keys, two-space
indent, integers and strings only), so repeated runs with the same flags and
seed produce byte-identical files.
"""

import json
import logging
from pathlib import Path
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, model_validator

from app import __version__
from app.autos.extension import extend_loop_automorphism
from app.autos.linear import LinearMap
from app.autos.permutation import LoopAutomorphism
from app.loops.subgroups import census
from app.theorems.context import SuiteContext
from app.theorems.report import CheckReport, OrbitSummary
from app.utils.constants import CheckStatus, Provenance
from app.utils.errors import MissingGroupDataError
from app.utils.settings import cache_dir

logger = logging.getLogger(__name__)


class GeneratorRecord(BaseModel):
    """One generator: its 8x8 matrix (columns are basis images) and its loop permutation."""

    label: str
    provenance: Provenance
    matrix: List[List[int]]
    permutation: List[int]


class GeneratorManifest(BaseModel):
    version: str
    q: int
    aut_order: int
    generators: List[GeneratorRecord]


class Certificate(BaseModel):
    """Everything a run established, with the aggregated status."""

    version: str
    q: int
    seed: int
    algebra_order: int
    sphere_order: int
    loop_order: int
    census: Dict[str, int]
    doubling_triple_count: Optional[int]
    aut_order: Optional[int]
    orbits: Dict[str, OrbitSummary]
    checks: List[CheckReport]
    generators: List[GeneratorRecord]
    status: CheckStatus

    @model_validator(mode="after")
    def _status_matches_checks(self) -> "Certificate":
        if not self.checks:
            raise ValueError("a certificate needs at least one check")
        expected = CheckStatus.PASS if all(c.passed for c in self.checks) else CheckStatus.FAIL
        if self.status is not expected:
            raise ValueError(f"status {self.status.value} contradicts the checks ({expected.value})")
        return self

    @property
    def passed(self) -> bool:
        return self.status is CheckStatus.PASS


def canonical_json(model: BaseModel) -> str:
    return json.dumps(model.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"


def parse_certificate(text: str) -> Certificate:
    return Certificate.model_validate_json(text)


def generator_record(g: LoopAutomorphism) -> GeneratorRecord:
    """Record a generator; maps built without a matrix get one from the extension pipeline."""
    linear = g.linear or extend_loop_automorphism(g)
    return GeneratorRecord(
        label=g.label or g.provenance.value,
        provenance=g.provenance,
        matrix=[list(row) for row in linear.matrix],
        permutation=[int(i) for i in g.perm],
    )


def build_certificate(
    ctx: SuiteContext,
    checks: List[CheckReport],
    doubling_triple_count: Optional[int] = None,
    aut_order: Optional[int] = None,
    orbits: Optional[Dict[str, OrbitSummary]] = None,
    generators: Optional[List[LoopAutomorphism]] = None,
) -> Certificate:
    """
    Assemble a certificate for a run at ctx.q.

    Args:
        ctx: Context the checks ran against
        checks: Reports of every check that ran
        doubling_triple_count: Triple census, when the main theorem ran
        aut_order: Order of the closed automorphism group, when built
        orbits: Orbit summaries keyed by structure
        generators: Generators to record

    Returns:
        The certificate, with checks sorted by name
    """
    t = ctx.loop
    status = CheckStatus.PASS if all(c.passed for c in checks) else CheckStatus.FAIL
    return Certificate(
        version=__version__,
        q=ctx.q,
        seed=ctx.seed,
        algebra_order=t.algebra_order,
        sphere_order=t.sphere_order,
        loop_order=len(t),
        census={str(order): count for order, count in sorted(census(t).items())},
        doubling_triple_count=doubling_triple_count,
        aut_order=aut_order,
        orbits=orbits or {},
        checks=sorted(checks, key=lambda c: c.name),
        generators=[generator_record(g) for g in generators or []],
        status=status,
    )


def write_certificate(cert: Certificate, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(canonical_json(cert), encoding="utf-8")
    logger.info(f"Certificate written to {path}")
    return path


def manifest_path(q: int, directory: Optional[Path] = None) -> Path:
    return cache_dir(directory) / f"generators-q{q}-v{__version__}.json"


def save_generators(
    q: int, aut_order: int, generators: List[LoopAutomorphism], directory: Optional[Path] = None
) -> Path:
    """Cache the generator manifest keyed by (q, version)."""
    manifest = GeneratorManifest(
        version=__version__, q=q, aut_order=aut_order, generators=[generator_record(g) for g in generators]
    )
    path = manifest_path(q, directory)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(canonical_json(manifest), encoding="utf-8")
    logger.info(f"Generator manifest cached at {path}")
    return path


def load_generators(ctx: SuiteContext, directory: Optional[Path] = None) -> List[LoopAutomorphism]:
    """
    Rebuild the cached generators as loop automorphisms of ctx.loop.

    Raises:
        MissingGroupDataError: no manifest for (q, version), or it does not
            match the loop
    """
    path = manifest_path(ctx.q, directory)
    if not path.exists():
        raise MissingGroupDataError(f"no cached generators for q={ctx.q} at {path}; run `aut-group --q {ctx.q}` first")
    manifest = GeneratorManifest.model_validate_json(path.read_text(encoding="utf-8"))
    t = ctx.loop
    if manifest.q != ctx.q or any(len(r.permutation) != len(t) for r in manifest.generators):
        raise MissingGroupDataError(f"cached manifest {path} does not match {t!r}")
    logger.debug(f"Loaded {len(manifest.generators)} generators from {path}")
    return [
        LoopAutomorphism(
            t,
            record.permutation,
            record.provenance,
            LinearMap.from_array(ctx.field, record.matrix, record.provenance),
            record.label,
        )
        for record in manifest.generators
    ]
