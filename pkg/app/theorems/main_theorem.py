"""
The main theorem over GF(2): every automorphism of M*(2) extends uniquely
to an automorphism of the octonions, so |Aut(M*(2))| equals the number of
norm-one doubling triples.

Pipeline:
    1. census of norm-one doubling triples (D of them)
    2. ψ-extension from the canonical triple onto each, audited on the
       algebra and restricted to the loop
    3. the D restrictions are pairwise distinct
    4. the closure of the constructed generators is exactly that set
    5. every closure element extends back through the canonical triple
    6. the group acts regularly on the triples
"""

import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from app.autos.closure import ClosedGroup, group_closure
from app.autos.constructions import default_generators
from app.autos.extension import extend_loop_automorphism
from app.autos.permutation import restrict
from app.autos.triples import (
    DoublingTriple,
    PsiExtender,
    canonical_triple_indices,
    doubling_triple_census,
    triple_from_indices,
)
from app.loops.subgroups import generate
from app.loops.table import LoopTable
from app.theorems.context import SuiteContext
from app.theorems.registry import catalogue_defaults, register_check
from app.theorems.report import CheckRecorder, CheckReport
from app.utils.constants import G2_2_ORDER, MAX_WITNESSES
from app.utils.errors import AutomorphismRejected, InternalConsistencyError, PreconditionError
from app.utils.settings import sample_budget

logger = logging.getLogger(__name__)


@dataclass
class MainTheoremResult:
    """Report plus the figures the certificate carries."""

    report: CheckReport
    doubling_triple_count: int
    aut_order: int
    basis_subloop_order: int


def closure_extension_indices(group: ClosedGroup, rng: np.random.Generator) -> List[int]:
    """Closure elements extended back through the canonical triple: all of them unless test mode caps the count."""
    return group.sample(rng, sample_budget(group.order))


def verify_main_theorem(
    t: LoopTable,
    group: Optional[ClosedGroup] = None,
    max_witnesses: int = MAX_WITNESSES,
    rng: Optional[np.random.Generator] = None,
) -> MainTheoremResult:
    """
    Run the extension pipeline on M*(2).

    Args:
        t: The loop M*(2)
        group: Closure of the constructed generators; built when omitted
        max_witnesses: Failing inputs kept in the report
        rng: Draws the closure elements extended back when test mode caps
             the count; seeded from the catalogue when omitted

    Raises:
        PreconditionError: t is not over GF(2)
    """
    if t.q != 2:
        raise PreconditionError("main theorem pipeline is q=2 only")
    rec = CheckRecorder("main-theorem", max_witnesses=max_witnesses)
    table = t.table

    logger.info("=" * 60)
    logger.info("Main theorem: census of doubling triples")
    logger.info("=" * 60)
    triples = doubling_triple_census(t)
    count = len(triples)
    rec.record(count == G2_2_ORDER, f"{count} doubling triples, expected {G2_2_ORDER}")

    logger.info("Extending the canonical triple onto every doubling triple")
    extender = PsiExtender(DoublingTriple.canonical(t.field))
    restriction_keys = []
    for indices in triples:
        dst = triple_from_indices(t, indices)
        h = extender.extend(dst, check=False)
        witness = h.multiplicativity_witness()
        if witness is not None:
            rec.fail(f"extension onto {dst} is not multiplicative at {witness}")
            continue
        if h.isometry_witness() is not None:
            rec.fail(f"extension onto {dst} is not an isometry")
            continue
        try:
            g = restrict(h, t)
        except AutomorphismRejected as exc:
            rec.fail(f"extension onto {dst}: {exc}")
            continue
        bad = np.argwhere(g.perm[table] != table[g.perm[:, None], g.perm[None, :]])
        rec.record(bad.size == 0, lambda: f"restriction onto {dst} fails at {t.rep(int(bad[0][0]))}")
        restriction_keys.append(g.key)

    distinct = set(restriction_keys)
    rec.record(len(distinct) == len(restriction_keys), f"{len(restriction_keys) - len(distinct)} repeated restrictions")

    if group is None:
        group = group_closure(default_generators(t))
    logger.info("=" * 60)
    logger.info(f"Main theorem: comparing the closure ({group.order}) with the extensions ({len(distinct)})")
    logger.info("=" * 60)
    rec.record(group.order == len(distinct), f"closure has {group.order} elements, extensions give {len(distinct)}")
    rec.record(group.keys() == sorted(distinct), "closure and extensions are different sets")

    if rng is None:
        rng = np.random.default_rng(catalogue_defaults()["seed"])
    for k in closure_extension_indices(group, rng):
        g = group.element(k)
        try:
            extend_loop_automorphism(g, t)
            rec.add_cases(1)
        except InternalConsistencyError as exc:
            rec.fail(f"closure element {group.word(k)}: {exc}")

    src = list(canonical_triple_indices(t))
    images = group.perms[:, src]
    image_set = {tuple(int(v) for v in row) for row in images}
    rec.record(len(image_set) == group.order, "two automorphisms agree on the canonical triple")
    rec.record(image_set == set(triples), "the group does not reach every doubling triple")

    basis = [t.index_of(x) for x in extender.src.basis()]
    basis_subloop = len(generate(t, basis))
    rec.note("doubling_triples", count)
    rec.note("aut_order", group.order)
    rec.note("basis_subloop_order", basis_subloop)
    logger.info(f"|Aut(M*(2))| = {group.order}; canonical basis generates a subloop of order {basis_subloop}")
    return MainTheoremResult(rec.report(), count, group.order, basis_subloop)


def main_theorem_result(ctx: SuiteContext) -> MainTheoremResult:
    ctx.require_main_order("the main theorem")
    return verify_main_theorem(
        ctx.loop, ctx.group, max_witnesses=ctx.option("max_witnesses"), rng=ctx.rng("main-theorem")
    )


@register_check("main-theorem")
def check_main_theorem(ctx: SuiteContext) -> CheckReport:
    return main_theorem_result(ctx).report


def triple_key_codes(triples: np.ndarray, n: int) -> np.ndarray:
    """One integer per index triple (a, b, c) of a loop with n elements."""
    triples = np.asarray(triples, dtype=np.int64)
    return (triples[..., 0] * n + triples[..., 1]) * n + triples[..., 2]


def non_triple_images(perms: np.ndarray, census: np.ndarray, rows: np.ndarray, n: int) -> np.ndarray:
    """
    Pairs (element, row) where a permutation sends a census triple outside the census.

    Args:
        perms: (m, n) loop permutations
        census: (D, 3) index triples
        rows: Census rows to push through every permutation
        n: Loop order
    """
    known = np.sort(triple_key_codes(census, n))
    images = np.asarray(perms)[:, census[rows]]
    return np.argwhere(~np.isin(triple_key_codes(images, n), known))


@register_check("triple-preservation")
def check_triple_preservation(ctx: SuiteContext) -> CheckReport:
    """Every generator and a seeded sample of the closure map doubling triples onto doubling triples."""
    ctx.require_main_order("triple preservation")
    t, group = ctx.loop, ctx.group
    rec = CheckRecorder("triple-preservation", max_witnesses=ctx.option("max_witnesses"))
    census = np.array(doubling_triple_census(t), dtype=np.int64)
    rng = ctx.rng("triple-preservation")
    rows = np.sort(rng.choice(len(census), size=min(ctx.budget("triple_image_samples"), len(census)), replace=False))
    chosen = {group.index_of(g) for g in group.generators}
    chosen.update(group.sample(rng, ctx.budget("triple_element_sample")))
    elements = np.array(sorted(k for k in chosen if k is not None), dtype=np.int64)

    for start in range(0, len(elements), 1024):
        block = elements[start : start + 1024]
        bad = non_triple_images(group.perms[block], census, rows, len(t))
        rec.add_cases(len(block) * len(rows))
        for i, r in bad:
            k, src = int(block[i]), tuple(int(v) for v in census[rows[r]])
            rec.fail(lambda: f"{group.word(k)} sends {src} to {tuple(int(v) for v in group.perms[k][list(src)])}")
    rec.note("elements", len(elements))
    rec.note("triples_per_element", len(rows))
    logger.info(f"Triple preservation: {len(elements)} automorphisms on {len(rows)} doubling triples")
    return rec.report()
