"""
Additivity of loop automorphisms, and the shift pairs used to prove it.

An automorphism g of the loop is additive when g(x + y) = g(x) + g(y) for
all x, y with x + y again in the loop. Over GF(2) this is checked on the
enumerated loop; over GF(3) on the unit sphere, where x = y is a valid pair
because N(2x) = 4N(x) = N(x).
"""

import logging
from functools import reduce
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from app.algebra.batch import ZornBatch
from app.algebra.element_text import format_coords
from app.algebra.gf import get_field
from app.algebra.zorn import Octonion
from app.autos.constructions import S3_PERMUTATIONS, perm_automorphism, perm_label
from app.autos.permutation import LoopAutomorphism
from app.autos.triples import DoublingTriple, basis_coordinates
from app.loops.named import NamedElements
from app.loops.subgroups import elements_of_order, involution_pair_classify, involutions
from app.loops.table import LoopTable
from app.theorems.context import SuiteContext
from app.theorems.registry import register_check
from app.theorems.report import CheckRecorder, CheckReport
from app.utils.constants import MAX_WITNESSES, GroupTag
from app.utils.errors import PreconditionError

logger = logging.getLogger(__name__)

SphereMap = Callable[[np.ndarray], np.ndarray]


def unit_sum_pairs(t: LoopTable) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Index pairs (i, j) whose sum lies in the loop, with the index of the sum (q = 2)."""
    n = len(t)
    i = np.repeat(np.arange(n), n)
    j = np.tile(np.arange(n), n)
    sums = t.batch.add(t.coords[i], t.coords[j])
    keep = t.in_loop(sums)
    return i[keep], j[keep], t.index_of_coords(sums[keep])


def _sum_rows(batch: ZornBatch, rows: np.ndarray) -> np.ndarray:
    return reduce(batch.add, rows)


def verify_additivity(
    t: LoopTable,
    auts: Sequence[LoopAutomorphism],
    rng: Optional[np.random.Generator] = None,
    instances: int = 10_000,
    max_summands: int = 8,
    max_witnesses: int = MAX_WITNESSES,
) -> CheckReport:
    """
    Check g(x + y) = g(x) + g(y) on every pair with x + y in M*(2), then on
    sampled sums of up to max_summands loop elements, then on the expansion
    of x0 in the canonical doubling basis.

    Raises:
        PreconditionError: the loop is not over GF(2)
    """
    if t.q != 2:
        raise PreconditionError("loop additivity is checked over GF(2)")
    rng = rng or np.random.default_rng(0)
    b = t.batch
    rec = CheckRecorder("additivity", max_witnesses=max_witnesses)

    i, j, k = unit_sum_pairs(t)
    for g in auts:
        image_sum = b.add(t.coords[g.perm[i]], t.coords[g.perm[j]])
        ok = np.all(t.coords[g.perm[k]] == image_sum, axis=-1)
        rec.record_batch(ok, lambda m, g=g: f"{g.label or 'g'} at ({t.rep(int(i[m]))}, {t.rep(int(j[m]))})")
    rec.note("pairs", int(len(i)))

    tried = 0
    for _ in range(instances):
        g = auts[int(rng.integers(len(auts)))]
        n = int(rng.integers(2, max_summands + 1))
        for _ in range(64):
            members = rng.integers(0, len(t), size=n)
            total = _sum_rows(b, t.coords[members])
            tried += 1
            if b.norm(total) == 1:
                break
        else:
            continue
        target = int(t.index_of_coords(total))
        ok = np.array_equal(t.coords[g.perm[target]], _sum_rows(b, t.coords[g.perm[members]]))
        rec.record(ok, lambda: f"{g.label or 'g'} on the sum of {[str(t.rep(int(m))) for m in members]}")
    rec.note("multi_summand_draws", tried)

    triple = DoublingTriple.canonical(t.field)
    x0 = NamedElements.q2().x0
    summands = [t.index_of(x) for x, c in zip(triple.basis(), basis_coordinates(triple, x0)) if c]
    x0_index = t.index_of(x0)
    for g in auts:
        ok = np.array_equal(t.coords[g.perm[x0_index]], _sum_rows(b, t.coords[g.perm[summands]]))
        rec.record(ok, lambda: f"{g.label or 'g'} on the basis expansion of x0")
    rec.note("x0_summands", len(summands))
    return rec.report()


def sphere_automorphisms(q: int, rng: np.random.Generator, count: int) -> Dict[str, SphereMap]:
    """
    Automorphisms of the unit sphere of the algebra over GF(q), as maps on
    (..., 8) arrays: the signed permutations, conjugations by elements of
    order three computed through products, and random words in them.
    """
    batch = ZornBatch(get_field(q))
    maps: Dict[str, SphereMap] = {}
    for pi in S3_PERMUTATIONS:
        maps[perm_label(pi)] = perm_automorphism(pi, q).apply_coords

    units = batch.random_units(rng, 4096)
    e = batch.identity((len(units),))
    hit = np.all(batch.power(units, 3) == e, axis=-1) & ~np.all(units == e, axis=-1)
    for x in units[hit][:6]:
        x_inv = batch.inverse(x)
        maps[f"T[{format_coords(x)}]"] = lambda y, x=x, x_inv=x_inv: batch.mul(batch.mul(x_inv, y), x)

    basic = list(maps.items())
    while len(maps) < count:
        length = int(rng.integers(2, 5))
        word = [basic[int(k)] for k in rng.integers(0, len(basic), size=length)]
        label = "∘".join(name for name, _ in word)
        maps[label] = lambda y, fns=tuple(fn for _, fn in word): reduce(lambda acc, fn: fn(acc), reversed(fns), y)
    return maps


def verify_sphere_additivity(
    q: int,
    maps: Dict[str, SphereMap],
    x: np.ndarray,
    y: np.ndarray,
    max_witnesses: int = MAX_WITNESSES,
) -> CheckReport:
    """
    Audit each map for multiplicativity on the sampled pairs, then check
    additivity on the pairs whose sum has norm one, including x = y.
    """
    batch = ZornBatch(get_field(q))
    rec = CheckRecorder("additivity", max_witnesses=max_witnesses)
    pairs_x = np.concatenate([x, x])
    pairs_y = np.concatenate([y, x])
    sums = batch.add(pairs_x, pairs_y)
    keep = batch.norm(sums) == 1
    sx, sy, ssum = pairs_x[keep], pairs_y[keep], sums[keep]
    for label, g in maps.items():
        multiplicative = np.all(g(batch.mul(x, y)) == batch.mul(g(x), g(y)), axis=-1)
        rec.record_batch(multiplicative, lambda k, label=label: f"{label} not multiplicative at {format_coords(x[k])}")
        additive = np.all(g(ssum) == batch.add(g(sx), g(sy)), axis=-1)
        rec.record_batch(
            additive,
            lambda k, label=label: f"{label} at x={format_coords(sx[k])}, y={format_coords(sy[k])}",
        )
    rec.note("maps", len(maps))
    rec.note("pairs", int(np.sum(keep)))
    rec.note("diagonal_pairs", int(np.sum(keep[len(x) :])))
    return rec.report()


@register_check("additivity")
def check_additivity(ctx: SuiteContext) -> CheckReport:
    if ctx.q == 2:
        group = ctx.group
        rng = ctx.rng("additivity")
        auts = list(ctx.generators)
        auts.extend(group.element(k) for k in group.sample(rng, ctx.option("additivity_group_sample")))
        return verify_additivity(
            ctx.loop,
            auts,
            rng=rng,
            instances=ctx.budget("multi_summand_instances"),
            max_summands=ctx.option("multi_summand_max"),
            max_witnesses=ctx.option("max_witnesses"),
        )
    if ctx.q == 3:
        rng = ctx.rng("additivity")
        maps = sphere_automorphisms(ctx.q, rng, ctx.option("additivity_group_sample"))
        n = ctx.budget()
        x, y = ctx.batch.random_units(rng, n), ctx.batch.random_units(rng, n)
        return verify_sphere_additivity(ctx.q, maps, x, y, max_witnesses=ctx.option("max_witnesses"))
    raise PreconditionError(f"additivity is checked over GF(2) and GF(3), not GF({ctx.q})")


def verify_shift_pairs(
    t: LoopTable, named: Optional[NamedElements] = None, max_witnesses: int = MAX_WITNESSES
) -> CheckReport:
    """
    For involutions x != y with N(x+e), N(y+e), N(x+y) all != 1, check that
    ⟨x, y⟩ is a V4 and find a of order three with x + a and y + (e + a) in
    the loop. Also checks the two explicit shifts for (x0, u1) and (x0, u2).

    Raises:
        PreconditionError: the loop is not over GF(2)
    """
    if t.q != 2:
        raise PreconditionError("shift pairs are searched over GF(2)")
    named = named or NamedElements.q2()
    b = t.batch
    rec = CheckRecorder("shift-pairs", max_witnesses=max_witnesses)
    e = b.identity()
    order_three = t.coords[elements_of_order(t, 3)]
    complements = b.add(order_three, e)

    def off_loop(u: np.ndarray) -> bool:
        return int(b.norm(u)) != 1

    qualifying, worst = 0, 0
    invs = involutions(t)
    for pos, x in enumerate(invs):
        cx = t.coords[x]
        if not off_loop(b.add(cx, e)):
            continue
        for y in invs[pos + 1 :]:
            cy = t.coords[y]
            if not (off_loop(b.add(cy, e)) and off_loop(b.add(cx, cy))):
                continue
            qualifying += 1
            rec.record(
                involution_pair_classify(t, x, y) is GroupTag.V4,
                lambda: f"<{t.rep(x)}, {t.rep(y)}> is not a V4",
            )
            good = (b.norm(b.add(cx, order_three)) == 1) & (b.norm(b.add(cy, complements)) == 1)
            hits = np.flatnonzero(good)
            rec.record(hits.size > 0, lambda: f"no shift for ({t.rep(x)}, {t.rep(y)})")
            if hits.size:
                worst = max(worst, int(hits[0]) + 1)

    for partner, shift in (("u1", "a_shift1"), ("u2", "a_shift2")):
        a = getattr(named, shift)
        shifted = (named.x0 + a, getattr(named, partner) + (Octonion.identity(t.field) + a))
        rec.record(
            all(t.in_loop(np.array(s.coords)) for s in shifted),
            f"explicit shift {shift} does not work for (x0, {partner})",
        )
        rec.record(t.order(t.index_of(a)) == 3, f"{shift} does not have order three")
    rec.note("qualifying_pairs", qualifying)
    rec.note("max_candidates_tried", worst)
    return rec.report()


@register_check("shift-pairs")
def check_shift_pairs(ctx: SuiteContext) -> CheckReport:
    return verify_shift_pairs(ctx.loop, ctx.named, max_witnesses=ctx.option("max_witnesses"))

