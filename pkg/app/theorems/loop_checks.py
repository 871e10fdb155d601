"""Checks on the enumerated loop and, over GF(2), its involutions and small subgroups."""

import logging
from math import gcd

import numpy as np

from app.algebra.element_text import format_coords
from app.loops.subgroups import (
    census,
    commutator,
    conjugation_cycles_involutions,
    generate,
    involution_pair_classify,
    involutions,
    s3_membership_props,
    s3_subgroups,
    subgroup_generate,
)
from app.theorems.context import SuiteContext
from app.theorems.registry import register_check
from app.theorems.report import CheckRecorder, CheckReport
from app.utils.constants import LOOP_ORDER_Q2, ORDER_CENSUS_Q2, GroupTag

logger = logging.getLogger(__name__)


def _recorder(ctx: SuiteContext, name: str) -> CheckRecorder:
    return CheckRecorder(name, max_witnesses=ctx.option("max_witnesses"))


def expected_loop_order(q: int) -> int:
    return q**3 * (q**4 - 1) // gcd(2, q - 1)


@register_check("loop-order")
def check_loop_order(ctx: SuiteContext) -> CheckReport:
    t = ctx.loop
    rec = _recorder(ctx, "loop-order")
    expected = expected_loop_order(ctx.q)
    rec.record(len(t) == expected, f"{len(t)} loop elements, expected {expected}")
    rec.record(t.sphere_order == len(ctx.sphere), f"sphere has {len(ctx.sphere)} elements, table implies {t.sphere_order}")
    if ctx.q == 2:
        rec.record(len(t) == LOOP_ORDER_Q2, f"{len(t)} != {LOOP_ORDER_Q2}")
    rec.record(t.codes[0] == t.batch.encode(t.batch.identity()), "identity is not listed first")
    rec.note("loop_order", len(t))
    rec.note("sphere_order", t.sphere_order)
    return rec.report()


@register_check("loop-closure")
def check_loop_closure(ctx: SuiteContext) -> CheckReport:
    """
    Products stay in the loop, e is a two-sided identity and every element has
    a two-sided inverse with the inverse property x⁻¹(xy) = y.
    """
    t = ctx.loop
    n = len(t)
    rec = _recorder(ctx, "loop-closure")
    if t.table is not None:
        i = np.repeat(np.arange(n), n)
        j = np.tile(np.arange(n), n)
        table = t.table
        rows_are_perms = np.all(np.sort(table, axis=1) == np.arange(n), axis=1)
        cols_are_perms = np.all(np.sort(table, axis=0) == np.arange(n)[:, None], axis=0)
        rec.record_batch(rows_are_perms & cols_are_perms, lambda k: f"row or column {t.rep(k)} is not a permutation")
    else:
        rng = ctx.rng("loop-closure")
        size = ctx.budget()
        i = rng.integers(0, n, size=size)
        j = rng.integers(0, n, size=size)
        try:
            t.mul_many(i, j)
            rec.add_cases(size)
        except KeyError as exc:
            rec.fail(f"product left the loop: {exc}")
            return rec.report()
    everything = np.arange(n)
    rec.record(np.array_equal(t.mul_many(0, everything), everything), "e is not a left identity")
    rec.record(np.array_equal(t.mul_many(everything, 0), everything), "e is not a right identity")
    inv = t.inverses()
    rec.record_batch(t.mul_many(everything, inv) == 0, lambda k: f"x x^-1 != e for {t.rep(k)}")
    rec.record_batch(t.mul_many(inv, everything) == 0, lambda k: f"x^-1 x != e for {t.rep(k)}")
    left = t.mul_many(inv[i], t.mul_many(i, j))
    rec.record_batch(left == j, lambda k: f"inverse property fails at ({t.rep(int(i[k]))}, {t.rep(int(j[k]))})")
    return rec.report()


@register_check("canonical-representatives")
def check_canonical_representatives(ctx: SuiteContext) -> CheckReport:
    """Each table entry is the smaller code of a class {x, −x} of norm-one elements."""
    t = ctx.loop
    b = t.batch
    rec = _recorder(ctx, "canonical-representatives")
    sphere = ctx.sphere
    in_sphere = np.isin(t.codes, sphere)
    rec.record_batch(in_sphere, lambda k: f"{t.rep(k)} does not have norm one")
    if t.is_quotient:
        negated = b.encode(b.neg(t.coords))
        rec.record_batch(t.codes < negated, lambda k: f"{t.rep(k)} is not the smaller representative")
        rec.record_batch(np.isin(negated, sphere), lambda k: f"-{t.rep(k)} does not have norm one")
        classes = np.unique(t.canonical_codes(b.decode(sphere)))
        rec.record(len(sphere) == 2 * len(t), f"{len(sphere)} norm-one elements for {len(t)} classes")
    else:
        classes = np.unique(sphere)
    rec.record(np.array_equal(classes, np.sort(t.codes)), "table codes differ from the classes of the sphere")
    return rec.report()


@register_check("sign-independence")
def check_sign_independence(ctx: SuiteContext) -> CheckReport:
    """The class of xy does not depend on the representatives chosen for x and y."""
    t = ctx.loop
    b = t.batch
    rec = _recorder(ctx, "sign-independence")
    if not t.is_quotient:
        rec.note("skipped", "-x = x in characteristic 2")
        return rec.report()
    x = b.random_units(ctx.rng("sign-independence-x"), ctx.budget())
    y = b.random_units(ctx.rng("sign-independence-y"), ctx.budget())
    reference = t.canonical_codes(b.mul(x, y))
    for left, right in ((b.neg(x), y), (x, b.neg(y)), (b.neg(x), b.neg(y))):
        rec.record_batch(
            t.canonical_codes(b.mul(left, right)) == reference,
            lambda k: f"x={format_coords(x[k])}, y={format_coords(y[k])}",
        )
    return rec.report()


@register_check("order-census")
def check_order_census(ctx: SuiteContext) -> CheckReport:
    t = ctx.loop
    rec = _recorder(ctx, "order-census")
    counts = census(t)
    rec.record(sum(counts.values()) == len(t), "census does not cover the loop")
    rec.record(counts.get(1) == 1, "identity is not the only element of order one")
    if ctx.q == 2:
        rec.record(counts == ORDER_CENSUS_Q2, f"census {counts} != {ORDER_CENSUS_Q2}")
    for order, count in counts.items():
        rec.note(f"order_{order}", count)
    return rec.report()


# Involutions over GF(2).


@register_check("involution-shape")
def check_involution_shape(ctx: SuiteContext) -> CheckReport:
    """The involutions are exactly the elements other than e with a = b."""
    ctx.require_main_order("the involution shape")
    t = ctx.loop
    rec = _recorder(ctx, "involution-shape")
    shaped = (t.coords[:, 0] == t.coords[:, 7]) & (np.arange(len(t)) != 0)
    rec.record_batch(shaped == (t.orders() == 2), lambda k: f"{t.rep(k)} has order {t.order(k)}")
    return rec.report()


@register_check("involution-pairs")
def check_involution_pairs(ctx: SuiteContext) -> CheckReport:
    """
    The closed-form V4/S3 rule agrees with the generated subgroup and with |xy|;
    commutators vanish on V4 pairs and have order three on S3 pairs.
    """
    ctx.require_main_order("the involution pairs")
    t = ctx.loop
    rec = _recorder(ctx, "involution-pairs")
    invs = involutions(t)
    tally = {GroupTag.V4: 0, GroupTag.S3: 0}
    for pos, x in enumerate(invs):
        for y in invs[pos + 1 :]:
            tag = involution_pair_classify(t, x, y)
            tally[tag] += 1
            _, generated = subgroup_generate(t, (x, y))
            expected_order = 2 if tag is GroupTag.V4 else 3
            c = commutator(t, x, y)
            ok = generated is tag and t.order(t.mul(x, y)) == expected_order
            ok = ok and (c == 0 if tag is GroupTag.V4 else t.order(c) == 3)
            rec.record(ok, lambda: f"({t.rep(x)}, {t.rep(y)}) classified {tag.value}, generates {generated.value}")

    idx = ctx.named_index
    rec.record(involution_pair_classify(t, idx["x0"], idx["x1"]) is GroupTag.V4, "(x0, x1) should generate V4")
    rec.record(involution_pair_classify(t, idx["x1"], idx["u2"]) is GroupTag.S3, "(x1, u2) should generate S3")
    rec.note("v4_pairs", tally[GroupTag.V4])
    rec.note("s3_pairs", tally[GroupTag.S3])
    return rec.report()


@register_check("s3-membership")
def check_s3_membership(ctx: SuiteContext) -> CheckReport:
    """Every involution lies in an S3 and every S3 has an involution with a = 0."""
    props = s3_membership_props(ctx.loop)
    rec = _recorder(ctx, "s3-membership")
    for x in props.unpaired:
        rec.fail(f"{ctx.loop.rep(x)} lies in no S3")
    for group in props.without_zero_diagonal:
        rec.fail(f"S3 {[str(ctx.loop.rep(i)) for i in group]} has no involution with a = 0")
    rec.add_cases(len(props.partners) + props.s3_count)
    rec.note("s3_count", props.s3_count)
    return rec.report()


@register_check("conjugation-permutes-involutions")
def check_conjugation_permutes_involutions(ctx: SuiteContext) -> CheckReport:
    ctx.require_main_order("the S3 conjugation property")
    t = ctx.loop
    rec = _recorder(ctx, "conjugation-permutes-involutions")
    for group in s3_subgroups(t):
        rec.record(conjugation_cycles_involutions(t, group), lambda: f"S3 {[str(t.rep(i)) for i in group]}")
    return rec.report()


@register_check("diassociativity")
def check_diassociativity(ctx: SuiteContext) -> CheckReport:
    """Any two elements generate an associative subloop."""
    ctx.require_main_order("the diassociativity check")
    t = ctx.loop
    table = t.table
    rec = _recorder(ctx, "diassociativity")
    rng = ctx.rng("diassociativity")
    pairs = rng.integers(0, len(t), size=(ctx.budget("diassociativity_pairs"), 2))
    largest = 0
    for x, y in pairs:
        members = np.array(sorted(generate(t, (int(x), int(y)))))
        largest = max(largest, len(members))
        a, b, c = np.meshgrid(members, members, members, indexing="ij")
        associative = np.all(table[table[a, b], c] == table[a, table[b, c]])
        rec.record(bool(associative), lambda: f"<{t.rep(int(x))}, {t.rep(int(y))}> is not associative")
    rec.note("largest_subgroup", largest)
    return rec.report()
