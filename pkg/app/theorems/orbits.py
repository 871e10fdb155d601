"""Orbits of Aut(M*(2)) on the copies of C2 and V4, and the named conjugation identities."""

import logging
from typing import Dict, List, Sequence, Tuple

from app.autos.closure import act_on_set, orbit_partition, orbit_with_words
from app.autos.constructions import conjugation
from app.autos.permutation import LoopAutomorphism
from app.loops.subgroups import generate, involutions, v4_subgroups
from app.loops.table import LoopTable
from app.theorems.context import SuiteContext
from app.theorems.registry import register_check
from app.theorems.report import CheckRecorder, CheckReport, OrbitSummary
from app.utils.errors import PreconditionError

logger = logging.getLogger(__name__)

C2 = "C2"
V4 = "V4"
STRUCTURES = (C2, V4)

# Named subgroups preferred as orbit representatives.
PREFERRED_V4 = (("x0", "u1"), ("x0", "u2"))


def _require_q2(t: LoopTable) -> None:
    if t.q != 2:
        raise PreconditionError("orbits are computed on M*(2)")


def orbit_c2(t: LoopTable, gens: Sequence[LoopAutomorphism]) -> List[List[int]]:
    """Orbits on the involutions (the copies of C2)."""
    _require_q2(t)
    return orbit_partition(involutions(t), gens)


def orbit_v4(t: LoopTable, gens: Sequence[LoopAutomorphism]) -> List[List[Tuple[int, ...]]]:
    """Orbits on the copies of V4, each copy given by its sorted element indices."""
    _require_q2(t)
    return orbit_partition(v4_subgroups(t), gens, act_on_set)


def _v4_text(t: LoopTable, members: Tuple[int, ...]) -> str:
    x, y = sorted(i for i in members if i != 0)[:2]
    return f"<{t.rep(x)}, {t.rep(y)}>"


def summarize_orbits(t: LoopTable, structure: str, orbits: List[list], named_index: Dict[str, int]) -> OrbitSummary:
    """Orbit sizes and one representative per orbit, preferring the named elements."""
    representatives = []
    if structure == C2:
        x0 = named_index["x0"]
        for orbit in orbits:
            representatives.append(str(t.rep(x0 if x0 in orbit else orbit[0])))
    else:
        preferred = [
            tuple(sorted(generate(t, (named_index[a], named_index[b])))) for a, b in PREFERRED_V4
        ]
        for orbit in orbits:
            pick = next((copy for copy in preferred if copy in orbit), orbit[0])
            representatives.append(_v4_text(t, pick))
    return OrbitSummary(
        structure=structure,
        count=len(orbits),
        sizes=[len(orbit) for orbit in orbits],
        representatives=representatives,
    )


def compute_orbits(t: LoopTable, gens: Sequence[LoopAutomorphism], structure: str, named_index: Dict[str, int]):
    """
    Raises:
        ValueError: unknown structure
    """
    if structure == C2:
        orbits = orbit_c2(t, gens)
    elif structure == V4:
        orbits = orbit_v4(t, gens)
    else:
        raise ValueError(f"unknown structure {structure!r}; choose from {', '.join(STRUCTURES)}")
    summary = summarize_orbits(t, structure, orbits, named_index)
    logger.info(f"{structure}: {summary.count} orbits of sizes {summary.sizes}")
    return orbits, summary


def _orbits_are_invariant(orbits: List[list], gens: Sequence[LoopAutomorphism], act) -> bool:
    blocks = {frozenset(orbit) for orbit in orbits}
    return all(frozenset(act(g, p) for p in orbit) in blocks for g in gens for orbit in orbits)


def named_maps(t: LoopTable, named_index: Dict[str, int]) -> Dict[str, LoopAutomorphism]:
    """T_y, f1 = T_{v2⁻¹}∘T_{v1} and f2 = T_{v1⁻¹}∘T_{v2}."""
    v1, v2 = named_index["v1"], named_index["v2"]
    t_v1, t_v2 = conjugation(t, v1), conjugation(t, v2)
    return {
        "T_y": conjugation(t, named_index["y"]),
        "f1": conjugation(t, t.inverse(v2)).compose(t_v1),
        "f2": conjugation(t, t.inverse(v1)).compose(t_v2),
    }


@register_check("named-identities")
def check_named_identities(ctx: SuiteContext) -> CheckReport:
    """The explicit conjugations carrying x1 to x0 and the u_i onto each other."""
    t = ctx.loop
    idx = ctx.named_index
    maps = named_maps(t, idx)
    sigma = next(g for g in ctx.generators if g.label == "sigma")
    rec = CheckRecorder("named-identities", max_witnesses=ctx.option("max_witnesses"))
    expectations = (
        ("T_y", "x1", idx["x0"]),
        ("f1", "x0", idx["x0"]),
        ("f2", "x0", idx["x0"]),
        ("f1", "u4", idx["u1"]),
        ("f1", "u3", idx["u2"]),
        ("f1", "u5", idx["u3"]),
        ("f2", "u5", sigma(idx["u0"])),
    )
    for name, source, target in expectations:
        image = maps[name](idx[source])
        rec.record(image == target, lambda: f"{name}({source}) = {t.rep(image)}, expected {t.rep(target)}")
    return rec.report()


@register_check("orbit-c2")
def check_orbit_c2(ctx: SuiteContext) -> CheckReport:
    t = ctx.loop
    gens = ctx.generators
    rec = CheckRecorder("orbit-c2", max_witnesses=ctx.option("max_witnesses"))
    orbits, summary = compute_orbits(t, gens, C2, ctx.named_index)
    rec.record(summary.count == 1 and summary.sizes == [63], f"orbits of sizes {summary.sizes}")
    rec.record(_orbits_are_invariant(orbits, gens, lambda g, p: g(p)), "orbits are not invariant")

    x0, x1 = ctx.named_index["x0"], ctx.named_index["x1"]
    words = orbit_with_words(x0, gens)
    word = words.get(x1)
    if word is None:
        rec.fail("x1 is not reachable from x0")
    else:
        rec.record(ctx.group.evaluate(word)(x0) == x1, f"word {word} does not carry x0 to x1")
        rec.note("word_x0_to_x1", list(word))
    rec.note("orbit_sizes", summary.sizes)
    return rec.report()


@register_check("orbit-v4")
def check_orbit_v4(ctx: SuiteContext) -> CheckReport:
    t = ctx.loop
    gens = ctx.generators
    rec = CheckRecorder("orbit-v4", max_witnesses=ctx.option("max_witnesses"))
    orbits, summary = compute_orbits(t, gens, V4, ctx.named_index)
    rec.record(summary.count == 2, f"{summary.count} orbits, expected 2")
    rec.record(_orbits_are_invariant(orbits, gens, act_on_set), "orbits are not invariant")
    idx = ctx.named_index
    preferred = [tuple(sorted(generate(t, (idx[a], idx[b])))) for a, b in PREFERRED_V4]
    homes = [next((k for k, orbit in enumerate(orbits) if copy in orbit), None) for copy in preferred]
    rec.record(None not in homes and homes[0] != homes[1], f"<x0,u1> and <x0,u2> lie in orbits {homes}")
    rec.note("orbit_sizes", summary.sizes)
    rec.note("copies", sum(summary.sizes))
    return rec.report()


def orbit_summaries(ctx: SuiteContext) -> Dict[str, OrbitSummary]:
    """Both orbit summaries for the certificate."""
    return {s: compute_orbits(ctx.loop, ctx.generators, s, ctx.named_index)[1] for s in STRUCTURES}

