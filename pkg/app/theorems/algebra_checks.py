"""
Checks on the field and the algebra itself.

Pairs and triples are streamed in chunks of at most CHUNK instances so the
exhaustive GF(3) runs (43 million pairs) stay within a few hundred megabytes.
"""

import logging
from typing import Callable, Iterator, Tuple

import numpy as np

from app.algebra.cayley import MAX_SPHERE_ORDER, get_backend
from app.algebra.decompose import decompose_norm_one, is_valid_decomposition
from app.algebra.element_text import format_coords
from app.algebra.gf import fe_inv, fe_mul
from app.algebra.zorn import Octonion, oct_inverse, oct_minimal_eq_residual, oct_order, order_predicates
from app.theorems.context import SuiteContext
from app.theorems.registry import register_check
from app.theorems.report import CheckRecorder, CheckReport
from app.utils.constants import OrderTag
from app.utils.errors import FieldDivisionError, InternalConsistencyError, SingularElementError

logger = logging.getLogger(__name__)

CHUNK = 1 << 18

Pairs = Iterator[Tuple[np.ndarray, np.ndarray]]


def _recorder(ctx: SuiteContext, name: str) -> CheckRecorder:
    return CheckRecorder(name, max_witnesses=ctx.option("max_witnesses"))


def _grid_pairs(elements: np.ndarray) -> Pairs:
    n = len(elements)
    rows = max(1, CHUNK // n)
    for start in range(0, n, rows):
        block = elements[start : start + rows]
        yield np.repeat(block, n, axis=0), np.tile(elements, (len(block), 1))


def _sampled_pairs(total: int, draw: Callable[[int], np.ndarray]) -> Pairs:
    for start in range(0, total, CHUNK):
        m = min(CHUNK, total - start)
        yield draw(m), draw(m)


def element_pairs(ctx: SuiteContext, stream: str, key: str, exhaustive: bool) -> Pairs:
    """All ordered pairs of algebra elements, or a seeded sample of them."""
    if exhaustive:
        return _grid_pairs(ctx.batch.all_elements())
    rng = ctx.rng(stream)
    return _sampled_pairs(ctx.budget(key), lambda m: ctx.batch.random(rng, m))


def unit_pairs(ctx: SuiteContext, stream: str, key: str, exhaustive: bool) -> Pairs:
    """All ordered pairs of norm-one elements, or a seeded sample of them."""
    if exhaustive:
        return _grid_pairs(ctx.batch.decode(ctx.sphere))
    rng = ctx.rng(stream)
    return _sampled_pairs(ctx.budget(key), lambda m: ctx.batch.random_units(rng, m))


def algebra_elements(ctx: SuiteContext, stream: str, key: str, exhaustive: bool) -> np.ndarray:
    if exhaustive:
        return ctx.batch.all_elements()
    return ctx.batch.random(ctx.rng(stream), ctx.budget(key))


def unit_elements(ctx: SuiteContext, stream: str, key: str, exhaustive: bool) -> np.ndarray:
    if exhaustive:
        return ctx.batch.decode(ctx.sphere)
    return ctx.batch.random_units(ctx.rng(stream), ctx.budget(key))


def pair_text(x: np.ndarray, y: np.ndarray) -> Callable[[int], str]:
    return lambda k: f"x={format_coords(x[k])}, y={format_coords(y[k])}"


def rows_equal(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.all(x == y, axis=-1)


def _mode(exhaustive: bool) -> str:
    return "exhaustive" if exhaustive else "sampled"


# Field.


@register_check("field-axioms")
def check_field_axioms(ctx: SuiteContext) -> CheckReport:
    rec = _recorder(ctx, "field-axioms")
    try:
        ctx.field.audit()
    except InternalConsistencyError as exc:
        rec.fail(str(exc))
    rec.add_cases(ctx.q**3)
    rec.note("polynomial", str(ctx.field.polynomial or "prime field"))
    return rec.report()


@register_check("field-inverses")
def check_field_inverses(ctx: SuiteContext) -> CheckReport:
    f = ctx.field
    rec = _recorder(ctx, "field-inverses")
    for x in range(1, ctx.q):
        inv = f.inv(x)
        rec.record(f.mul(x, inv) == 1 and f.inv(inv) == x, f"x={x}, inverse={inv}")
        element = f.element(x)
        rec.record(fe_mul(element, fe_inv(element)) == f.one, f"element {x}")
    try:
        f.inv(0)
        rec.fail("0 has an inverse")
    except FieldDivisionError:
        rec.add_cases(1)
    return rec.report()


@register_check("frobenius")
def check_frobenius(ctx: SuiteContext) -> CheckReport:
    """x -> x^p is a field automorphism fixing exactly the prime field."""
    f = ctx.field
    rec = _recorder(ctx, "frobenius")
    frob = f.frobenius_table()
    rec.record(sorted(frob.tolist()) == list(range(ctx.q)), "not a bijection")
    for name, table in (("additive", f.add_table), ("multiplicative", f.mul_table)):
        ok = frob[table] == table[frob[:, None], frob[None, :]]
        rec.record_batch(ok, lambda k, name=name: f"{name} at ({k // ctx.q}, {k % ctx.q})")
    fixed = int(np.sum(frob == np.arange(ctx.q)))
    rec.record(fixed == f.p, f"{fixed} fixed points, expected {f.p}")
    logs_ok = [f.exp_table[f.log_table[x]] == x for x in range(1, ctx.q)]
    rec.record_batch(logs_ok, lambda k: f"exp(log({k + 1}))")
    return rec.report()


# Composition.


@register_check("composition-law")
def check_composition_law(ctx: SuiteContext) -> CheckReport:
    b = ctx.batch
    rec = _recorder(ctx, "composition-law")
    for x, y in element_pairs(ctx, "composition-law", "composition_samples", ctx.exhaustive):
        ok = b.norm(b.mul(x, y)) == b.M[b.norm(x), b.norm(y)]
        rec.record_batch(ok, pair_text(x, y))
    rec.note("mode", _mode(ctx.exhaustive))
    return rec.report()


@register_check("bilinear-form")
def check_bilinear_form(ctx: SuiteContext) -> CheckReport:
    """Closed-form polar form against N(x+y) − N(x) − N(y), plus symmetry."""
    b = ctx.batch
    exhaustive = ctx.q == 2
    rec = _recorder(ctx, "bilinear-form")
    for x, y in element_pairs(ctx, "bilinear-form", "samples", exhaustive):
        form = b.bilinear(x, y)
        polar = b.S[b.S[b.norm(b.add(x, y)), b.norm(x)], b.norm(y)]
        rec.record_batch((form == polar) & (form == b.bilinear(y, x)), pair_text(x, y))
    rec.note("mode", _mode(exhaustive))
    return rec.report()


@register_check("inverse-formula")
def check_inverse_formula(ctx: SuiteContext) -> CheckReport:
    b = ctx.batch
    rec = _recorder(ctx, "inverse-formula")
    x = unit_elements(ctx, "inverse-formula", "samples", ctx.exhaustive)
    inv = b.inverse(x)
    e = b.identity((len(x),))
    ok = rows_equal(b.mul(x, inv), e) & rows_equal(b.mul(inv, x), e)
    rec.record_batch(ok, lambda k: format_coords(x[k]))

    for row in x[:64]:
        element = Octonion(ctx.field, tuple(int(c) for c in row))
        rec.record(oct_inverse(element) * element == Octonion.identity(ctx.field), str(element))
    try:
        oct_inverse(Octonion.zero(ctx.field))
        rec.fail("zero element inverted")
    except SingularElementError:
        rec.add_cases(1)
    return rec.report()


# Moufang identities.


def _moufang_table(ctx: SuiteContext, rec: CheckRecorder) -> None:
    """All 256^3 triples at q = 2 through the algebra's code table."""
    b = ctx.batch
    T = b.algebra_table()
    n = len(T)
    Y, Z = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    YZ = T[Y, Z]
    for x in range(n):
        XY = T[x, Y]
        first = T[XY, T[Z, x]] == T[x, T[YZ, x]]
        second = T[x, T[Y, T[x, Z]]] == T[T[XY, x], Z]
        third = T[x, T[Y, T[Z, Y]]] == T[T[XY, Z], Y]
        for ok in (first, second, third):
            rec.record_batch(
                ok,
                lambda k, x=x: "x={}, y={}, z={}".format(
                    *(format_coords(c) for c in b.decode(np.array([x, k // n, k % n])))
                ),
            )


@register_check("moufang-identities")
def check_moufang_identities(ctx: SuiteContext) -> CheckReport:
    """
    (xy)(zx) = x((yz)x), x(y(xz)) = ((xy)x)z and x(y(zy)) = ((xy)z)y.

    Exhaustive at q = 2; every other field is sampled.
    """
    b = ctx.batch
    rec = _recorder(ctx, "moufang-identities")
    if ctx.q == 2:
        _moufang_table(ctx, rec)
        rec.note("mode", "exhaustive")
        return rec.report()

    rng = ctx.rng("moufang-identities")
    total = ctx.budget("moufang_samples")
    for start in range(0, total, CHUNK):
        m = min(CHUNK, total - start)
        x, y, z = b.random(rng, m), b.random(rng, m), b.random(rng, m)
        xy = b.mul(x, y)
        first = rows_equal(b.mul(xy, b.mul(z, x)), b.mul(x, b.mul(b.mul(y, z), x)))
        second = rows_equal(b.mul(x, b.mul(y, b.mul(x, z))), b.mul(b.mul(xy, x), z))
        third = rows_equal(b.mul(x, b.mul(y, b.mul(z, y))), b.mul(b.mul(xy, z), y))
        witness = lambda k: f"x={format_coords(x[k])}, y={format_coords(y[k])}, z={format_coords(z[k])}"  # noqa: E731
        for ok in (first, second, third):
            rec.record_batch(ok, witness)
    rec.note("mode", "sampled")
    return rec.report()


# Minimal equation and quotients.


@register_check("minimal-equation")
def check_minimal_equation(ctx: SuiteContext) -> CheckReport:
    """x² − ⟨x,e⟩x + N(x)e = 0."""
    b = ctx.batch
    rec = _recorder(ctx, "minimal-equation")
    x = algebra_elements(ctx, "minimal-equation", "samples", ctx.exhaustive)
    expected = b.S[b.scale(b.trace(x), x), b.scale(b.norm(x), b.identity((len(x),)))]
    rec.record_batch(rows_equal(b.mul(x, x), expected), lambda k: format_coords(x[k]))

    zero = Octonion.zero(ctx.field)
    for row in x[:64]:
        element = Octonion(ctx.field, tuple(int(c) for c in row))
        rec.record(oct_minimal_eq_residual(element) == zero, str(element))
    rec.note("mode", _mode(ctx.exhaustive))
    return rec.report()


@register_check("special-bilinear")
def check_special_bilinear(ctx: SuiteContext) -> CheckReport:
    """⟨xy, y⟩ = ⟨x, e⟩N(y)."""
    b = ctx.batch
    exhaustive = ctx.q == 2
    rec = _recorder(ctx, "special-bilinear")
    for x, y in element_pairs(ctx, "special-bilinear", "samples", exhaustive):
        ok = b.bilinear(b.mul(x, y), y) == b.M[b.trace(x), b.norm(y)]
        rec.record_batch(ok, pair_text(x, y))
    rec.note("mode", _mode(exhaustive))
    return rec.report()


@register_check("minimal-quotient")
def check_minimal_quotient(ctx: SuiteContext) -> CheckReport:
    """w = xy⁻¹ satisfies w² − ⟨x,y⟩N(y)⁻¹w + N(x)N(y)⁻¹e = 0 whenever N(y) ≠ 0."""
    b = ctx.batch
    exhaustive = ctx.q == 2
    rec = _recorder(ctx, "minimal-quotient")
    for x, y in element_pairs(ctx, "minimal-quotient", "samples", exhaustive):
        keep = b.norm(y) != 0
        x, y = x[keep], y[keep]
        w = b.mul(x, b.inverse(y))
        n_inv = ctx.field.inv_table[b.norm(y)]
        t = b.M[b.bilinear(x, y), n_inv]
        n = b.M[b.norm(x), n_inv]
        expected = b.S[b.scale(t, w), b.scale(n, b.identity((len(w),)))]
        rec.record_batch(rows_equal(b.mul(w, w), expected), pair_text(x, y))
    rec.note("mode", _mode(exhaustive))
    return rec.report()


@register_check("perp-square")
def check_perp_square(ctx: SuiteContext) -> CheckReport:
    """For norm-one x, y: (xy⁻¹)² = −e exactly when ⟨x,y⟩ = 0."""
    b = ctx.batch
    rec = _recorder(ctx, "perp-square")
    hits = 0
    for x, y in unit_pairs(ctx, "perp-square", "samples", ctx.exhaustive):
        w = b.mul(x, b.inverse(y))
        squares_to_minus_e = rows_equal(b.mul(w, w), b.neg(b.identity((len(w),))))
        orthogonal = b.bilinear(x, y) == 0
        rec.record_batch(squares_to_minus_e == orthogonal, pair_text(x, y))
        hits += int(np.sum(orthogonal))
    rec.note("orthogonal_pairs", hits)
    rec.note("mode", _mode(ctx.exhaustive))
    return rec.report()


# Multiplication versus addition.


def _distinct(x: np.ndarray, y: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    keep = ~rows_equal(x, y)
    return x[keep], y[keep]


@register_check("norm-one-equivalence")
def check_norm_one_equivalence(ctx: SuiteContext) -> CheckReport:
    """
    For norm-one x ≠ y, with w = xy⁻¹, the following agree:
    w has order 3, w² + w + e = 0, ⟨x,y⟩ = −1, N(x+y) = 1.
    """
    b = ctx.batch
    minus_one = ctx.field.neg(1)
    rec = _recorder(ctx, "norm-one-equivalence")
    hits = 0
    for x, y in unit_pairs(ctx, "norm-one-equivalence", "samples", ctx.exhaustive):
        x, y = _distinct(x, y)
        w = b.mul(x, b.inverse(y))
        e = b.identity((len(w),))
        conditions = np.stack(
            [
                rows_equal(b.power(w, 3), e),
                np.all(b.add(b.add(b.mul(w, w), w), e) == 0, axis=-1),
                b.bilinear(x, y) == minus_one,
                b.norm(b.add(x, y)) == 1,
            ]
        )
        rec.record_batch(np.all(conditions == conditions[0], axis=0), pair_text(x, y))
        hits += int(np.sum(conditions[0]))
    rec.note("pairs_with_unit_sum", hits)
    rec.note("mode", _mode(ctx.exhaustive))
    return rec.report()


@register_check("mult-to-add")
def check_mult_to_add(ctx: SuiteContext) -> CheckReport:
    """For norm-one x ≠ y: N(x+y) = 1 exactly when x + y = −(xy⁻¹)x."""
    b = ctx.batch
    rec = _recorder(ctx, "mult-to-add")
    for x, y in unit_pairs(ctx, "mult-to-add", "samples", ctx.exhaustive):
        x, y = _distinct(x, y)
        total = b.add(x, y)
        unit_sum = b.norm(total) == 1
        product_form = rows_equal(total, b.neg(b.mul(b.mul(x, b.inverse(y)), x)))
        rec.record_batch(unit_sum == product_form, pair_text(x, y))
    rec.note("mode", _mode(ctx.exhaustive))
    return rec.report()


# Order criteria.


def _direct_tags(ctx: SuiteContext, x: np.ndarray) -> np.ndarray:
    """Boolean columns sq_id, sq_neg, cube_id, cube_neg from actual powers."""
    b = ctx.batch
    e = b.identity((len(x),))
    minus_e = b.neg(e)
    square = b.mul(x, x)
    cube = b.mul(square, x)
    return np.stack(
        [rows_equal(square, e), rows_equal(square, minus_e), rows_equal(cube, e), rows_equal(cube, minus_e)],
        axis=-1,
    )


_TAG_COLUMNS = (OrderTag.SQ_ID, OrderTag.SQ_NEG, OrderTag.CUBE_ID, OrderTag.CUBE_NEG)


@register_check("order-predicates")
def check_order_predicates(ctx: SuiteContext) -> CheckReport:
    rec = _recorder(ctx, "order-predicates")
    x = unit_elements(ctx, "order-predicates", "scalar_samples", ctx.exhaustive)
    direct = _direct_tags(ctx, x)
    for row, flags in zip(x, direct):
        element = Octonion(ctx.field, tuple(int(c) for c in row))
        expected = frozenset(tag for tag, hit in zip(_TAG_COLUMNS, flags) if hit)
        got = order_predicates(element)
        rec.record(
            got == expected,
            lambda: f"{element}: {sorted(t.value for t in got)} vs powers {sorted(t.value for t in expected)}",
        )
    rec.note("mode", _mode(ctx.exhaustive))
    return rec.report()


def _order_allowed(tag: OrderTag, order: int, even: bool) -> bool:
    if tag is OrderTag.SQ_ID:
        return order in (1, 2)
    if tag is OrderTag.SQ_NEG:
        return order in ((1, 2) if even else (4,))
    if tag is OrderTag.CUBE_ID:
        return order == 3
    if tag is OrderTag.CUBE_NEG:
        return order == 6
    return order > 3 and (even or order not in (4, 6))


@register_check("order-classify")
def check_order_classify(ctx: SuiteContext) -> CheckReport:
    """The classifier's tag agrees with the element's multiplicative order."""
    rec = _recorder(ctx, "order-classify")
    x = unit_elements(ctx, "order-classify", "scalar_samples", ctx.exhaustive)
    counts = {tag: 0 for tag in OrderTag}
    even = ctx.field.is_even
    for row in x:
        element = Octonion(ctx.field, tuple(int(c) for c in row))
        tags = order_predicates(element)
        tag = next((t for t in _TAG_COLUMNS if t in tags), OrderTag.OTHER)
        order = oct_order(element)
        counts[tag] += 1
        rec.record(_order_allowed(tag, order, even), lambda: f"{element}: {tag.value} but order {order}")
    for tag, count in counts.items():
        rec.note(f"count_{tag.value}", count)
    return rec.report()


# Sums of two norm-one elements.


@register_check("sums-of-two")
def check_sums_of_two(ctx: SuiteContext) -> CheckReport:
    f = ctx.field
    rec = _recorder(ctx, "sums-of-two")
    x = algebra_elements(ctx, "sums-of-two", "scalar_samples", ctx.exhaustive)
    diagonal_cases = 0
    for row in x:
        element = Octonion(f, tuple(int(c) for c in row))
        u, v = decompose_norm_one(element)
        rec.record(is_valid_decomposition(element, u, v), lambda: f"{element} = {u} + {v}")
        if element.is_diagonal:
            diagonal_cases += 1
            expected = Octonion.from_parts(f, row[0], (1, 0, 0), (f.neg(1), 0, 0), 0)
            rec.record(u == expected, lambda: f"diagonal split of {element} gave {u}")
    rec.note("diagonal_cases", diagonal_cases)
    rec.note("mode", _mode(ctx.exhaustive))
    return rec.report()


# The Cayley construction.


@register_check("cayley-structure")
def check_cayley_structure(ctx: SuiteContext) -> CheckReport:
    """e0 is the identity, e_i² = −e0 and distinct imaginary units anticommute."""
    backend = get_backend(ctx.q)
    rec = _recorder(ctx, "cayley-structure")
    e0 = backend.identity
    minus_e0 = backend.neg(e0)
    for i in range(8):
        ei = backend.basis(i)
        rec.record(backend.mul(e0, ei) == ei and backend.mul(ei, e0) == ei, f"e0 e{i}")
        rec.record(backend.norm(ei) == 1, f"N(e{i})")
        if i == 0:
            continue
        rec.record(backend.mul(ei, ei) == minus_e0, f"e{i}^2")
        for j in range(1, 8):
            if j == i:
                continue
            ej = backend.basis(j)
            rec.record(backend.mul(ei, ej) == backend.neg(backend.mul(ej, ei)), f"e{i} e{j}")
            left = backend.mul(backend.mul(ei, ei), ej)
            rec.record(left == backend.mul(ei, backend.mul(ei, ej)), f"(e{i} e{i}) e{j}")
    return rec.report()


@register_check("cayley-composition")
def check_cayley_composition(ctx: SuiteContext) -> CheckReport:
    backend = get_backend(ctx.q)
    M = ctx.field.mul_table
    rec = _recorder(ctx, "cayley-composition")
    rng = ctx.rng("cayley-composition")
    for u, v in _sampled_pairs(ctx.budget("composition_samples"), lambda m: ctx.batch.random(rng, m)):
        ok = backend.norm_batch(backend.mul_batch(u, v)) == M[backend.norm_batch(u), backend.norm_batch(v)]
        rec.record_batch(ok, lambda k: f"u={tuple(u[k])}, v={tuple(v[k])}")
    return rec.report()


@register_check("cayley-sphere")
def check_cayley_sphere(ctx: SuiteContext) -> CheckReport:
    """Both constructions have q³(q⁴−1) elements of norm one."""
    q = ctx.q
    rec = _recorder(ctx, "cayley-sphere")
    expected = q**3 * (q**4 - 1)
    if q > MAX_SPHERE_ORDER:
        rec.note("skipped", f"sphere enumeration is limited to q <= {MAX_SPHERE_ORDER}")
        return rec.report()
    size = len(get_backend(q).unit_sphere())
    rec.record(size == expected, f"Cayley sphere has {size} elements, expected {expected}")
    rec.record(len(ctx.sphere) == expected, f"Zorn sphere has {len(ctx.sphere)} elements")
    rec.note("sphere_order", size)
    return rec.report()
