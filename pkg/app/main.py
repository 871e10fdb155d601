"""
ZornLab command-line entry point.

Usage:
    python -m app.main enumerate --q 2
    python -m app.main verify --q 2 --suite all --json cert.json
    python -m app.main decompose --q 2 "1;(0,0,0);(0,0,0);0"
    python -m app.main aut-group --q 2 --emit aut.json
    python -m app.main orbits --q 2 --structure V4

Exit codes: 0 pass, 1 check failure or internal inconsistency, 2 usage or scope error.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np

from app import __version__
from app.algebra.decompose import decompose_norm_one, is_valid_decomposition
from app.algebra.element_text import format_element, parse_element
from app.algebra.gf import get_field
from app.algebra.zorn import Octonion
from app.loops.subgroups import census
from app.theorems.certificate import build_certificate, load_generators, save_generators, write_certificate
from app.theorems.context import SuiteContext
from app.theorems.main_theorem import main_theorem_result
from app.theorems.orbits import STRUCTURES, compute_orbits, orbit_summaries
from app.theorems.registry import SuiteRegistry, catalogue_defaults
from app.theorems.report import CheckReport
from app.theorems.runner import run_suite
from app.utils.constants import MAIN_THEOREM_ORDER
from app.utils.errors import (
    ElementParseError,
    InternalConsistencyError,
    MissingGroupDataError,
    PreconditionError,
    UnknownSuiteError,
    UnsupportedFieldError,
)
from app.utils.settings import is_dev_mode

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _context(args: argparse.Namespace, registry: Optional[SuiteRegistry] = None) -> SuiteContext:
    get_field(args.q)
    options = dict(registry.defaults) if registry else {}
    return SuiteContext(args.q, seed=getattr(args, "seed", None), samples=getattr(args, "samples", None), options=options)


def print_reports(reports: List[CheckReport]) -> None:
    width = max((len(r.name) for r in reports), default=10)
    print(f"{'check':<{width}}  status  {'cases':>12}  time")
    print("-" * (width + 32))
    for r in reports:
        print(f"{r.name:<{width}}  {r.status.value:<6}  {r.cases:>12}  {r.elapsed:.2f}s")
        for witness in r.witnesses:
            print(f"{'':<{width}}    {witness}")


def cmd_enumerate(args: argparse.Namespace) -> int:
    ctx = _context(args)
    t = ctx.loop
    lines = t.export_lines()
    if args.output:
        Path(args.output).write_text("\n".join(lines) + "\n", encoding="utf-8")
        logger.info(f"{len(lines)} elements written to {args.output}")
    else:
        print("\n".join(lines))
    counts = census(t)
    summary = ", ".join(f"order {order}: {count}" for order, count in sorted(counts.items()))
    print(f"{t!r}: {len(t)} elements; {summary}")
    return EXIT_PASS


def cmd_verify(args: argparse.Namespace) -> int:
    registry = SuiteRegistry()
    ctx = _context(args, registry)
    reports = run_suite(ctx, registry, args.suite)
    print_reports(reports)
    if args.json:
        triples = next((r.notes.get("doubling_triples") for r in reports if r.name == "main-theorem"), None)
        grouped = "group" in vars(ctx)
        orbits = None
        if ctx.q == MAIN_THEOREM_ORDER and any(r.name.startswith("orbit-") for r in reports):
            orbits = orbit_summaries(ctx)
        cert = build_certificate(
            ctx,
            reports,
            doubling_triple_count=triples,
            aut_order=ctx.group.order if grouped else None,
            orbits=orbits,
            generators=ctx.generators if grouped else None,
        )
        write_certificate(cert, Path(args.json))
    failed = [r.name for r in reports if not r.passed]
    if failed:
        logger.warning(f"{len(failed)} of {len(reports)} checks failed: {', '.join(failed)}")
        return EXIT_FAIL
    logger.info(f"All {len(reports)} checks passed")
    return EXIT_PASS


def cmd_decompose(args: argparse.Namespace) -> int:
    field = get_field(args.q)
    if args.random:
        rng = np.random.default_rng(args.seed if args.seed is not None else catalogue_defaults()["seed"])
        x = Octonion(field, tuple(int(c) for c in rng.integers(0, field.q, size=8)))
    elif args.element:
        x = parse_element(args.element, field)
    else:
        raise PreconditionError("give an element or --random")
    u, v = decompose_norm_one(x)
    if not is_valid_decomposition(x, u, v):
        raise InternalConsistencyError(f"decomposition of {x} is invalid: {u} + {v}", witness=str(x))
    print(format_element(u))
    print(format_element(v))
    logger.info(f"{x} = {u} + {v}")
    return EXIT_PASS


def cmd_aut_group(args: argparse.Namespace) -> int:
    if args.q != MAIN_THEOREM_ORDER:
        get_field(args.q)
        raise PreconditionError(f"main theorem pipeline is q={MAIN_THEOREM_ORDER} only")
    registry = SuiteRegistry()
    ctx = _context(args, registry)
    result = main_theorem_result(ctx)
    print_reports([result.report])
    if not result.report.passed:
        return EXIT_FAIL
    save_generators(ctx.q, result.aut_order, ctx.generators, args.cache_dir)
    print(f"aut_order {result.aut_order}")
    if args.emit:
        cert = build_certificate(
            ctx,
            [result.report],
            doubling_triple_count=result.doubling_triple_count,
            aut_order=result.aut_order,
            orbits=orbit_summaries(ctx),
            generators=ctx.generators,
        )
        write_certificate(cert, Path(args.emit))
    return EXIT_PASS


def cmd_orbits(args: argparse.Namespace) -> int:
    if args.q != MAIN_THEOREM_ORDER:
        get_field(args.q)
        raise PreconditionError(f"orbits are computed for q={MAIN_THEOREM_ORDER} only")
    ctx = _context(args)
    gens = load_generators(ctx, args.cache_dir)
    _, summary = compute_orbits(ctx.loop, gens, args.structure, ctx.named_index)
    print(f"{summary.structure}: {summary.count} orbits")
    for size, rep in zip(summary.sizes, summary.representatives):
        print(f"  size {size:>4}  representative {rep}")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zornlab", description="Split octonions and Paige loops over GF(q)")
    parser.add_argument("--version", action="version", version=f"zornlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_q(p: argparse.ArgumentParser, default: Optional[int] = None) -> argparse.ArgumentParser:
        p.add_argument("--q", type=int, default=default, required=default is None, help="field order")
        return p

    p = with_q(sub.add_parser("enumerate", help="list the loop elements"))
    p.add_argument("--output", help="write the listing to a file")
    p.set_defaults(func=cmd_enumerate)

    p = with_q(sub.add_parser("verify", help="run verification suites"))
    p.add_argument("--suite", default="all", help="suite name or all")
    p.add_argument("--seed", type=int, help="seed for sampled checks")
    p.add_argument("--samples", type=int, help="override sampled-suite budgets")
    p.add_argument("--json", help="write a certificate to this path")
    p.set_defaults(func=cmd_verify)

    p = with_q(sub.add_parser("decompose", help="split an element into two of norm one"))
    p.add_argument("element", nargs="?", help="element text a;(a1,a2,a3);(b1,b2,b3);b")
    p.add_argument("--random", action="store_true", help="draw the element with the seed")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_decompose)

    p = with_q(sub.add_parser("aut-group", help="build and certify Aut(M*(2))"), MAIN_THEOREM_ORDER)
    p.add_argument("--emit", help="write the certificate to this path")
    p.add_argument("--seed", type=int)
    p.add_argument("--cache-dir", type=Path, help="generator cache directory")
    p.set_defaults(func=cmd_aut_group)

    p = with_q(sub.add_parser("orbits", help="orbits of Aut(M*(2)) on C2 or V4 copies"), MAIN_THEOREM_ORDER)
    p.add_argument("--structure", choices=STRUCTURES, default="C2")
    p.add_argument("--cache-dir", type=Path, help="generator cache directory")
    p.set_defaults(func=cmd_orbits)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(
        level=logging.DEBUG if is_dev_mode() else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UnsupportedFieldError, ElementParseError, PreconditionError, UnknownSuiteError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MissingGroupDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc} (witness {exc.witness})", file=sys.stderr)
        return EXIT_FAIL
    except Exception as exc:
        logger.exception(f"Unexpected failure in {args.command}: {exc}")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
