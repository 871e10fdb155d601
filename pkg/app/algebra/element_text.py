"""Canonical element text format: ``a;(a1,a2,a3);(b1,b2,b3);b``."""

import re
from typing import Iterable, List

from app.algebra.gf import Field
from app.algebra.zorn import Octonion
from app.utils.errors import ElementParseError

_INT = r"\s*(\d+)\s*"
_VEC = rf"\s*\({_INT},{_INT},{_INT}\)\s*"
ELEMENT_PATTERN = re.compile(rf"^{_INT};{_VEC};{_VEC};{_INT}$")


def parse_element(text: str, field: Field) -> Octonion:
    """
    Parse the canonical text form of an element.

    Args:
        text: e.g. ``0;(1,1,1);(1,1,1);0``
        field: Field whose canonical indices the numbers refer to

    Returns:
        The parsed Octonion

    Raises:
        ElementParseError: malformed text or an index outside 0..q-1
    """
    match = ELEMENT_PATTERN.match(text.strip())
    if not match:
        raise ElementParseError(f"cannot parse element {text!r}; expected a;(a1,a2,a3);(b1,b2,b3);b")
    coords = tuple(int(g) for g in match.groups())
    bad = [c for c in coords if c >= field.q]
    if bad:
        raise ElementParseError(f"{text!r}: index {bad[0]} is not an element of GF({field.q})")
    return Octonion(field, coords)


def format_element(x: Octonion) -> str:
    return str(x)


def format_elements(elements: Iterable[Octonion]) -> List[str]:
    return [format_element(x) for x in elements]


def format_coords(row) -> str:
    """Text form of a raw coordinate row (any integer sequence of length 8)."""
    a, a1, a2, a3, b1, b2, b3, b = (int(c) for c in row)
    return f"{a};({a1},{a2},{a3});({b1},{b2},{b3});{b}"
