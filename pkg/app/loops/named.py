"""Named elements of M*(2) used in the involution and orbit arguments."""

from dataclasses import dataclass, fields
from typing import Dict

from app.algebra.element_text import parse_element
from app.algebra.gf import get_field
from app.algebra.zorn import Octonion
from app.loops.table import LoopTable

NAMED_TEXT_Q2: Dict[str, str] = {
    "x0": "0;(1,1,1);(1,1,1);0",
    "x1": "0;(1,0,0);(1,0,0);0",
    "u0": "1;(0,0,0);(1,1,0);1",
    "u1": "0;(0,0,1);(0,0,1);0",
    "u2": "1;(1,0,0);(0,1,0);1",
    "u3": "0;(0,0,1);(1,1,1);0",
    "u4": "1;(1,1,0);(1,1,0);1",
    "u5": "0;(0,1,1);(1,0,1);0",
    "v1": "0;(0,1,0);(1,1,0);1",
    "v2": "0;(0,0,1);(1,0,1);1",
    "y": "1;(0,0,1);(1,0,1);0",
    "a_shift1": "1;(0,1,1);(0,1,0);0",
    "a_shift2": "1;(1,1,0);(1,0,0);0",
}


@dataclass(frozen=True)
class NamedElements:
    x0: Octonion
    x1: Octonion
    u0: Octonion
    u1: Octonion
    u2: Octonion
    u3: Octonion
    u4: Octonion
    u5: Octonion
    v1: Octonion
    v2: Octonion
    y: Octonion
    a_shift1: Octonion
    a_shift2: Octonion

    @classmethod
    def q2(cls) -> "NamedElements":
        field = get_field(2)
        return cls(**{name: parse_element(text, field) for name, text in NAMED_TEXT_Q2.items()})

    def as_dict(self) -> Dict[str, Octonion]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def indices(self, table: LoopTable) -> Dict[str, int]:
        """Table index of every named element."""
        return {name: table.index_of(x) for name, x in self.as_dict().items()}
