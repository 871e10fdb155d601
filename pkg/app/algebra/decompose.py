"""Every element of the split algebra is a sum of two elements of norm one."""

import logging
from itertools import product
from typing import Optional, Tuple

from app.algebra.gf import Field
from app.algebra.zorn import Octonion, norm_index

logger = logging.getLogger(__name__)


def smallest_solution(field: Field, w, target: int) -> Optional[Tuple[int, int, int]]:
    """Lexicographically smallest g with g·w = target, or None."""
    for g in product(range(field.q), repeat=3):
        if field.dot3(g, w) == target:
            return g
    return None


def decompose_norm_one(x: Octonion) -> Tuple[Octonion, Octonion]:
    """
    Split x deterministically as u + v with N(u) = N(v) = 1.

    With t = a + b − ab + α·β:
      beta != 0: u = (1, γ, 0, 1), γ the smallest vector with γ·β = t;
      beta == 0, alpha != 0: u = (1, 0, δ, 1), δ the smallest vector with α·δ = t;
      otherwise: u = (a, (1,0,0), (−1,0,0), 0), v = (0, (−1,0,0), (1,0,0), b).

    Returns:
        (u, v) with u + v = x
    """
    f = x.field
    a, b = x.coords[0], x.coords[7]
    alpha, beta = x.coords[1:4], x.coords[4:7]
    zero3 = (0, 0, 0)

    if any(beta) or any(alpha):
        t = f.add(f.sub(f.add(a, b), f.mul(a, b)), f.dot3(alpha, beta))
        if any(beta):
            gamma = smallest_solution(f, beta, t)
            u = Octonion.from_parts(f, 1, gamma, zero3, 1)
        else:
            delta = smallest_solution(f, alpha, t)
            u = Octonion.from_parts(f, 1, zero3, delta, 1)
        return u, x - u

    one, minus_one = 1, f.neg(1)
    u = Octonion.from_parts(f, a, (one, 0, 0), (minus_one, 0, 0), 0)
    v = Octonion.from_parts(f, 0, (minus_one, 0, 0), (one, 0, 0), b)
    return u, v


def is_valid_decomposition(x: Octonion, u: Octonion, v: Octonion) -> bool:
    f = x.field
    return u + v == x and norm_index(f, u.coords) == 1 and norm_index(f, v.coords) == 1
