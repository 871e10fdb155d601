"""Subgroups generated inside the loop, involution pairs and the order census."""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import numpy as np

from app.loops.table import LoopTable
from app.utils.constants import GroupTag
from app.utils.errors import PreconditionError

logger = logging.getLogger(__name__)


def generate(t: LoopTable, gens: Iterable[int]) -> FrozenSet[int]:
    """Closure of gens (and the identity) under the loop product."""
    gens = sorted(set(int(g) for g in gens))
    for g in gens:
        t._check(g)
    members = {0, *gens}
    frontier = np.array(sorted(members), dtype=np.int64)
    gen_arr = np.array(gens or [0], dtype=np.int64)
    while frontier.size:
        products = t.mul_many(frontier[:, None], gen_arr[None, :]).ravel()
        fresh = set(int(p) for p in np.unique(products)) - members
        members |= fresh
        frontier = np.array(sorted(fresh), dtype=np.int64)
    return frozenset(members)


def group_tag(t: LoopTable, members: FrozenSet[int]) -> GroupTag:
    """Isomorphism type of a small group from its order statistics."""
    orders = Counter(t.order(i) for i in members)
    n = len(members)
    if n == 1:
        return GroupTag.C1
    if orders.get(n):
        return {2: GroupTag.C2, 3: GroupTag.C3, 4: GroupTag.C4, 6: GroupTag.C6}.get(n, GroupTag.OTHER)
    if n == 4:
        return GroupTag.V4
    if n == 6:
        return GroupTag.S3
    if n == 12 and orders.get(2) == 3 and orders.get(3) == 8:
        return GroupTag.A4
    return GroupTag.OTHER


def subgroup_generate(t: LoopTable, gens: Iterable[int]) -> Tuple[FrozenSet[int], GroupTag]:
    members = generate(t, gens)
    return members, group_tag(t, members)


def commutator(t: LoopTable, x: int, y: int) -> int:
    """The c with xy = (yx)c, computed in the group generated by x and y."""
    return t.mul(t.inverse(t.mul(y, x)), t.mul(x, y))


def census(t: LoopTable) -> Dict[int, int]:
    """Number of loop elements of each order."""
    values, counts = np.unique(t.orders(), return_counts=True)
    return {int(v): int(c) for v, c in zip(values, counts)}


def involutions(t: LoopTable) -> List[int]:
    return [int(i) for i in np.flatnonzero(t.orders() == 2)]


def elements_of_order(t: LoopTable, m: int) -> List[int]:
    return [int(i) for i in np.flatnonzero(t.orders() == m)]


def involution_pair_classify(t: LoopTable, x: int, y: int) -> GroupTag:
    """
    V4 when α·δ = β·γ for x = (a, α, β, b) and y = (c, γ, δ, d), else S3.

    Raises:
        PreconditionError: not q = 2, an input is not an involution, or x = y
    """
    if t.q != 2:
        raise PreconditionError("involution pairs are classified over GF(2) only")
    if x == y:
        raise PreconditionError("involution pair needs two distinct elements")
    for i in (x, y):
        if t.order(i) != 2:
            raise PreconditionError(f"{t.rep(i)} is not an involution")
    f = t.field
    u, v = t.coords[x], t.coords[y]
    alpha_delta = f.dot3(u[1:4], v[4:7])
    beta_gamma = f.dot3(u[4:7], v[1:4])
    return GroupTag.V4 if alpha_delta == beta_gamma else GroupTag.S3


def subgroups_of_type(t: LoopTable, tag: GroupTag) -> List[Tuple[int, ...]]:
    """Distinct subgroups of the given type generated by two involutions, as sorted index tuples."""
    invs = involutions(t)
    seen = set()
    for pos, x in enumerate(invs):
        for y in invs[pos + 1 :]:
            if involution_pair_classify(t, x, y) is tag:
                seen.add(tuple(sorted(generate(t, (x, y)))))
    return sorted(seen)


def v4_subgroups(t: LoopTable) -> List[Tuple[int, ...]]:
    return subgroups_of_type(t, GroupTag.V4)


def s3_subgroups(t: LoopTable) -> List[Tuple[int, ...]]:
    return subgroups_of_type(t, GroupTag.S3)


def conjugation_cycles_involutions(t: LoopTable, group: Iterable[int]) -> bool:
    """In an S3, conjugation by an element of order 3 permutes the three involutions cyclically."""
    group = list(group)
    x = next(i for i in group if t.order(i) == 3)
    invs = sorted(i for i in group if t.order(i) == 2)
    x_inv = t.inverse(x)
    image = {i: t.mul(t.mul(x_inv, i), x) for i in invs}
    return sorted(image.values()) == invs and all(image[i] != i for i in invs)


@dataclass
class S3MembershipProps:
    """Outcome of the S3 membership properties over GF(2)."""

    partners: Dict[int, Optional[int]] = field(default_factory=dict)
    s3_count: int = 0
    without_zero_diagonal: List[Tuple[int, ...]] = field(default_factory=list)

    @property
    def unpaired(self) -> List[int]:
        return [i for i, p in self.partners.items() if p is None]

    @property
    def holds(self) -> bool:
        return not self.unpaired and not self.without_zero_diagonal


def s3_membership_props(t: LoopTable) -> S3MembershipProps:
    """
    Check that every involution lies in some S3 and every S3 contains an
    involution with diagonal entry a = 0.

    Raises:
        PreconditionError: q != 2
    """
    if t.q != 2:
        raise PreconditionError("S3 membership properties are stated over GF(2)")
    props = S3MembershipProps()
    invs = involutions(t)
    for x in invs:
        props.partners[x] = next(
            (y for y in invs if y != x and involution_pair_classify(t, x, y) is GroupTag.S3), None
        )
    groups = s3_subgroups(t)
    props.s3_count = len(groups)
    for group in groups:
        if not any(t.order(i) == 2 and t.coords[i][0] == 0 for i in group):
            props.without_zero_diagonal.append(group)
    logger.debug(f"{props.s3_count} copies of S3, {len(props.unpaired)} involutions outside every S3")
    return props
