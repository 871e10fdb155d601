"""Breadth-first closure of permutation generators and orbit computations."""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from app.autos.permutation import LoopAutomorphism, require_automorphism
from app.loops.table import LoopTable
from app.utils.constants import Provenance

logger = logging.getLogger(__name__)

# A word (i1, ..., im) stands for g_i1 ∘ g_i2 ∘ ... ∘ g_im.
Word = Tuple[int, ...]


def perm_key(perm: np.ndarray) -> bytes:
    return np.asarray(perm, dtype=np.int32).tobytes()


@dataclass
class ClosedGroup:
    """All elements of the group generated by some loop automorphisms."""

    table: LoopTable
    generators: List[LoopAutomorphism]
    perms: np.ndarray
    parents: np.ndarray
    via: np.ndarray
    _index: Dict[bytes, int] = field(repr=False, default_factory=dict)

    @property
    def order(self) -> int:
        return len(self.perms)

    def __len__(self) -> int:
        return self.order

    def __contains__(self, g: LoopAutomorphism) -> bool:
        return g.key in self._index

    def index_of(self, g: LoopAutomorphism) -> Optional[int]:
        return self._index.get(g.key)

    def keys(self) -> List[bytes]:
        return sorted(self._index)

    def element(self, k: int) -> LoopAutomorphism:
        provenance = Provenance.IDENTITY if k == 0 else Provenance.COMPOSITE
        return LoopAutomorphism(self.table, self.perms[k], provenance)

    def word(self, k: int) -> Word:
        word = []
        while k > 0:
            word.append(int(self.via[k]))
            k = int(self.parents[k])
        return tuple(word)

    def evaluate(self, word: Word) -> LoopAutomorphism:
        g = LoopAutomorphism.identity(self.table)
        for i in reversed(word):
            g = self.generators[i].compose(g)
        return g

    def transporter(self, src: int, dst: int) -> Optional[int]:
        """Index of some element mapping point src to point dst."""
        hits = np.flatnonzero(self.perms[:, src] == dst)
        return int(hits[0]) if hits.size else None

    def sample(self, rng: np.random.Generator, n: int) -> List[int]:
        n = min(n, self.order)
        return sorted(int(k) for k in rng.choice(self.order, size=n, replace=False))


def group_closure(gens: Sequence[LoopAutomorphism], audit: bool = True) -> ClosedGroup:
    """
    Close a generating set under composition.

    Args:
        gens: Loop automorphisms over one table
        audit: Run the multiplicativity audit on every generator first

    Raises:
        AutomorphismRejected: some generator fails its audit
    """
    gens = list(gens)
    if not gens:
        raise ValueError("group_closure needs at least one generator")
    table = gens[0].table
    if audit:
        for g in gens:
            require_automorphism(g)

    identity = np.arange(len(table), dtype=np.int64)
    perms: List[np.ndarray] = [identity]
    parents, via = [-1], [-1]
    index = {perm_key(identity): 0}
    frontier = [0]
    while frontier:
        block = np.stack([perms[k] for k in frontier])
        next_frontier = []
        for gi, g in enumerate(gens):
            composed = g.perm[block]
            for row, k in zip(composed, frontier):
                key = perm_key(row)
                if key not in index:
                    index[key] = len(perms)
                    perms.append(row)
                    parents.append(k)
                    via.append(gi)
                    next_frontier.append(index[key])
        frontier = next_frontier
        logger.debug(f"closure: {len(perms)} elements, frontier {len(frontier)}")

    group = ClosedGroup(
        table=table,
        generators=gens,
        perms=np.stack(perms),
        parents=np.array(parents, dtype=np.int64),
        via=np.array(via, dtype=np.int64),
        _index=index,
    )
    logger.info(f"Closed group of order {group.order} from {len(gens)} generators")
    return group


Action = Callable[[LoopAutomorphism, Hashable], Hashable]


def act_on_point(g: LoopAutomorphism, point: int) -> int:
    return g(point)


def act_on_set(g: LoopAutomorphism, members: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(sorted(int(g.perm[i]) for i in members))


def orbit_with_words(root: Hashable, gens: Sequence[LoopAutomorphism], act: Action = act_on_point) -> Dict[Hashable, Word]:
    """Every point of the orbit of root, with a word mapping root onto it."""
    words: Dict[Hashable, Word] = {root: ()}
    frontier = [root]
    while frontier:
        fresh = []
        for point in frontier:
            for gi, g in enumerate(gens):
                image = act(g, point)
                if image not in words:
                    words[image] = (gi,) + words[point]
                    fresh.append(image)
        frontier = fresh
    return words


def orbit_partition(
    points: Iterable[Hashable], gens: Sequence[LoopAutomorphism], act: Action = act_on_point
) -> List[List[Hashable]]:
    """
    Orbits of the generated group on a set of points.

    Orbits are sorted internally and listed by their smallest point.
    """
    remaining = set(points)
    orbits = []
    for point in sorted(remaining):
        if point not in remaining:
            continue
        orbit = set(orbit_with_words(point, gens, act))
        if not orbit <= remaining:
            raise ValueError("point set is not invariant under the generators")
        remaining -= orbit
        orbits.append(sorted(orbit))
    return orbits
