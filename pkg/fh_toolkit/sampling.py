"""Seeded random structures for property suites and tests."""
import logging
from typing import List, Optional, Sequence

import numpy as np

from .const import ENGINE_FLOW
from .core import all_orbits, fresh_names, make_structure
from .predim import in_class, self_sufficient_closure
from .types import FiniteStructure, Permutation, SymmetryGroup

_LOGGER = logging.getLogger(__name__)

ELEMENT_PREFIX = "e"
EXTENSION_PREFIX = "n"
CLASS_ATTEMPTS_PER_ORBIT = 4


def element_names(count: int, prefix: str = ELEMENT_PREFIX) -> List[str]:
    """prefix1..prefix<count>."""
    return [f"{prefix}{i + 1}" for i in range(count)]


def transposition_group(arity: int) -> SymmetryGroup:
    """The order-two group swapping the first two coordinates."""
    swap = Permutation((2, 1) + tuple(range(3, arity + 1)))
    return SymmetryGroup.from_generators(arity, [swap])


def random_group(rng: np.random.Generator, arity: int) -> SymmetryGroup:
    """Trivial, transposition or full symmetric group, uniformly."""
    choice = int(rng.integers(3))
    if choice == 0:
        return SymmetryGroup.trivial(arity)
    if choice == 1:
        return transposition_group(arity)
    return SymmetryGroup.symmetric(arity)


def random_structure(
    rng: np.random.Generator,
    group: SymmetryGroup,
    size: int,
    max_relations: Optional[int] = None,
    name: str = "M",
) -> FiniteStructure:
    """Uniformly many orbits, chosen uniformly, on size points."""
    points = element_names(size)
    orbits = all_orbits(group, points) if size >= group.arity else []
    limit = len(orbits) if max_relations is None else min(max_relations, len(orbits))
    count = int(rng.integers(limit + 1))
    picked = rng.choice(len(orbits), size=count, replace=False) if count else []
    return make_structure(group, points, [orbits[int(i)] for i in picked], name=name)


def random_class_member(
    rng: np.random.Generator, group: SymmetryGroup, size: int, name: str = "M"
) -> FiniteStructure:
    """Greedily add shuffled orbits while no subset goes negative."""
    points = element_names(size)
    orbits = all_orbits(group, points) if size >= group.arity else []
    target = int(rng.integers(size + 1))
    chosen: List[Sequence[str]] = []
    for i in rng.permutation(len(orbits))[: CLASS_ATTEMPTS_PER_ORBIT * target]:
        if len(chosen) >= target:
            break
        trial = make_structure(group, points, chosen + [orbits[int(i)]], name=name)
        if in_class(trial):
            chosen.append(orbits[int(i)])
    return make_structure(group, points, chosen, name=name)


def random_subset(
    rng: np.random.Generator, elements: Sequence[str], p: float = 0.5
) -> List[str]:
    """Each element independently with probability p."""
    keep = rng.random(len(elements)) < p
    return [e for e, k in zip(elements, keep) if k]


def random_strong_subset(
    rng: np.random.Generator, M: FiniteStructure, p: float = 0.4
) -> List[str]:
    """Self-sufficient closure of a random subset."""
    seed = random_subset(rng, M.universe, p)
    return sorted(
        self_sufficient_closure(M, seed, engine=ENGINE_FLOW).closure,
        key=M.index.__getitem__,
    )


def random_extension(
    rng: np.random.Generator,
    M: FiniteStructure,
    extra: int,
    max_relations: int,
    name: Optional[str] = None,
) -> FiniteStructure:
    """M plus extra fresh points and random orbits each touching a fresh point."""
    fresh = fresh_names(EXTENSION_PREFIX, extra, M.universe)
    points = list(M.universe) + fresh
    touching = [
        o for o in all_orbits(M.group, points) if any(e in fresh for e in o)
    ]
    count = int(rng.integers(min(max_relations, len(touching)) + 1))
    picked = rng.choice(len(touching), size=count, replace=False) if count else []
    return make_structure(
        M.group,
        points,
        [r.entries for r in M.relations] + [touching[int(i)] for i in picked],
        name=M.name if name is None else name,
    )


def random_class_extension(
    rng: np.random.Generator,
    M: FiniteStructure,
    extra: int,
    max_relations: int,
    attempts: int = 8,
    name: Optional[str] = None,
) -> FiniteStructure:
    """A random_extension that stays in the class, or the bare extension by points."""
    for _ in range(attempts):
        grown = random_extension(rng, M, extra, max_relations, name=name)
        if in_class(grown, engine=ENGINE_FLOW):
            return grown
    _LOGGER.debug(f"No class extension of {M.name} in {attempts} attempts")
    return random_extension(rng, M, extra, 0, name=name)
