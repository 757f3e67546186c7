"""Simple amalgams (free joins) and their audit."""
import logging
from functools import reduce
from typing import FrozenSet, Iterable, Optional, Sequence

import numpy as np

from .core import induced_substructure
from .errors import ArityMismatch, OverlapNotA, PreconditionFailed, SharedMismatch
from .subsets import SubsetTable
from .types import AmalgamCheck, FiniteStructure

_LOGGER = logging.getLogger(__name__)


def simple_amalgam(
    B1: FiniteStructure,
    B2: FiniteStructure,
    A: Iterable[str],
    name: Optional[str] = None,
) -> FiniteStructure:
    """Free join of B1 and B2 over A: union of universes and of relations."""
    base = B1.check_elements(A)
    B2.check_elements(base)
    if B1.group != B2.group:
        raise ArityMismatch(f"{B1.name} and {B2.name} carry different groups")
    overlap = set(B1.universe) & set(B2.universe)
    if overlap != base:
        raise OverlapNotA(
            f"{B1.name} and {B2.name} also share {sorted(overlap - base)}"
        )
    if induced_substructure(B1, base).relations != induced_substructure(B2, base).relations:
        raise SharedMismatch(f"{B1.name} and {B2.name} disagree on the base")
    return FiniteStructure(
        group=B1.group,
        universe=B1.universe + B2.universe,
        relations=B1.relations + B2.relations,
        name=name or f"{B1.name}+{B2.name}",
    )


def iterated_amalgam(
    parts: Sequence[FiniteStructure], A: Iterable[str], name: Optional[str] = None
) -> FiniteStructure:
    """Fold of simple_amalgam over parts pairwise meeting in A."""
    if not parts:
        raise PreconditionFailed("Nothing to amalgamate")
    base = frozenset(A)
    joined = reduce(lambda left, right: simple_amalgam(left, right, base), parts)
    if name is not None:
        joined = FiniteStructure(joined.group, joined.universe, joined.relations, name=name)
    _LOGGER.debug(f"Amalgamated {len(parts)} parts over {len(base)} points: {joined.size}")
    return joined


def _check_layout(
    D: FiniteStructure, B1: FiniteStructure, B2: FiniteStructure, A: FrozenSet[str]
) -> None:
    if set(D.universe) != set(B1.universe) | set(B2.universe):
        raise PreconditionFailed(f"{D.name} is not the union of {B1.name} and {B2.name}")
    if set(B1.universe) & set(B2.universe) != A:
        raise PreconditionFailed(f"{B1.name} and {B2.name} do not meet exactly in the base")


def _first_failure(
    table: SubsetTable, base: int, b1: int, b2: int, within: int
) -> Optional[int]:
    masks = table.masks
    chosen = ((masks & base) == base) & ((masks & ~within) == 0)
    delta = table.delta.astype(np.int64)
    lhs = delta - delta[base]
    rhs = delta[masks & b1] + delta[masks & b2] - 2 * delta[base]
    bad = np.nonzero(chosen & (lhs != rhs))[0]
    return int(bad[0]) if bad.size else None


def verify_simple_amalgam(
    D: FiniteStructure,
    B1: FiniteStructure,
    B2: FiniteStructure,
    A: Iterable[str],
    bound: Optional[int] = None,
) -> AmalgamCheck:
    """Whether δ(X/A) = δ(X∩B1/A) + δ(X∩B2/A) for all A ⊆ X ⊆ D."""
    base = frozenset(A)
    _check_layout(D, B1, B2, base)
    for part in (B1, B2):
        if induced_substructure(D, part.universe) != part:
            _LOGGER.debug(f"{part.name} is not an induced substructure of {D.name}")
            return AmalgamCheck(ok=False, witness=frozenset(part.universe))
    table = SubsetTable(D, bound=bound)
    failure = _first_failure(
        table, D.mask_of(base), D.mask_of(B1.universe), D.mask_of(B2.universe),
        D.full_mask,
    )
    if failure is not None:
        return AmalgamCheck(ok=False, witness=D.elements_of(failure))
    return AmalgamCheck(ok=True)


def check_sub_amalgams(
    D: FiniteStructure,
    B1: FiniteStructure,
    B2: FiniteStructure,
    A: Iterable[str],
    bound: Optional[int] = None,
) -> AmalgamCheck:
    """Whether every A ⊆ E ⊆ D is a simple amalgam of E∩B1 and E∩B2 over A."""
    base = frozenset(A)
    _check_layout(D, B1, B2, base)
    table = SubsetTable(D, bound=bound)
    base_mask = D.mask_of(base)
    b1 = D.mask_of(B1.universe)
    b2 = D.mask_of(B2.universe)
    for within in table.masks[(table.masks & base_mask) == base_mask]:
        within = int(within)
        inner = table.relations_inside[within]
        split = table.relations_inside[within & b1] + table.relations_inside[within & b2]
        if inner != split - table.relations_inside[base_mask]:
            return AmalgamCheck(ok=False, witness=D.elements_of(within))
        failure = _first_failure(table, base_mask, b1, b2, within)
        if failure is not None:
            return AmalgamCheck(ok=False, witness=D.elements_of(within))
    return AmalgamCheck(ok=True)
