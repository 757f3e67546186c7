"""Predimension, dimension, self-sufficiency and the class C_G."""
import itertools
import logging
from typing import FrozenSet, Iterable, List, Optional, Tuple

import networkx as nx  # type: ignore

from . import get_search_bound
from .const import DEFAULT_CLOSURE_SWEEP_BOUND, ENGINE_EXHAUSTIVE, ENGINE_FLOW, ENGINES
from .errors import SearchBoundExceeded
from .subsets import SubsetTable
from .types import ClosureCertificate, FiniteStructure

_LOGGER = logging.getLogger(__name__)

FLOW_SOURCE = ("source",)
FLOW_SINK = ("sink",)


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def relations_inside_mask(M: FiniteStructure, mask: int) -> int:
    """Number of orbits whose points all lie in mask."""
    return sum(1 for r in M.relation_masks if r & mask == r)


def delta_mask(M: FiniteStructure, mask: int) -> int:
    """δ of a bitmask."""
    return _popcount(mask) - relations_inside_mask(M, mask)


def delta(M: FiniteStructure, A: Iterable[str]) -> int:
    """|A| minus the number of orbits inside A."""
    return delta_mask(M, M.mask_of(M.check_elements(A)))


def delta_rel(M: FiniteStructure, B: Iterable[str], A: Iterable[str]) -> int:
    """δ(B/A) = δ(A ∪ B) − δ(A)."""
    a_mask = M.mask_of(M.check_elements(A))
    b_mask = M.mask_of(M.check_elements(B))
    return delta_mask(M, a_mask | b_mask) - delta_mask(M, a_mask)


def _check_engine(engine: str) -> None:
    if engine not in ENGINES:
        raise ValueError(f"Unknown engine {engine!r}, expected one of {ENGINES}")


def _check_bound(M: FiniteStructure, bound: Optional[int]) -> None:
    limit = get_search_bound(bound)
    if M.size > limit:
        raise SearchBoundExceeded(
            f"{M.name} has {M.size} elements, exhaustive bound is {limit}"
        )


def _branch_and_bound(
    M: FiniteStructure, base: int, excluded: int = 0
) -> Tuple[int, int]:
    """Least δ over supersets of base avoiding excluded, with one superset attaining it."""
    allowed = M.full_mask & ~(excluded & ~base)
    if base == allowed:
        return delta_mask(M, base), base

    outside = [i for i in range(M.size) if allowed >> i & 1 and not base >> i & 1]
    touching = [r for r in M.relation_masks if r & ~base and r & allowed == r]
    degree = {i: 0 for i in outside}
    for rel_mask in touching:
        for i in outside:
            if rel_mask >> i & 1:
                degree[i] += 1
    order = sorted(outside, key=lambda i: (-degree[i], i))
    base_delta = delta_mask(M, base)

    best_value, best_mask = base_delta, base
    full_value = delta_mask(M, allowed)
    if full_value < best_value:
        best_value, best_mask = full_value, allowed

    suffix = [0] * (len(order) + 1)
    for pos in range(len(order) - 1, -1, -1):
        suffix[pos] = suffix[pos + 1] | (1 << order[pos])

    def visit(pos: int, chosen: int, added: int) -> None:
        nonlocal best_value, best_mask
        available = chosen | suffix[pos]
        completable = sum(1 for r in touching if r & available == r)
        current_new = sum(1 for r in touching if r & chosen == r)
        # Each extra point costs one, so the current size minus completable orbits bounds below.
        if base_delta + added - completable >= best_value:
            return
        value = base_delta + added - current_new
        if value < best_value:
            best_value, best_mask = value, chosen
        if pos == len(order):
            return
        bit = 1 << order[pos]
        visit(pos + 1, chosen | bit, added + 1)
        visit(pos + 1, chosen, added)

    visit(0, base, 0)
    return best_value, best_mask


def _flow_network(M: FiniteStructure, base: int) -> Tuple[nx.DiGraph, int]:
    """Selection network whose minimum cut gives the least δ over supersets."""
    network = nx.DiGraph()
    network.add_node(FLOW_SOURCE)
    network.add_node(FLOW_SINK)
    pending = 0
    for i, rel_mask in enumerate(M.relation_masks):
        if not rel_mask & ~base:
            continue
        pending += 1
        network.add_edge(FLOW_SOURCE, ("rel", i), capacity=1)
        for j in range(M.size):
            if rel_mask >> j & 1 and not base >> j & 1:
                network.add_edge(("rel", i), ("elt", j))
    for j in range(M.size):
        if not base >> j & 1 and network.has_node(("elt", j)):
            network.add_edge(("elt", j), FLOW_SINK, capacity=1)
    return network, pending


def _min_cut(M: FiniteStructure, base: int) -> Tuple[int, int]:
    """Least δ over supersets of base, with the least superset attaining it."""
    network, pending = _flow_network(M, base)
    base_delta = delta_mask(M, base)
    if pending == 0:
        return base_delta, base
    cut_value, (reachable, _) = nx.minimum_cut(network, FLOW_SOURCE, FLOW_SINK)
    closure = base
    for node in reachable:
        if node[0] == "elt":
            closure |= 1 << node[1]
    return base_delta - pending + int(cut_value), closure


def minimum_over_supersets(
    M: FiniteStructure,
    A: Iterable[str],
    engine: str = ENGINE_EXHAUSTIVE,
    bound: Optional[int] = None,
) -> Tuple[int, FrozenSet[str]]:
    """d(A) with a superset of A attaining it."""
    _check_engine(engine)
    base = M.mask_of(M.check_elements(A))
    if engine == ENGINE_FLOW:
        value, mask = _min_cut(M, base)
    else:
        _check_bound(M, bound)
        value, mask = _branch_and_bound(M, base)
    return value, M.elements_of(mask)


def dim(
    M: FiniteStructure,
    A: Iterable[str],
    engine: str = ENGINE_EXHAUSTIVE,
    bound: Optional[int] = None,
) -> int:
    """Least δ over all supersets of A inside M."""
    return minimum_over_supersets(M, A, engine=engine, bound=bound)[0]


def is_self_sufficient(
    M: FiniteStructure,
    A: Iterable[str],
    engine: str = ENGINE_EXHAUSTIVE,
    bound: Optional[int] = None,
) -> bool:
    """Whether d(A) = δ(A)."""
    subset = M.check_elements(A)
    if len(subset) == M.size:
        return True
    return dim(M, subset, engine=engine, bound=bound) == delta(M, subset)


def _least_minimizer(M: FiniteStructure, base: int) -> Tuple[int, int, int]:
    """d of base, the intersection of all its minimizers and the searches run."""
    value, best = _branch_and_bound(M, base)
    searches = 1
    closure = base
    outside_best = M.full_mask & ~best
    for i in range(M.size):
        bit = 1 << i
        if not best & bit or base & bit:
            continue
        without, _ = _branch_and_bound(M, base, excluded=outside_best | bit)
        searches += 1
        if without > value:
            closure |= bit
    return value, closure, searches


def self_sufficient_closure(
    M: FiniteStructure,
    A: Iterable[str],
    engine: str = ENGINE_EXHAUSTIVE,
    bound: Optional[int] = None,
) -> ClosureCertificate:
    """Smallest self-sufficient superset of A."""
    _check_engine(engine)
    subset = M.check_elements(A)
    if len(subset) == M.size:
        return ClosureCertificate(
            input=subset, closure=subset, minimizers_examined=0,
            dimension=delta(M, subset),
        )

    if engine == ENGINE_FLOW:
        value, closure = minimum_over_supersets(M, subset, engine=ENGINE_FLOW)
        return ClosureCertificate(
            input=subset, closure=closure, minimizers_examined=1, dimension=value
        )

    _check_bound(M, bound)
    if M.size <= DEFAULT_CLOSURE_SWEEP_BOUND:
        table = SubsetTable(M, bound=bound)
        found = table.minimizers(subset)
        closure = table.closure(subset)
        _LOGGER.debug(
            f"Closure sweep of {sorted(subset)} in {M.name}: {len(found)} minimizers"
        )
        return ClosureCertificate(
            input=subset,
            closure=closure,
            minimizers_examined=len(found),
            dimension=table.dim_of(subset),
        )

    value, closure_mask, searches = _least_minimizer(M, M.mask_of(subset))
    _LOGGER.debug(
        f"Closure of {sorted(subset)} in {M.name}: {searches} bounded searches"
    )
    return ClosureCertificate(
        input=subset,
        closure=M.elements_of(closure_mask),
        minimizers_examined=searches,
        dimension=value,
    )


def d_closure(
    M: FiniteStructure,
    N: Iterable[str],
    engine: str = ENGINE_EXHAUSTIVE,
    bound: Optional[int] = None,
) -> FrozenSet[str]:
    """Elements whose addition to N leaves d unchanged."""
    subset = M.check_elements(N)
    if len(subset) == M.size:
        return subset
    base = dim(M, subset, engine=engine, bound=bound)
    return frozenset(subset) | frozenset(
        e
        for e in M.universe
        if e not in subset
        and dim(M, subset | {e}, engine=engine, bound=bound) == base
    )


def in_class(
    M: FiniteStructure,
    engine: str = ENGINE_EXHAUSTIVE,
    bound: Optional[int] = None,
) -> bool:
    """Whether ∅ is self-sufficient, i.e. no subset has negative δ."""
    if not M.relations:
        return True
    return dim(M, (), engine=engine, bound=bound) == 0


def strong_subsets(
    M: FiniteStructure,
    max_size: int,
    engine: str = ENGINE_EXHAUSTIVE,
    bound: Optional[int] = None,
) -> List[FrozenSet[str]]:
    """All self-sufficient subsets with at most max_size elements."""
    if engine == ENGINE_EXHAUSTIVE and M.size <= DEFAULT_CLOSURE_SWEEP_BOUND:
        table = SubsetTable(M, bound=bound)
        found = [
            M.elements_of(int(mask))
            for mask in table.self_sufficient_masks()
            if _popcount(int(mask)) <= max_size
        ]
        return sorted(found, key=lambda s: (len(s), sorted(M.index[e] for e in s)))

    out: List[FrozenSet[str]] = []
    for k in range(0, min(max_size, M.size) + 1):
        for combo in itertools.combinations(M.universe, k):
            if is_self_sufficient(M, combo, engine=engine, bound=bound):
                out.append(frozenset(combo))
    return out
