"""Finite relational structures with group symmetry."""
import itertools
import logging
from typing import (
    Dict,
    FrozenSet,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Set,
    Tuple,
)

import networkx as nx  # type: ignore
from networkx.algorithms.isomorphism import (  # type: ignore
    GraphMatcher,
    categorical_edge_match,
    categorical_node_match,
)

from .errors import ArityMismatch, DuplicateEntry, PreconditionFailed, SharedMismatch
from .types import (
    Embedding,
    FiniteStructure,
    OrbitTuple,
    SymmetryGroup,
    element_sort_key,
    sort_elements,
    tuple_sort_key,
)

_LOGGER = logging.getLogger(__name__)

NODE_ELEMENT = "e"
NODE_TUPLE = "t"


def canonicalize(group: SymmetryGroup, raw: Sequence[str]) -> OrbitTuple:
    """Canonical representative of the orbit of a raw tuple."""
    entries = tuple(str(e) for e in raw)
    if len(entries) != group.arity:
        raise ArityMismatch(
            f"Tuple {entries} has length {len(entries)}, expected {group.arity}"
        )
    if len(set(entries)) != len(entries):
        raise DuplicateEntry(f"Tuple {entries} repeats an element")
    return OrbitTuple(group.canonical(entries))


def all_orbits(group: SymmetryGroup, points: Sequence[str]) -> List[Tuple[str, ...]]:
    """Canonical representatives of all orbits of distinct-entry tuples on points."""
    found = {
        group.canonical(t) for t in itertools.permutations(points, group.arity)
    }
    return sorted(found, key=tuple_sort_key)


def make_structure(
    group: SymmetryGroup,
    universe: Iterable[str],
    tuples: Iterable[Sequence[str]] = (),
    name: str = "M",
) -> FiniteStructure:
    """Build a structure from raw tuples, canonicalizing each."""
    return FiniteStructure(
        group=group,
        universe=universe,
        relations=[canonicalize(group, t) for t in tuples],
        name=name,
    )


def empty_structure(
    group: SymmetryGroup, universe: Iterable[str] = (), name: str = "M"
) -> FiniteStructure:
    """A structure with no relations."""
    return FiniteStructure(group=group, universe=universe, relations=(), name=name)


def with_relations(
    M: FiniteStructure,
    tuples: Iterable[Sequence[str]],
    universe: Optional[Iterable[str]] = None,
    name: Optional[str] = None,
) -> FiniteStructure:
    """Same group as M, with a new relation set and optionally a new universe."""
    return make_structure(
        M.group,
        M.universe if universe is None else universe,
        tuples,
        name=M.name if name is None else name,
    )


def induced_substructure(M: FiniteStructure, S: Iterable[str]) -> FiniteStructure:
    """The substructure of M with universe S."""
    subset = M.check_elements(S)
    if len(subset) == M.size:
        return M
    return FiniteStructure(
        group=M.group,
        universe=subset,
        relations=[r for r in M.relations if r.points <= subset],
        name=M.name,
    )


def fresh_names(prefix: str, count: int, avoid: Iterable[str]) -> List[str]:
    """Count names prefix1, prefix2, ... that avoid the given ones."""
    taken = set(avoid)
    out: List[str] = []
    i = 1
    while len(out) < count:
        candidate = f"{prefix}{i}"
        if candidate not in taken:
            out.append(candidate)
            taken.add(candidate)
        i += 1
    return out


def rename(
    M: FiniteStructure, mapping: Mapping[str, str], name: Optional[str] = None
) -> FiniteStructure:
    """Apply an injective renaming; unmapped elements keep their names."""
    full = {e: mapping.get(e, e) for e in M.universe}
    if len(set(full.values())) != len(full):
        raise PreconditionFailed(f"Renaming of {M.name} is not injective")
    return make_structure(
        M.group,
        full.values(),
        [[full[e] for e in rel.entries] for rel in M.relations],
        name=M.name if name is None else name,
    )


def disjoint_copy(
    M: FiniteStructure,
    fixed: Iterable[str],
    avoid: Iterable[str],
    suffix: str = "'",
) -> Tuple[FiniteStructure, Dict[str, str]]:
    """Copy of M with every element outside fixed renamed away from avoid."""
    keep = frozenset(fixed)
    taken: Set[str] = set(avoid) | set(M.universe)
    mapping: Dict[str, str] = {}
    for e in M.universe:
        if e in keep:
            continue
        candidate = f"{e}{suffix}"
        counter = 2
        while candidate in taken:
            candidate = f"{e}{suffix}{counter}"
            counter += 1
        mapping[e] = candidate
        taken.add(candidate)
    return rename(M, mapping), mapping


def free_union_rename(
    parts: Sequence[FiniteStructure], shared: Iterable[str]
) -> List[FiniteStructure]:
    """Rename parts so they pairwise intersect exactly in shared."""
    common = frozenset(shared)
    if not parts:
        return []
    for part in parts:
        part.check_elements(common)
        if part.group != parts[0].group:
            raise ArityMismatch(
                f"{part.name} and {parts[0].name} carry different groups"
            )
    reference = induced_substructure(parts[0], common).relations
    for part in parts[1:]:
        if induced_substructure(part, common).relations != reference:
            raise SharedMismatch(
                f"{part.name} and {parts[0].name} disagree on the shared set"
            )

    used: Set[str] = set(common)
    out: List[FiniteStructure] = []
    for i, part in enumerate(parts):
        private = [e for e in part.universe if e not in common]
        clashes = [e for e in private if e in used]
        if not clashes:
            out.append(part)
            used.update(private)
            continue
        _LOGGER.debug(f"Renaming {len(clashes)} elements of part {i} ({part.name})")
        taken = used | set(part.universe)
        mapping: Dict[str, str] = {}
        for e in clashes:
            candidate = f"{e}_{i + 1}"
            counter = 2
            while candidate in taken:
                candidate = f"{e}_{i + 1}_{counter}"
                counter += 1
            mapping[e] = candidate
            taken.add(candidate)
        renamed = rename(part, mapping)
        out.append(renamed)
        used.update(e for e in renamed.universe if e not in common)
    return out


def is_embedding(
    source: FiniteStructure, target: FiniteStructure, mapping: Mapping[str, str]
) -> bool:
    """Whether mapping is injective and preserves and reflects relations."""
    if set(mapping) != set(source.universe):
        return False
    images = list(mapping.values())
    if len(set(images)) != len(images) or not set(images) <= set(target.universe):
        return False
    pushed = {
        target.group.canonical([mapping[e] for e in rel.entries])
        for rel in source.relations
    }
    return pushed == set(induced_substructure(target, images).orbit_keys)


def make_embedding(
    source: FiniteStructure, target: FiniteStructure, mapping: Mapping[str, str]
) -> Embedding:
    """Validated embedding."""
    if not is_embedding(source, target, mapping):
        raise PreconditionFailed(f"Map is not an embedding of {source.name} in {target.name}")
    return Embedding(source=source, target=target, mapping=mapping)


def incidence_graph(M: FiniteStructure, pinned: Iterable[str] = ()) -> nx.Graph:
    """Bipartite element/tuple graph whose isomorphisms are those of M."""
    pins = frozenset(pinned)
    graph = nx.Graph()
    for e in M.universe:
        graph.add_node((NODE_ELEMENT, e), kind=f"pin:{e}" if e in pins else "element")
    for rel in M.relations:
        if M.group.is_full:
            node = (NODE_TUPLE, rel.entries)
            graph.add_node(node, kind="orbit")
            for e in rel.entries:
                graph.add_edge(node, (NODE_ELEMENT, e), pos=0)
            continue
        for ordered in M.group.orbit(rel.entries):
            node = (NODE_TUPLE, ordered)
            graph.add_node(node, kind="tuple")
            for i, e in enumerate(ordered):
                graph.add_edge(node, (NODE_ELEMENT, e), pos=i + 1)
    return graph


def _matcher(
    M1: FiniteStructure, M2: FiniteStructure, fixed: Iterable[str] = ()
) -> Optional[GraphMatcher]:
    pins = frozenset(fixed)
    if M1.group != M2.group:
        return None
    if M1.size != M2.size or len(M1.relations) != len(M2.relations):
        return None
    if not (pins <= set(M1.universe) and pins <= set(M2.universe)):
        return None
    return GraphMatcher(
        incidence_graph(M1, pins),
        incidence_graph(M2, pins),
        node_match=categorical_node_match("kind", None),
        edge_match=categorical_edge_match("pos", 0),
    )


def _element_map(mapping: Mapping[Tuple[str, object], Tuple[str, object]]) -> Dict[str, str]:
    return {
        str(k[1]): str(v[1]) for k, v in mapping.items() if k[0] == NODE_ELEMENT
    }


def structure_isomorphism(
    M1: FiniteStructure, M2: FiniteStructure, fixed: Iterable[str] = ()
) -> Optional[Dict[str, str]]:
    """An isomorphism M1 -> M2 fixing the given elements pointwise, or None."""
    matcher = _matcher(M1, M2, fixed)
    if matcher is None:
        return None
    for mapping in matcher.isomorphisms_iter():
        return _element_map(mapping)
    return None


def automorphisms(
    M: FiniteStructure, limit: Optional[int] = None
) -> List[Dict[str, str]]:
    """Automorphisms of M, up to limit of them."""
    matcher = _matcher(M, M)
    assert matcher is not None
    out: List[Dict[str, str]] = []
    for mapping in matcher.isomorphisms_iter():
        out.append(_element_map(mapping))
        if limit is not None and len(out) >= limit:
            break
    _LOGGER.debug(f"Found {len(out)} automorphisms of {M.name}")
    return out


def orbit_count_inside(M: FiniteStructure, S: Iterable[str]) -> int:
    """Number of stored orbits with every entry in S."""
    subset = frozenset(S)
    return sum(1 for r in M.relations if r.points <= subset)


def format_elements(elements: Iterable[str]) -> str:
    """Comma-separated elements in natural order."""
    return ",".join(sorted(elements, key=element_sort_key))


def parse_element_list(text: Optional[str]) -> FrozenSet[str]:
    """Parse a comma-separated element list; empty for None or ''."""
    if not text:
        return frozenset()
    return frozenset(sort_elements(e.strip() for e in text.split(",") if e.strip()))
