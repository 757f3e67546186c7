"""Finite approximants of the generic structure and their extension audit."""
import itertools
import logging
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from .const import DEFAULT_CATALOG_MAX_ORBITS, ENGINE_FLOW
from .core import (
    all_orbits,
    empty_structure,
    fresh_names,
    induced_substructure,
    is_embedding,
    make_structure,
    rename,
)
from .amalgam import simple_amalgam
from .errors import (
    NotInClass,
    NotStrongBase,
    PreconditionFailed,
    SearchBoundExceeded,
    VerificationFailed,
)
from .predim import in_class, is_self_sufficient, strong_subsets
from .subsets import SubsetTable
from .types import (
    AuditEntry,
    AuditReport,
    Embedding,
    ExtensionTemplate,
    FiniteStructure,
    GenericBuildState,
    GenericStep,
    SymmetryGroup,
    element_sort_key,
    tuple_sort_key,
)

_LOGGER = logging.getLogger(__name__)

TEMPLATE_PREFIX = "t"
GENERIC_PREFIX = "m"
IMAGE_ATTEMPTS = 64
IMAGE_EXHAUSTIVE_LIMIT = 20000


def _pair_key(
    group: SymmetryGroup, B: FiniteStructure, base: Sequence[str]
) -> Tuple[int, int, Tuple]:
    """Isomorphism invariant of (base ≤ B): least relabelling sending base first."""
    rest = [e for e in B.universe if e not in set(base)]
    k = len(base)
    best: Optional[Tuple] = None
    for head in itertools.permutations(base):
        for tail in itertools.permutations(rest):
            order = {e: i for i, e in enumerate(head + tail)}
            key = tuple(
                sorted(
                    group.canonical([f"{TEMPLATE_PREFIX}{order[e] + 1}" for e in r.entries])
                    for r in B.relations
                )
            )
            key = tuple(tuple_sort_key(t) for t in key)
            if best is None or key < best:
                best = key
    return (B.size, k, best or ())


def build_catalog(
    group: SymmetryGroup,
    size_bound: int,
    max_orbits: int = DEFAULT_CATALOG_MAX_ORBITS,
) -> Tuple[ExtensionTemplate, ...]:
    """All isomorphism types of proper strong extensions A ≤ B with |B| ≤ size_bound."""
    seen: Dict[Tuple, ExtensionTemplate] = {}
    for m in range(1, size_bound + 1):
        points = [f"{TEMPLATE_PREFIX}{i}" for i in range(1, m + 1)]
        orbits = all_orbits(group, points) if m >= group.arity else []
        budget = sum(comb(len(orbits), r) for r in range(min(m, len(orbits)) + 1))
        if budget > 1 << max_orbits:
            raise SearchBoundExceeded(
                f"Catalog at {m} points needs {budget} relation sets, "
                f"bound is {1 << max_orbits}"
            )
        for r in range(min(m, len(orbits)) + 1):
            for chosen in itertools.combinations(orbits, r):
                B = make_structure(group, points, chosen, name=f"T{m}")
                table = SubsetTable(B)
                if not table.in_class():
                    continue
                for mask in table.self_sufficient_masks():
                    base = sorted(B.elements_of(int(mask)), key=element_sort_key)
                    if len(base) == m:
                        continue
                    key = _pair_key(group, B, base)
                    if key in seen:
                        continue
                    rest = [e for e in B.universe if e not in set(base)]
                    relabel = {e: f"{TEMPLATE_PREFIX}{i + 1}" for i, e in enumerate(base + rest)}
                    seen[key] = ExtensionTemplate(
                        structure=rename(B, relabel, name=f"T{len(seen)}"),
                        base_size=len(base),
                    )
    catalog = tuple(seen[key] for key in sorted(seen))
    _LOGGER.info(f"Catalog for arity {group.arity}, order {group.order}: {len(catalog)} templates")
    return catalog


def _base_maps(
    template: ExtensionTemplate, M: FiniteStructure, image: Iterable[str]
) -> List[Dict[str, str]]:
    """All isomorphisms from the template base onto M restricted to image."""
    target = induced_substructure(M, image)
    source = induced_substructure(template.structure, template.base)
    out = []
    for ordering in itertools.permutations(sorted(target.universe, key=element_sort_key)):
        mapping = dict(zip(template.base, ordering))
        if is_embedding(source, target, mapping):
            out.append(mapping)
    return out


def _find_image(
    state: GenericBuildState,
    template: ExtensionTemplate,
    rng: np.random.Generator,
) -> Optional[Dict[str, str]]:
    """A random isomorphism from the template base onto a strong subset of the current structure."""
    M = state.current
    k = template.base_size
    if k > M.size:
        return None
    if k == 0:
        return {}

    def accept(subset: Sequence[str]) -> Optional[Dict[str, str]]:
        maps = _base_maps(template, M, subset)
        if not maps or not is_self_sufficient(M, subset, engine=ENGINE_FLOW):
            return None
        return maps[int(rng.integers(len(maps)))]

    for _ in range(IMAGE_ATTEMPTS):
        picked = rng.choice(M.size, size=k, replace=False)
        found = accept([M.universe[int(i)] for i in sorted(picked)])
        if found is not None:
            return found
    if comb(M.size, k) > IMAGE_EXHAUSTIVE_LIMIT:
        return None
    for subset in itertools.combinations(M.universe, k):
        found = accept(subset)
        if found is not None:
            return found
    return None


def apply_template(
    state: GenericBuildState, template_index: int, base_map: Dict[str, str]
) -> FiniteStructure:
    """Amalgamate a catalog template over a strong image and extend the chain."""
    M = state.current
    template = state.catalog[template_index]
    image = [base_map[b] for b in template.base]
    if not is_self_sufficient(M, image, engine=ENGINE_FLOW):
        raise NotStrongBase(f"Image {image} is not self-sufficient in {M.name}")
    extra = [e for e in template.structure.universe if e not in base_map]
    fresh = fresh_names(GENERIC_PREFIX, len(extra), M.universe)
    mapping = dict(base_map)
    mapping.update(zip(extra, fresh))
    copy = rename(template.structure, mapping)
    grown = simple_amalgam(M, copy, image, name=M.name)
    if not is_self_sufficient(grown, M.universe, engine=ENGINE_FLOW):
        raise VerificationFailed(f"Chain link {len(state.chain)} is not strong")
    if not in_class(grown, engine=ENGINE_FLOW):
        raise NotInClass(f"Chain link {len(state.chain)} left the class")
    state.chain.append(grown)
    state.log.append(
        GenericStep(
            index=len(state.log), template=template_index, image=image,
            added=fresh, applied=True,
        )
    )
    _LOGGER.debug(
        f"Step {len(state.log) - 1}: template {template_index} over {image} "
        f"adds {fresh}"
    )
    return grown


def new_build_state(
    group: SymmetryGroup,
    size_bound: int,
    seed: int,
    catalog: Optional[Sequence[ExtensionTemplate]] = None,
) -> GenericBuildState:
    """A chain holding only the empty structure."""
    if size_bound < group.arity:
        raise PreconditionFailed(f"Size bound {size_bound} is below arity {group.arity}")
    return GenericBuildState(
        group=group,
        size_bound=size_bound,
        seed=seed,
        chain=[empty_structure(group, name="generic")],
        catalog=build_catalog(group, size_bound) if catalog is None else catalog,
    )


def build_generic(
    group: SymmetryGroup,
    size_bound: int,
    steps: int,
    seed: int,
    catalog: Optional[Sequence[ExtensionTemplate]] = None,
) -> GenericBuildState:
    """Grow a chain of strong extensions following a seeded fair schedule."""
    if steps < 0:
        raise PreconditionFailed(f"Negative step count {steps}")
    state = new_build_state(group, size_bound, seed, catalog=catalog)
    rng = np.random.default_rng(seed)
    sweep: List[int] = []
    for _ in range(steps):
        if not state.catalog:
            break
        if state.cursor % len(state.catalog) == 0:
            sweep = [int(i) for i in rng.permutation(len(state.catalog))]
        template_index = sweep[state.cursor % len(state.catalog)]
        state.cursor += 1
        base_map = _find_image(state, state.catalog[template_index], rng)
        if base_map is None:
            _LOGGER.warning(
                f"Skipping template {template_index}: no strong image in "
                f"{state.current.size} points"
            )
            state.log.append(
                GenericStep(
                    index=len(state.log), template=template_index, image=(),
                    added=(), applied=False,
                )
            )
            continue
        apply_template(state, template_index, base_map)
    _LOGGER.info(
        f"Built generic approximant: {state.current.size} points, "
        f"{len(state.current.relations)} orbits after {steps} steps"
    )
    return state


def _candidates(M: FiniteStructure, C: FiniteStructure, x: str, used: Set[str]) -> List[str]:
    need = len(C.incidence[x])
    return [
        y for y in M.universe
        if y not in used and len(M.incidence[y]) >= need
    ]


def extension_property_test(
    M: FiniteStructure,
    A: Iterable[str],
    C: FiniteStructure,
    engine: str = ENGINE_FLOW,
) -> Optional[Embedding]:
    """A strong embedding of C into M fixing A pointwise, or None if none exists."""
    base = M.check_elements(A)
    C.check_elements(base)
    if not is_self_sufficient(M, base, engine=engine):
        raise NotStrongBase(f"Base is not self-sufficient in {M.name}")
    if induced_substructure(M, base).relations != induced_substructure(C, base).relations:
        raise PreconditionFailed("Base carries different structure in M and C", base)

    rest = sorted(
        (e for e in C.universe if e not in base),
        key=lambda e: (-len(C.incidence[e]), element_sort_key(e)),
    )
    mapping: Dict[str, str] = {e: e for e in base}
    used: Set[str] = set(base)

    def consistent(x: str, y: str) -> bool:
        for i in C.incidence[x]:
            rel = C.relations[i]
            if all(e in mapping for e in rel.entries):
                if not M.has_orbit([mapping[e] for e in rel.entries]):
                    return False
        inverse = {v: k for k, v in mapping.items()}
        for i in M.incidence[y]:
            rel = M.relations[i]
            if all(e in inverse for e in rel.entries):
                if not C.has_orbit([inverse[e] for e in rel.entries]):
                    return False
        return True

    def search(pos: int) -> bool:
        if pos == len(rest):
            return is_self_sufficient(M, mapping.values(), engine=engine)
        x = rest[pos]
        for y in _candidates(M, C, x, used):
            mapping[x] = y
            used.add(y)
            if consistent(x, y) and search(pos + 1):
                return True
            del mapping[x]
            used.discard(y)
        return False

    if not search(0):
        return None
    return Embedding(source=C, target=M, mapping=mapping)


def _realized(
    M: FiniteStructure, template: ExtensionTemplate, base_map: Dict[str, str]
) -> Optional[Embedding]:
    extra = [e for e in template.structure.universe if e not in base_map]
    fresh = fresh_names("c", len(extra), M.universe)
    mapping = dict(base_map)
    mapping.update(zip(extra, fresh))
    C = rename(template.structure, mapping)
    return extension_property_test(M, base_map.values(), C)


def audit_structure(
    M: FiniteStructure,
    catalog: Sequence[ExtensionTemplate],
    max_A: int,
    max_C: int,
    scheduled: FrozenSet[Tuple[int, Tuple[str, ...]]] = frozenset(),
) -> AuditReport:
    """Which (strong base, template) pairs up to the given sizes M realizes."""
    entries: List[AuditEntry] = []
    bases = strong_subsets(M, max_A, engine=ENGINE_FLOW)
    for subset in bases:
        for index, template in enumerate(catalog):
            if template.base_size != len(subset) or template.size > max_C:
                continue
            for base_map in _base_maps(template, M, subset):
                image = tuple(base_map[b] for b in template.base)
                found = _realized(M, template, base_map)
                entries.append(
                    AuditEntry(
                        base=image,
                        template=index,
                        realized=found is not None,
                        scheduled=(index, image) in scheduled,
                        embedding=found.mapping if found is not None else None,
                    )
                )
    entries.sort(key=lambda e: (len(e.base), tuple_sort_key(e.base), e.template))
    report = AuditReport(max_base=max_A, max_template=max_C, entries=entries)
    _LOGGER.info(f"Audit of {M.name}: {report.realized}/{len(entries)} pairs realized")
    return report


def scheduled_pairs(state: GenericBuildState) -> FrozenSet[Tuple[int, Tuple[str, ...]]]:
    """(template, image) pairs the builder applied."""
    return frozenset((s.template, tuple(s.image)) for s in state.log if s.applied)


def audit_genericity(state: GenericBuildState, max_A: int, max_C: int) -> AuditReport:
    """Audit the last approximant of a build against its catalog."""
    return audit_structure(
        state.current, state.catalog, max_A, max_C, scheduled=scheduled_pairs(state)
    )


def check_chain(state: GenericBuildState) -> Optional[int]:
    """Index of the first chain link that is not strong in its successor or leaves the class."""
    for i in range(1, len(state.chain)):
        previous, current = state.chain[i - 1], state.chain[i]
        if not in_class(current, engine=ENGINE_FLOW):
            return i
        if not is_self_sufficient(current, previous.universe, engine=ENGINE_FLOW):
            return i
    return None
