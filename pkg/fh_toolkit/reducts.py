"""Subgroup and exquisite reducts, their mixed amalgams and benign pairs."""
import logging
from typing import Iterable, List, Optional, Union

from .amalgam import iterated_amalgam
from .const import ENGINE_FLOW, KIND_EXQUISITE, KIND_PHI
from .core import (
    canonicalize,
    disjoint_copy,
    fresh_names,
    induced_substructure,
    structure_isomorphism,
)
from .errors import (
    ArityMismatch,
    NotInClass,
    NotProperSubgroup,
    NotStrongBase,
    NotSubgroup,
    PreconditionFailed,
    UsageError,
    VerificationFailed,
)
from .exquisite import WITNESS_PREFIX, check_exquisite, generated_set, positive_heads
from .generic import audit_genericity
from .predim import delta, in_class, is_self_sufficient
from .types import (
    AtomicType,
    AuditEntry,
    BenignPair,
    FiniteStructure,
    GenericBuildState,
    OrbitTuple,
    SymmetryGroup,
    TypedTuple,
)

_LOGGER = logging.getLogger(__name__)

FRESH_HEAD_PREFIX = "x"

ReductTarget = Union[SymmetryGroup, AtomicType]


def phi_reduct(M: FiniteStructure, G: SymmetryGroup) -> FiniteStructure:
    """The G-structure whose orbits are the G-closures of M's orbits."""
    if M.arity != G.arity:
        raise ArityMismatch(f"{M.name} has arity {M.arity}, group has {G.arity}")
    if not M.group.is_subgroup_of(G):
        raise NotSubgroup(f"The group of {M.name} is not contained in the target group")
    return FiniteStructure(
        group=G,
        universe=M.universe,
        relations=[canonicalize(G, r.entries) for r in M.relations],
        name=M.name,
    )


def exquisite_reduct(M: FiniteStructure, q: AtomicType) -> FiniteStructure:
    """Ordered structure whose tuples are the heads of q̂-realizations."""
    if not M.group.is_full:
        raise PreconditionFailed(f"{M.name} is not a symmetric structure")
    if not check_exquisite(q):
        raise PreconditionFailed(f"{q.name} is not exquisite")
    heads = positive_heads(M, q)
    return FiniteStructure(
        group=SymmetryGroup.trivial(q.arity),
        universe=M.universe,
        relations=[OrbitTuple(h) for h in heads],
        name=M.name,
    )


def reduct(M: FiniteStructure, kind: str, target: ReductTarget) -> FiniteStructure:
    """Dispatch to the reduct of the given kind."""
    if kind == KIND_PHI:
        assert isinstance(target, SymmetryGroup)
        return phi_reduct(M, target)
    if kind == KIND_EXQUISITE:
        assert isinstance(target, AtomicType)
        return exquisite_reduct(M, target)
    raise UsageError(f"Unknown reduct kind {kind!r}")


def check_encloses(
    M: FiniteStructure,
    A: Iterable[str],
    kind: str,
    target: ReductTarget,
    require_strong: bool = True,
) -> bool:
    """Whether reducing the substructure on A agrees with restricting the reduct of M."""
    subset = M.check_elements(A)
    if require_strong and not is_self_sufficient(M, subset, engine=ENGINE_FLOW):
        raise NotStrongBase(f"Base is not self-sufficient in {M.name}")
    inner = reduct(induced_substructure(M, subset), kind, target)
    outer = induced_substructure(reduct(M, kind, target), subset)
    return inner == outer


def check_reduces_class(A: FiniteStructure, kind: str, target: ReductTarget) -> bool:
    """Whether the reduct of a class member is a member of the target class."""
    if not in_class(A, engine=ENGINE_FLOW):
        raise NotInClass(f"{A.name} is not in the class")
    return in_class(reduct(A, kind, target), engine=ENGINE_FLOW)


def check_stronger(
    M: FiniteStructure, A: Iterable[str], kind: str, target: ReductTarget
) -> bool:
    """Whether A strong in M stays strong in the reduct of M."""
    subset = M.check_elements(A)
    if not is_self_sufficient(M, subset, engine=ENGINE_FLOW):
        raise NotStrongBase(f"Base is not self-sufficient in {M.name}")
    return is_self_sufficient(reduct(M, kind, target), subset, engine=ENGINE_FLOW)


def _require_strong_reduct(
    reduced: FiniteStructure, B: FiniteStructure, universe: Iterable[str]
) -> None:
    subset = B.check_elements(universe)
    if induced_substructure(B, subset) != reduced:
        raise PreconditionFailed(f"{B.name} does not extend the reduct", subset)
    if not is_self_sufficient(B, subset, engine=ENGINE_FLOW):
        raise PreconditionFailed(f"The reduct is not strong in {B.name}", subset)


def _section(H: SymmetryGroup, G: SymmetryGroup, rel: OrbitTuple) -> OrbitTuple:
    """Lex-least H-orbit inside the G-orbit of rel."""
    return min(
        (OrbitTuple(H.canonical(t)) for t in G.orbit(rel.entries)),
        key=lambda r: r.sort_key,
    )


def mixed_amalgam_subgroup(A: FiniteStructure, B: FiniteStructure) -> FiniteStructure:
    """H-structure C on B's universe with A ≤ C and φ(C) = B."""
    H, G = A.group, B.group
    reduced = phi_reduct(A, G)
    _require_strong_reduct(reduced, B, A.universe)
    inside = frozenset(A.universe)
    added = [_section(H, G, r) for r in B.relations if not r.points <= inside]
    C = FiniteStructure(
        group=H,
        universe=B.universe,
        relations=list(A.relations) + added,
        name=f"{A.name}*{B.name}",
    )
    if not is_self_sufficient(C, A.universe, engine=ENGINE_FLOW):
        raise VerificationFailed(f"{A.name} is not strong in the mixed amalgam")
    if phi_reduct(C, G) != B:
        raise VerificationFailed(f"Mixed amalgam does not reduce to {B.name}")
    _LOGGER.debug(f"Mixed amalgam of {A.name} and {B.name}: {len(added)} new orbits")
    return C


def mixed_amalgam_exquisite(
    A: FiniteStructure, B: FiniteStructure, q: AtomicType
) -> FiniteStructure:
    """Symmetric C with A ≤ C whose exquisite reduct has B as a strong substructure."""
    if not B.group.is_trivial:
        raise PreconditionFailed(f"{B.name} must carry the trivial group")
    reduced = exquisite_reduct(A, q)
    _require_strong_reduct(reduced, B, A.universe)
    inside = frozenset(A.universe)
    universe: List[str] = list(B.universe)
    relations: List[OrbitTuple] = list(A.relations)
    for rel in B.relations:
        if rel.points <= inside:
            continue
        tail = fresh_names(WITNESS_PREFIX, q.tail_len, universe)
        universe.extend(tail)
        relations.extend(generated_set(q, TypedTuple(head=rel.entries, tail=tail)))
    C = FiniteStructure(
        group=A.group, universe=universe, relations=relations, name=f"{A.name}*{B.name}"
    )
    if not is_self_sufficient(C, A.universe, engine=ENGINE_FLOW):
        raise VerificationFailed(f"{A.name} is not strong in the mixed amalgam")
    grown = exquisite_reduct(C, q)
    if induced_substructure(grown, B.universe) != B:
        raise VerificationFailed(f"Reduct of the mixed amalgam does not contain {B.name}")
    if not is_self_sufficient(grown, B.universe, engine=ENGINE_FLOW):
        raise VerificationFailed(f"{B.name} is not strong in the reduct of the mixed amalgam")
    _LOGGER.debug(
        f"Mixed amalgam of {A.name} and {B.name}: {C.size - B.size} witness points"
    )
    return C


def _certify(
    F: FiniteStructure,
    first: FiniteStructure,
    second: FiniteStructure,
    first_reduct: FiniteStructure,
    second_reduct: FiniteStructure,
) -> BenignPair:
    pair = BenignPair(
        base=F,
        first=first,
        second=second,
        base_strong=(
            is_self_sufficient(first, F.universe, engine=ENGINE_FLOW)
            and is_self_sufficient(second, F.universe, engine=ENGINE_FLOW)
        ),
        distinct_over_base=structure_isomorphism(first, second, fixed=F.universe) is None,
        reducts_isomorphic=structure_isomorphism(
            first_reduct, second_reduct, fixed=F.universe
        ) is not None,
    )
    if not pair.certified:
        _LOGGER.warning(f"Benign pair over {F.name} failed a check: {pair!r}")
    return pair


def benign_pair_subgroup(F: FiniteStructure, G: SymmetryGroup) -> BenignPair:
    """Extensions of F by one H-orbit and by two σ-related H-orbits on fresh points."""
    H = F.group
    if H.arity != G.arity or not H.is_subgroup_of(G):
        raise NotSubgroup(f"The group of {F.name} is not contained in the target group")
    if H.order == G.order:
        raise NotProperSubgroup(f"The group of {F.name} equals the target group")
    sigma = next(p for p in G.sorted_members if p not in H.members)
    heads = fresh_names(FRESH_HEAD_PREFIX, H.arity, F.universe)
    universe = F.universe + tuple(heads)
    one = canonicalize(H, heads)
    twisted = canonicalize(H, sigma.apply(heads))
    first = FiniteStructure(H, universe, list(F.relations) + [one], name=f"{F.name}+a")
    second = FiniteStructure(
        H, universe, list(F.relations) + [one, twisted], name=f"{F.name}+b"
    )
    return _certify(F, first, second, phi_reduct(first, G), phi_reduct(second, G))


def benign_pair_exquisite(F: FiniteStructure, q: AtomicType) -> BenignPair:
    """Extensions of F by n bare fresh points and by the same points as one orbit."""
    if not in_class(F, engine=ENGINE_FLOW):
        raise NotInClass(f"{F.name} is not in the class")
    heads = fresh_names(FRESH_HEAD_PREFIX, F.arity, F.universe)
    universe = F.universe + tuple(heads)
    first = FiniteStructure(F.group, universe, F.relations, name=f"{F.name}+a")
    second = FiniteStructure(
        F.group, universe, list(F.relations) + [canonicalize(F.group, heads)],
        name=f"{F.name}+b",
    )
    return _certify(
        F, first, second, exquisite_reduct(first, q), exquisite_reduct(second, q)
    )


def r_copy_check(
    B: FiniteStructure, A: Iterable[str], kind: str, target: ReductTarget
) -> bool:
    """Whether gluing δ(reduct of A) + 1 copies of B over A keeps the reduct in class."""
    base = B.check_elements(A)
    if not in_class(B, engine=ENGINE_FLOW):
        raise NotInClass(f"{B.name} is not in the class")
    if not is_self_sufficient(B, base, engine=ENGINE_FLOW):
        raise NotStrongBase(f"Base is not self-sufficient in {B.name}")
    reduced = reduct(induced_substructure(B, base), kind, target)
    copies = delta(reduced, reduced.universe) + 1
    parts = [B]
    taken = set(B.universe)
    for _ in range(copies - 1):
        copy, _ = disjoint_copy(B, fixed=base, avoid=taken)
        taken.update(copy.universe)
        parts.append(copy)
    D = iterated_amalgam(parts, base, name=f"{B.name}^{copies}")
    _LOGGER.debug(f"Glued {copies} copies of {B.name}: {D.size} elements")
    return in_class(reduct(D, kind, target), engine=ENGINE_FLOW)


def reduct_pipeline_check(
    state: GenericBuildState, G: SymmetryGroup, max_A: int, max_C: int
) -> Optional[AuditEntry]:
    """First realized extension of the approximant whose φ-reduct is not realized strongly."""
    M = state.current
    reduced = phi_reduct(M, G)
    for entry in audit_genericity(state, max_A, max_C).entries:
        if not entry.realized or entry.embedding is None:
            continue
        image = [v for _, v in entry.embedding]
        piece = phi_reduct(induced_substructure(M, image), G)
        if (
            induced_substructure(reduced, image) != piece
            or not is_self_sufficient(reduced, entry.base, engine=ENGINE_FLOW)
            or not is_self_sufficient(reduced, image, engine=ENGINE_FLOW)
        ):
            return entry
    return None

