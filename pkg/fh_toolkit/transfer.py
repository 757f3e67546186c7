"""Constructions that move a structure between symmetry levels.

Desymmetrization keeps relative predimension when passing from a G-structure
to an ordered one; relaxation and relaxed symmetrization do the same in the
other direction at the cost of one fresh point per new relation. The isoext
steps chain them into the finite moves of a back-and-forth between the two
pregeometries and check subset-wise dimension equality on every output.
"""
import logging
from typing import FrozenSet, Iterable, List, Optional, Tuple

import numpy as np

from .const import FRESH_PREFIX, FRESH_SEPARATOR
from .core import canonicalize, induced_substructure
from .errors import (
    ArityMismatch,
    DimMismatch,
    NotStrongBase,
    PreconditionFailed,
    VerificationFailed,
)
from .matroid import closure_table
from .predim import is_self_sufficient
from .subsets import SubsetTable
from .types import FiniteStructure, OrbitTuple, TransferResult

_LOGGER = logging.getLogger(__name__)


def _require_trivial(M: FiniteStructure) -> None:
    if not M.group.is_trivial:
        raise PreconditionFailed(f"{M.name} must carry the trivial group")


def _require_same_arity(M1: FiniteStructure, M2: FiniteStructure) -> None:
    if M1.arity != M2.arity:
        raise ArityMismatch(
            f"{M1.name} has arity {M1.arity}, {M2.name} has arity {M2.arity}"
        )


def fresh_point(entries: Iterable[str], taken: Iterable[str]) -> str:
    """Deterministic name of the point attached to a tuple."""
    used = set(taken)
    name = FRESH_PREFIX + FRESH_SEPARATOR.join(entries)
    while name in used:
        name += "'"
    return name


def _attachments(C: FiniteStructure, A: FrozenSet[str]) -> List[Tuple[str, OrbitTuple]]:
    """Fresh point for every relation of C not inside A."""
    taken = set(C.universe)
    out = []
    for rel in C.relations:
        if rel.points <= A:
            continue
        w = fresh_point(rel.entries, taken)
        taken.add(w)
        out.append((w, rel))
    return out


def relative_delta_witness(
    M1: FiniteStructure,
    M2: FiniteStructure,
    A: Iterable[str],
    only: Optional[np.ndarray] = None,
    bound: Optional[int] = None,
) -> Optional[FrozenSet[str]]:
    """First X with δ1(X/X∩A) != δ2(X/X∩A), over all X or the masks in only."""
    if set(M1.universe) != set(M2.universe):
        raise PreconditionFailed(f"{M1.name} and {M2.name} have different universes")
    t1 = SubsetTable(M1, bound=bound)
    t2 = SubsetTable(M2, bound=bound)
    a_mask = M1.mask_of(A)
    masks = t1.masks if only is None else only
    rel1 = t1.delta[masks].astype(np.int64) - t1.delta[masks & a_mask]
    rel2 = t2.delta[masks].astype(np.int64) - t2.delta[masks & a_mask]
    bad = np.nonzero(rel1 != rel2)[0]
    if bad.size:
        return M1.elements_of(int(masks[bad[0]]))
    return None


def dim_witness(
    M1: FiniteStructure, M2: FiniteStructure, bound: Optional[int] = None
) -> Optional[FrozenSet[str]]:
    """First subset on which d differs between two structures on one universe."""
    if set(M1.universe) != set(M2.universe):
        raise PreconditionFailed(f"{M1.name} and {M2.name} have different universes")
    d1 = SubsetTable(M1, bound=bound).dim
    d2 = SubsetTable(M2, bound=bound).dim
    bad = np.nonzero(d1 != d2)[0]
    if bad.size:
        return M1.elements_of(int(bad[0]))
    return None


def _check_strong_base(
    B: FiniteStructure,
    A_ns: FiniteStructure,
    output: FiniteStructure,
    bound: Optional[int],
) -> None:
    """A ≤ B gives A_ns ≤ output, and output stays in the class with B and A_ns."""
    source = SubsetTable(B, bound=bound)
    if not source.is_self_sufficient(A_ns.universe):
        return
    target = SubsetTable(output, bound=bound)
    if not target.is_self_sufficient(A_ns.universe):
        raise VerificationFailed(
            f"{A_ns.name} is strong in {B.name} but not in {output.name}"
        )
    if (
        source.in_class()
        and SubsetTable(A_ns, bound=bound).in_class()
        and not target.in_class()
    ):
        raise VerificationFailed(f"{output.name} left the class over a strong base")


def desymmetrize(
    B: FiniteStructure,
    A_ns: FiniteStructure,
    verify: bool = False,
    bound: Optional[int] = None,
) -> TransferResult:
    """Ordered copy of B over A_ns: one tuple per G-orbit of B not inside A."""
    _require_trivial(A_ns)
    _require_same_arity(B, A_ns)
    base = B.check_elements(A_ns.universe)
    relations = list(A_ns.relations) + [
        OrbitTuple(rel.entries) for rel in B.relations if not rel.points <= base
    ]
    output = FiniteStructure(
        group=A_ns.group, universe=B.universe, relations=relations,
        name=f"desym_{B.name}",
    )
    if verify:
        witness = relative_delta_witness(B, output, base, bound=bound)
        if witness is not None:
            raise DimMismatch("Relative predimension changed by desymmetrization", witness)
        _check_strong_base(B, A_ns, output, bound)
    return TransferResult(output=output, fresh_elements=(), dimension_match_checked=verify)


def relax(C: FiniteStructure, A: Iterable[str]) -> TransferResult:
    """Attach (w, a1..a_{n-1}) with a fresh w to every relation of C not inside A."""
    _require_trivial(C)
    base = C.check_elements(A)
    attached = _attachments(C, base)
    relations = list(C.relations) + [
        OrbitTuple((w,) + rel.entries[:-1]) for w, rel in attached
    ]
    output = FiniteStructure(
        group=C.group,
        universe=C.universe + tuple(w for w, _ in attached),
        relations=relations,
        name=f"rlx_{C.name}",
    )
    _LOGGER.debug(f"Relaxed {C.name} over {len(base)} points: {len(attached)} fresh")
    return TransferResult(output=output, fresh_elements=[w for w, _ in attached])


def relaxed_symmetrize(C: FiniteStructure, A_G: FiniteStructure) -> TransferResult:
    """A_G plus ⟨w,a1..a_{n-1}⟩ and ⟨w,a2..a_n⟩ for every relation of C not inside A."""
    _require_trivial(C)
    _require_same_arity(C, A_G)
    base = C.check_elements(A_G.universe)
    attached = _attachments(C, base)
    relations = list(A_G.relations)
    for w, rel in attached:
        relations.append(canonicalize(A_G.group, (w,) + rel.entries[:-1]))
        relations.append(canonicalize(A_G.group, (w,) + rel.entries[1:]))
    output = FiniteStructure(
        group=A_G.group,
        universe=C.universe + tuple(w for w, _ in attached),
        relations=relations,
        name=f"sym_{C.name}",
    )
    return TransferResult(output=output, fresh_elements=[w for w, _ in attached])


def good_set_masks(C: FiniteStructure, A: Iterable[str], universe: FiniteStructure) -> np.ndarray:
    """Masks Y of the relaxed universe that contain ā and w whenever they contain an (n-1)-block of ā."""
    base = C.check_elements(A)
    masks = np.arange(1 << universe.size, dtype=np.int64)
    good = np.ones(masks.shape, dtype=bool)
    for w, rel in _attachments(C, base):
        left = universe.mask_of(rel.entries[:-1])
        right = universe.mask_of(rel.entries[1:])
        whole = universe.mask_of(rel.entries + (w,))
        touches = ((masks & left) == left) | ((masks & right) == right)
        good &= ~touches | ((masks & whole) == whole)
    return masks[good]


def good_sets_agree(
    C: FiniteStructure, A_G: FiniteStructure, bound: Optional[int] = None
) -> Optional[FrozenSet[str]]:
    """First good set on which relax and relaxed_symmetrize disagree in δ(Y/Y∩A)."""
    relaxed = relax(C, A_G.universe).output
    symmetric = relaxed_symmetrize(C, A_G).output
    only = good_set_masks(C, A_G.universe, relaxed)
    return relative_delta_witness(relaxed, symmetric, A_G.universe, only=only, bound=bound)


def d_closed_masks(M: FiniteStructure, bound: Optional[int] = None) -> np.ndarray:
    """Masks of the d-closed subsets of M."""
    table = SubsetTable(M, bound=bound)
    cl = closure_table(table.dim, M.size)
    return table.masks[cl == table.masks]


def technical_lemma_check(
    B1: FiniteStructure,
    B2: FiniteStructure,
    A: Iterable[str],
    bound: Optional[int] = None,
) -> Optional[FrozenSet[str]]:
    """Witness against the d-closed-set criterion for equal dimension, or None.

    With A strong in both and d agreeing on A: δ must agree on Y∩A for Y
    d-closed in B1, and if δ(Y/Y∩A) agrees on every set d-closed in either
    structure then d agrees everywhere.
    """
    base = B1.check_elements(A)
    B2.check_elements(base)
    if not (is_self_sufficient(B1, base, bound=bound) and is_self_sufficient(B2, base, bound=bound)):
        raise NotStrongBase("Base must be self-sufficient in both structures")
    t1 = SubsetTable(B1, bound=bound)
    t2 = SubsetTable(B2, bound=bound)
    a_mask = B1.mask_of(base)
    inside_a = t1.masks[(t1.masks & ~a_mask) == 0]
    bad = np.nonzero(t1.dim[inside_a] != t2.dim[inside_a])[0]
    if bad.size:
        raise PreconditionFailed(
            "Dimension functions disagree on the base", B1.elements_of(int(inside_a[bad[0]]))
        )

    closed1 = d_closed_masks(B1, bound=bound)
    bad = np.nonzero(t1.delta[closed1 & a_mask] != t2.delta[closed1 & a_mask])[0]
    if bad.size:
        return B1.elements_of(int(closed1[bad[0]]))

    closed = np.union1d(closed1, d_closed_masks(B2, bound=bound))
    if relative_delta_witness(B1, B2, base, only=closed, bound=bound) is None:
        return dim_witness(B1, B2, bound=bound)
    return None


def _check_isoext_input(
    A1: FiniteStructure, A2: FiniteStructure, C: FiniteStructure, bound: Optional[int]
) -> FrozenSet[str]:
    if set(A1.universe) != set(A2.universe):
        raise PreconditionFailed(f"{A1.name} and {A2.name} have different universes")
    base = C.check_elements(A1.universe)
    if induced_substructure(C, base) != A1:
        raise PreconditionFailed(f"{A1.name} is not the substructure of {C.name} on its universe")
    if not is_self_sufficient(C, base, bound=bound):
        raise NotStrongBase(f"{A1.name} is not self-sufficient in {C.name}")
    witness = dim_witness(A1, A2, bound=bound)
    if witness is not None:
        raise DimMismatch(f"{A1.name} and {A2.name} disagree in dimension", witness)
    return base


def isoext_step_G_to_ns(
    A1: FiniteStructure,
    A2: FiniteStructure,
    C: FiniteStructure,
    bound: Optional[int] = None,
) -> Tuple[FiniteStructure, FiniteStructure]:
    """Extend a dimension-matched pair (A1 symmetric, A2 ordered) along A1 ≤ C."""
    _require_trivial(A2)
    base = _check_isoext_input(A1, A2, C, bound)
    B2 = desymmetrize(C, A2, bound=bound).output
    witness = dim_witness(C, B2, bound=bound)
    if witness is not None:
        raise DimMismatch("Desymmetrization changed dimension", witness)
    if not is_self_sufficient(B2, base, bound=bound):
        raise DimMismatch(f"{A2.name} is not self-sufficient in {B2.name}", base)
    _LOGGER.debug(f"G to ns step over {len(base)} points reached {C.size} points")
    return C, B2


def isoext_step_ns_to_G(
    A1: FiniteStructure,
    A2: FiniteStructure,
    C: FiniteStructure,
    bound: Optional[int] = None,
) -> Tuple[FiniteStructure, FiniteStructure]:
    """Extend a dimension-matched pair (A1 ordered, A2 symmetric) along A1 ≤ C."""
    _require_trivial(A1)
    base = _check_isoext_input(A1, A2, C, bound)
    B1 = relax(C, base).output
    B2 = relaxed_symmetrize(C, A2).output
    witness = dim_witness(B1, B2, bound=bound)
    if witness is not None:
        raise DimMismatch("Relaxation and relaxed symmetrization disagree", witness)
    if not is_self_sufficient(B2, base, bound=bound):
        raise DimMismatch(f"{A2.name} is not self-sufficient in {B2.name}", base)
    _LOGGER.debug(f"ns to G step over {len(base)} points reached {B1.size} points")
    return B1, B2


def isoext_chain(
    steps: Iterable[Tuple[str, FiniteStructure]],
    start: Tuple[FiniteStructure, FiniteStructure],
    bound: Optional[int] = None,
) -> List[Tuple[FiniteStructure, FiniteStructure]]:
    """Alternate isoext steps; each step names the side that is extended."""
    pairs = [start]
    left, right = start
    for direction, target in steps:
        if direction == "g2ns":
            left, right = isoext_step_G_to_ns(left, right, target, bound=bound)
        else:
            right, left = isoext_step_ns_to_G(right, left, target, bound=bound)
        pairs.append((left, right))
    return pairs

