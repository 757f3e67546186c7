"""Exquisite atomic types, their realizations and collision elimination.

An atomic type q(x;y) is stored as index tuples over its variables, head
first. Host structures always carry the full symmetric group.
"""
import functools
import itertools
import logging
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from .const import DEFAULT_REALIZATION_LIMIT, ENGINE_FLOW
from .core import automorphisms, canonicalize, fresh_names, make_structure
from .errors import (
    ArityMismatch,
    LengthMismatch,
    LiftVerificationFailed,
    NoCollision,
    NotInClass,
    PreconditionFailed,
    SearchBoundExceeded,
    VerificationFailed,
)
from .predim import in_class
from .subsets import SubsetTable
from .types import (
    AtomicType,
    CollisionReport,
    FiniteStructure,
    OrbitTuple,
    SymmetryGroup,
    TypedTuple,
    tuple_sort_key,
)

_LOGGER = logging.getLogger(__name__)

HEAD_PREFIX = "a"
TAIL_PREFIX = "b"
WITNESS_PREFIX = "w"
GLUE_SUFFIX = "'"

# Orbits of the arity-3 witness over a1..a3 (0..2) and b1..b8 (3..10).
BASE_RELATIONS = (
    (0, 3, 4),
    (1, 4, 5),
    (2, 3, 9),
    (0, 5, 6),
    (1, 6, 7),
    (2, 10, 5),
    (0, 7, 8),
    (1, 8, 9),
    (0, 9, 10),
)

Realizations = Tuple[Tuple[TypedTuple, ...], Tuple[TypedTuple, ...]]


def variable_names(q: AtomicType) -> Tuple[str, ...]:
    """Element names of the canonical structure: a1..an then b1..bl."""
    return tuple(f"{HEAD_PREFIX}{i + 1}" for i in range(q.arity)) + tuple(
        f"{TAIL_PREFIX}{j + 1}" for j in range(q.tail_len)
    )


def identity_tuple(q: AtomicType) -> TypedTuple:
    """The tuple (a1..an; b1..bl) of the canonical structure."""
    names = variable_names(q)
    return TypedTuple(head=names[: q.arity], tail=names[q.arity:])


def canonical_structure(q: AtomicType) -> FiniteStructure:
    """The structure on q's variables whose relations are exactly q's."""
    names = variable_names(q)
    return make_structure(
        SymmetryGroup.symmetric(q.arity),
        names,
        [[names[i] for i in rel] for rel in q.relations],
        name=q.name,
    )


def _check_lengths(q: AtomicType, t: TypedTuple) -> None:
    if len(t.head) != q.arity or len(t.tail) != q.tail_len:
        raise LengthMismatch(
            f"Tuple {t} has shape ({len(t.head)};{len(t.tail)}), "
            f"type {q.name} needs ({q.arity};{q.tail_len})"
        )


def generated_set(q: AtomicType, t: TypedTuple) -> FrozenSet[OrbitTuple]:
    """Orbits q forces on the entries of t."""
    _check_lengths(q, t)
    group = SymmetryGroup.symmetric(q.arity)
    entries = t.entries
    return frozenset(canonicalize(group, [entries[i] for i in rel]) for rel in q.relations)


def type_of(M: FiniteStructure, t: TypedTuple, name: str = "q") -> AtomicType:
    """The complete atomic type of t in M."""
    entries = t.entries
    position = {e: i for i, e in enumerate(entries)}
    inside = frozenset(entries)
    return AtomicType(
        arity=len(t.head),
        tail_len=len(t.tail),
        relations=[
            [position[e] for e in rel.entries]
            for rel in M.relations
            if rel.points <= inside
        ],
        name=name,
    )


def check_nice(q: AtomicType) -> bool:
    """Head of length n, tail of at least 2n, no head orbit and d_q = n - 1."""
    n = q.arity
    return (
        q.head_len == n
        and q.tail_len >= 2 * n
        and not q.head_related
        and q.d_q == n - 1
    )


def check_intertwined(
    q: AtomicType, bound: Optional[int] = None
) -> Tuple[bool, Optional[FrozenSet[str]]]:
    """Whether δ(all/X) < 0 for every proper X with more than n points."""
    M = canonical_structure(q)
    table = SubsetTable(M, bound=bound)
    full = M.full_mask
    bad = np.nonzero(
        (table.sizes > q.arity)
        & (table.masks != full)
        & (table.delta <= table.delta[full])
    )[0]
    if bad.size:
        witness = M.elements_of(int(bad[0]))
        _LOGGER.debug(f"{q.name} is not intertwined: {sorted(witness)}")
        return False, witness
    return True, None


def check_without_symmetry(q: AtomicType) -> bool:
    """Whether the canonical structure is rigid."""
    return len(automorphisms(canonical_structure(q), limit=2)) == 1


@functools.lru_cache(maxsize=None)
def check_exquisite(q: AtomicType, bound: Optional[int] = None) -> bool:
    """Nice, without symmetry and intertwined."""
    if not check_nice(q):
        _LOGGER.debug(f"{q.name} is not nice")
        return False
    if not check_without_symmetry(q):
        _LOGGER.debug(f"{q.name} has a non-trivial automorphism")
        return False
    ok, _ = check_intertwined(q, bound=bound)
    if ok:
        # Forced by niceness: t_q = l + 1 > 2n.
        assert q.t_q == q.tail_len + 1 and q.t_q > 2 * q.arity
    return ok


def base_exquisite_3() -> AtomicType:
    """The arity-3 exquisite type on a1..a3; b1..b8."""
    return AtomicType(arity=3, tail_len=8, relations=BASE_RELATIONS, name="q3")


def lift_exquisite(q: AtomicType, bound: Optional[int] = None) -> AtomicType:
    """An exquisite type of arity k+1 built from one of arity k."""
    if not check_exquisite(q, bound=bound):
        raise PreconditionFailed(f"{q.name} is not exquisite")
    k = q.arity
    r = min(q.relations)
    avoiding = [j for j in range(k, q.size) if j not in r]
    if len(avoiding) < k + 1:
        raise LiftVerificationFailed(
            f"Only {len(avoiding)} tail variables of {q.name} avoid {r}"
        )
    tail_order = avoiding + [j for j in range(k, q.size) if j in r]
    new_index = {i: i for i in range(k)}
    for pos, j in enumerate(tail_order):
        new_index[j] = k + 1 + pos
    a_new = k
    b = [k + 1 + pos for pos in range(q.tail_len)]
    c = [k + 1 + q.tail_len + i for i in range(k + 1)]

    relations: List[Tuple[int, ...]] = []
    for rel in q.relations:
        moved = tuple(new_index[i] for i in rel)
        relations.append((c[1] if rel == r else c[0],) + moved)
    for i in range(k + 1):
        wrap = tuple(c[(i + j) % (k + 1)] for j in range(k - 1))
        relations.append((a_new, b[i]) + wrap)

    lifted = AtomicType(
        arity=k + 1,
        tail_len=q.tail_len + k + 1,
        relations=relations,
        name=f"q{k + 1}",
    )
    if not check_exquisite(lifted, bound=bound):
        raise LiftVerificationFailed(f"Lift of {q.name} to arity {k + 1} is not exquisite")
    _LOGGER.debug(
        f"Lifted {q.name} to {lifted.name}: {lifted.size} variables, {lifted.t_q} orbits"
    )
    return lifted


@functools.lru_cache(maxsize=None)
def exquisite_for_arity(n: int, bound: Optional[int] = None) -> AtomicType:
    """The base type lifted n - 3 times."""
    if n < 3:
        raise PreconditionFailed(f"No exquisite type of arity {n} is constructed below 3")
    if n == 3:
        return base_exquisite_3()
    return lift_exquisite(exquisite_for_arity(n - 1, bound=bound), bound=bound)


def _check_host(M: FiniteStructure, q: AtomicType) -> None:
    if M.arity != q.arity:
        raise ArityMismatch(f"{M.name} has arity {M.arity}, {q.name} has {q.arity}")
    if not M.group.is_full:
        raise PreconditionFailed(f"{M.name} is not a symmetric structure")


def _search_plan(
    q: AtomicType,
) -> Tuple[List[int], List[Optional[int]], List[List[Tuple[int, ...]]], List[int]]:
    """Variable order, an earlier related variable per step, and orbits closed per step."""
    incident: Dict[int, List[Tuple[int, ...]]] = {v: [] for v in range(q.size)}
    for rel in q.relations:
        for v in rel:
            incident[v].append(rel)
    order: List[int] = []
    anchors: List[Optional[int]] = []
    placed: Set[int] = set()
    while len(order) < q.size:

        def score(v: int) -> Tuple[int, int, int]:
            shared = sum(1 for rel in incident[v] if placed & set(rel))
            return (-shared, -len(incident[v]), v)

        v = min((u for u in range(q.size) if u not in placed), key=score)
        anchors.append(
            next(
                (pos for pos, u in enumerate(order)
                 if any(u in rel for rel in incident[v])),
                None,
            )
        )
        order.append(v)
        placed.add(v)
    position = {v: pos for pos, v in enumerate(order)}
    closing: List[List[Tuple[int, ...]]] = [[] for _ in order]
    for rel in q.relations:
        closing[max(position[v] for v in rel)].append(rel)
    degree = [len(incident[v]) for v in order]
    return order, anchors, closing, degree


def _assignments(M: FiniteStructure, q: AtomicType, exact: bool) -> List[Tuple[str, ...]]:
    """Injective assignments realizing q's orbits, exactly if asked."""
    order, anchors, closing, degree = _search_plan(q)
    free = sum(1 for a in anchors if a is None)
    if M.size ** free > DEFAULT_REALIZATION_LIMIT:
        raise SearchBoundExceeded(
            f"{q.name} has {free} unanchored variables over {M.size} elements"
        )
    neighbours = {
        e: tuple(
            x for x in M.universe
            if x != e and any(x in M.relations[i].points for i in M.incidence[e])
        )
        for e in M.universe
    }
    image: List[Optional[str]] = [None] * q.size
    used: Set[str] = set()
    out: List[Tuple[str, ...]] = []

    def extend(pos: int) -> None:
        if pos == q.size:
            out.append(tuple(str(e) for e in image))
            return
        v = order[pos]
        anchor = anchors[pos]
        pool = M.universe if anchor is None else neighbours[str(image[order[anchor]])]
        for y in pool:
            if y in used or len(M.incidence[y]) < degree[pos]:
                continue
            image[v] = y
            if not all(
                M.has_orbit([str(image[i]) for i in rel]) for rel in closing[pos]
            ):
                continue
            if exact:
                inside = used | {y}
                gained = sum(1 for i in M.incidence[y] if M.relations[i].points <= inside)
                if gained != len(closing[pos]):
                    continue
            used.add(y)
            extend(pos + 1)
            used.discard(y)
        image[v] = None

    extend(0)
    return sorted(out, key=tuple_sort_key)


@functools.lru_cache(maxsize=64)
def _realization_lists(M: FiniteStructure, q: AtomicType) -> Realizations:
    _check_host(M, q)
    n = q.arity

    def typed(entries: Tuple[str, ...]) -> TypedTuple:
        return TypedTuple(head=entries[:n], tail=entries[n:])

    plus = tuple(typed(t) for t in _assignments(M, q, exact=False))
    hat = tuple(
        t for t in (typed(e) for e in _assignments(M, q, exact=True))
        if all(u == t or len(u.points & t.points) <= n for u in plus)
    )
    _LOGGER.debug(
        f"{q.name} in {M.name}: {len(plus)} positive, {len(hat)} guarded realizations"
    )
    return plus, hat


def plus_realizations(M: FiniteStructure, q: AtomicType) -> List[TypedTuple]:
    """Injective tuples satisfying every orbit q lists, ignoring its negations."""
    return list(_realization_lists(M, q)[0])


def realizations(M: FiniteStructure, q: AtomicType) -> List[TypedTuple]:
    """Tuples realizing q exactly and overlapping no other q⁺ tuple in more than n points."""
    return list(_realization_lists(M, q)[1])


def positive_heads(M: FiniteStructure, q: AtomicType) -> FrozenSet[Tuple[str, ...]]:
    """Heads ā with some ȳ such that q̂(ā;ȳ) holds."""
    return frozenset(t.head for t in realizations(M, q))


def _colliding_pairs(
    q: AtomicType, tuples: Sequence[TypedTuple]
) -> List[Tuple[TypedTuple, TypedTuple]]:
    generated = [generated_set(q, t) for t in tuples]
    return [
        (tuples[i], tuples[j])
        for i, j in itertools.combinations(range(len(tuples)), 2)
        if generated[i] & generated[j]
    ]


def collisions(M: FiniteStructure, q: AtomicType) -> CollisionReport:
    """Counts of colliding q̂ pairs and of colliding q⁺ pairs."""
    plus, hat = _realization_lists(M, q)
    strong = _colliding_pairs(q, hat)
    weak = _colliding_pairs(q, plus)
    return CollisionReport(c=len(strong), w=len(weak), witnesses=strong)


def _as_orbits(M: FiniteStructure, R: Iterable[Sequence[str]]) -> Set[OrbitTuple]:
    return {
        r if isinstance(r, OrbitTuple) else canonicalize(M.group, r) for r in R
    }


def is_adjacency_loop(
    M: FiniteStructure,
    q: AtomicType,
    R: Iterable[Sequence[str]],
    seq: Sequence[TypedTuple],
) -> Tuple[bool, bool, bool]:
    """Whether seq is an R-adjacency chain, an R-adjacency loop and a proper one."""
    orbits = _as_orbits(M, R)
    if not seq:
        return True, False, False
    guarded = set(realizations(M, q))
    generated = [generated_set(q, t) for t in seq]
    chain = (
        len(set(seq)) == len(seq)
        and all(t in guarded for t in seq)
        and bool(generated[0] & orbits)
        and all(generated[i] & generated[i + 1] for i in range(len(seq) - 1))
    )
    if not chain:
        return False, False, False
    last = generated[-1]
    if len(seq) == 1:
        loop = len(orbits & last) >= 2
    else:
        shared = generated[-2] & last
        if len(shared) != 1:
            return True, False, False
        reach = orbits.union(*generated[:-2]) - shared
        loop = bool(last & reach)
    return True, loop, loop and not last <= orbits


def loop_dimension_drop(
    M: FiniteStructure,
    q: AtomicType,
    B: Iterable[str],
    R: Iterable[Sequence[str]],
    seq: Sequence[TypedTuple],
) -> Tuple[int, int]:
    """|B| − |R| before and after adding the points and orbits of seq."""
    base = M.check_elements(B)
    orbits = _as_orbits(M, R)
    points = base.union(*(t.points for t in seq))
    grown = orbits.union(*(generated_set(q, t) for t in seq))
    return len(base) - len(orbits), len(points) - len(grown)


def check_asocial(
    M: FiniteStructure, q: AtomicType
) -> Optional[Tuple[TypedTuple, TypedTuple]]:
    """A colliding pair sharing more than one orbit, or None."""
    for first, second in collisions(M, q).witnesses:
        if len(generated_set(q, first) & generated_set(q, second)) != 1:
            return first, second
    return None


def find_unique_orbits(
    M: FiniteStructure, q: AtomicType
) -> List[Tuple[OrbitTuple, TypedTuple]]:
    """Orbits covered by a single q̂ tuple that itself takes part in a collision."""
    hat = realizations(M, q)
    report = collisions(M, q)
    collided = {t for pair in report.witnesses for t in pair}
    generated = {t: generated_set(q, t) for t in hat}
    out = []
    for r in M.relations:
        covering = [t for t in hat if r in generated[t]]
        if len(covering) == 1 and covering[0] in collided:
            out.append((r, covering[0]))
    return out


def decollide_step(A: FiniteStructure, q: AtomicType) -> FiniteStructure:
    """Detach the lex-least q̂-unique orbit by giving its head a fresh tail."""
    _check_host(A, q)
    if not in_class(A, engine=ENGINE_FLOW):
        raise NotInClass(f"{A.name} is not in the class")
    if collisions(A, q).c == 0:
        raise NoCollision(f"{A.name} has no {q.name} collisions")
    unique = find_unique_orbits(A, q)
    if not unique:
        raise VerificationFailed(f"{A.name} has collisions but no unique orbit")
    r, t = unique[0]
    fresh = fresh_names(WITNESS_PREFIX, q.tail_len, A.universe)
    attached = generated_set(q, TypedTuple(head=t.head, tail=fresh))
    _LOGGER.debug(f"Detaching {r} from {t} in {A.name}, new tail {fresh}")
    return FiniteStructure(
        group=A.group,
        universe=A.universe + tuple(fresh),
        relations=[x for x in A.relations if x != r] + list(attached),
        name=A.name,
    )


def decollide(A: FiniteStructure, q: AtomicType) -> FiniteStructure:
    """Repeat decollide_step until no collision is left."""
    _check_host(A, q)
    if not in_class(A, engine=ENGINE_FLOW):
        raise NotInClass(f"{A.name} is not in the class")
    current = A
    report = collisions(current, q)
    steps = 0
    while report.c:
        step = decollide_step(current, q)
        after = collisions(step, q)
        if after.w >= report.w:
            raise VerificationFailed(
                f"Weak collisions of {A.name} did not drop ({report.w} -> {after.w})"
            )
        current, report = step, after
        steps += 1
    _LOGGER.debug(f"Decollided {A.name} in {steps} steps, {current.size} elements")
    return current


def glue_copies(
    q: AtomicType,
    left: int = 0,
    right: int = 0,
    bijection: Optional[Sequence[int]] = None,
) -> FiniteStructure:
    """Two canonical copies of q sharing one orbit: left copy's orbit left, right's orbit right.

    Entry p of the right orbit is identified with entry bijection[p] of the
    left one.
    """
    n = q.arity
    if bijection is None:
        bijection = list(range(n))
    if sorted(bijection) != list(range(n)):
        raise PreconditionFailed(f"{list(bijection)} is not a permutation of 0..{n - 1}")
    names = variable_names(q)
    glued = {
        q.relations[right][p]: names[q.relations[left][bijection[p]]] for p in range(n)
    }
    primed = [glued.get(i, f"{names[i]}{GLUE_SUFFIX}") for i in range(q.size)]
    tuples = [[names[i] for i in rel] for rel in q.relations]
    tuples += [[primed[i] for i in rel] for rel in q.relations]
    return make_structure(
        SymmetryGroup.symmetric(n), set(names) | set(primed), tuples, name="glued"
    )
