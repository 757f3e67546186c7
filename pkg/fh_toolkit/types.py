"""Types used in the FH toolkit."""
import logging
import re
from functools import cached_property
from typing import (
    Any,
    Dict,
    FrozenSet,
    Iterable,
    List,
    Optional,
    Sequence,
    Set,
    Tuple,
)

import attr
from sympy.combinatorics import Permutation as SympyPermutation
from sympy.combinatorics import PermutationGroup

from .const import MAX_ARITY
from .errors import ArityMismatch, GroupClosureError, UnknownElement

_LOGGER = logging.getLogger(__name__)

ElementKey = Tuple[Tuple[int, int, str], ...]


def element_sort_key(element: str) -> ElementKey:
    """Natural sort key for element names, so that b2 sorts before b10."""
    chunks = re.split(r"(\d+)", element)
    return tuple(
        (0, int(chunk), "") if chunk.isdigit() else (1, 0, chunk)
        for chunk in chunks
        if chunk
    )


def tuple_sort_key(entries: Sequence[str]) -> Tuple[ElementKey, ...]:
    """Lexicographic key of a tuple of elements."""
    return tuple(element_sort_key(e) for e in entries)


def sort_elements(elements: Iterable[str]) -> Tuple[str, ...]:
    """Sort and de-duplicate element names."""
    return tuple(sorted(set(str(e) for e in elements), key=element_sort_key))


def validate_positive(_: Any, __: Any, val: Optional[int]) -> None:
    """Validate a positive int."""
    if val is not None and val <= 0:
        raise ValueError(f"Expected positive number: {val}")


def validate_non_negative(_: Any, __: Any, val: Optional[int]) -> None:
    """Validate a non-negative int."""
    if val is not None and val < 0:
        raise ValueError(f"Expected non-negative number: {val}")


def validate_distinct(_: Any, __: Any, val: Sequence[Any]) -> None:
    """Validate that a sequence has no repeated entries."""
    if len(set(val)) != len(val):
        raise ValueError(f"Expected distinct entries: {val}")


@attr.s(frozen=True)
class Permutation:
    """A permutation of {1..n}, as its sequence of images."""

    images: Tuple[int, ...] = attr.ib(converter=tuple)

    @images.validator
    def _check_bijection(self, _: Any, val: Tuple[int, ...]) -> None:
        if sorted(val) != list(range(1, len(val) + 1)):
            raise ValueError(f"Not a permutation of 1..{len(val)}: {val}")

    @property
    def size(self) -> int:
        """Number of points moved or fixed."""
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        """The identity on n points."""
        return cls(tuple(range(1, n + 1)))

    def is_identity(self) -> bool:
        """Whether every point is fixed."""
        return self.images == tuple(range(1, self.size + 1))

    def apply(self, entries: Sequence[str]) -> Tuple[str, ...]:
        """Act on a tuple: (a_1..a_n) -> (a_σ(1)..a_σ(n))."""
        return tuple(entries[i - 1] for i in self.images)


@attr.s(frozen=True)
class SymmetryGroup:
    """A subgroup of S_n, stored fully closed."""

    arity: int = attr.ib(converter=int, validator=[validate_positive])
    members: FrozenSet[Permutation] = attr.ib(converter=frozenset)

    def __attrs_post_init__(self) -> None:
        """Check closure invariants."""
        if self.arity > MAX_ARITY:
            raise ArityMismatch(f"Arity {self.arity} exceeds {MAX_ARITY}")
        if Permutation.identity(self.arity) not in self.members:
            raise ValueError("Group does not contain the identity")
        for member in self.members:
            if member.size != self.arity:
                raise ArityMismatch(
                    f"Permutation {member.images} has length {member.size}, "
                    f"expected {self.arity}"
                )

    @classmethod
    def trivial(cls, n: int) -> "SymmetryGroup":
        """The trivial group on n points."""
        return cls(n, [Permutation.identity(n)])

    @classmethod
    def symmetric(cls, n: int) -> "SymmetryGroup":
        """The full symmetric group S_n."""
        if n > MAX_ARITY:
            raise ArityMismatch(f"Arity {n} exceeds {MAX_ARITY}")
        gens = [SympyPermutation(list(range(n)))]
        if n > 1:
            gens.append(SympyPermutation(list(range(1, n)) + [0]))
            gens.append(SympyPermutation([1, 0] + list(range(2, n))))
        return cls(n, _close(n, gens))

    @classmethod
    def from_generators(
        cls,
        n: int,
        generators: Iterable[Permutation],
        max_order: Optional[int] = None,
    ) -> "SymmetryGroup":
        """Close a set of generators into a group."""
        if n > MAX_ARITY:
            raise ArityMismatch(f"Arity {n} exceeds {MAX_ARITY}")
        gens = []
        for generator in generators:
            if generator.size != n:
                raise ArityMismatch(
                    f"Generator {generator.images} has length {generator.size}, "
                    f"expected {n}"
                )
            gens.append(SympyPermutation([i - 1 for i in generator.images]))
        if not gens:
            gens = [SympyPermutation(list(range(n)))]
        order = PermutationGroup(gens).order()
        if max_order is not None and order > max_order:
            raise GroupClosureError(
                f"Generators close to a group of order {order}, "
                f"bound is {max_order}"
            )
        return cls(n, _close(n, gens))

    @cached_property
    def order(self) -> int:
        """Number of members."""
        return len(self.members)

    @cached_property
    def is_trivial(self) -> bool:
        """Whether this is the trivial group."""
        return self.order == 1

    @cached_property
    def is_full(self) -> bool:
        """Whether this is all of S_n."""
        return self.order == _factorial(self.arity)

    @cached_property
    def sorted_members(self) -> Tuple[Permutation, ...]:
        """Members in lexicographic order of their images."""
        return tuple(sorted(self.members, key=lambda p: p.images))

    def is_subgroup_of(self, other: "SymmetryGroup") -> bool:
        """Whether every member of this group lies in the other."""
        return self.arity == other.arity and self.members <= other.members

    def orbit(self, entries: Sequence[str]) -> FrozenSet[Tuple[str, ...]]:
        """All tuples in the orbit of entries."""
        return frozenset(p.apply(entries) for p in self.members)

    def canonical(self, entries: Sequence[str]) -> Tuple[str, ...]:
        """Lexicographically least member of the orbit of entries."""
        if self.is_trivial:
            return tuple(entries)
        if self.is_full:
            return tuple(sorted(entries, key=element_sort_key))
        return min(
            (p.apply(entries) for p in self.members),
            key=tuple_sort_key,
        )

    def generators(self) -> Tuple[Permutation, ...]:
        """A small generating set, chosen greedily in lexicographic order."""
        chosen: List[Permutation] = []
        span: Set[Permutation] = {Permutation.identity(self.arity)}
        for member in self.sorted_members:
            if member in span:
                continue
            chosen.append(member)
            span = set(
                SymmetryGroup.from_generators(self.arity, chosen).members
            )
            if len(span) == self.order:
                break
        return tuple(chosen)


def _factorial(n: int) -> int:
    """n!"""
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _close(n: int, gens: List[SympyPermutation]) -> FrozenSet[Permutation]:
    """Enumerate the group generated by sympy permutations."""
    group = PermutationGroup([SympyPermutation(g.array_form, size=n) for g in gens])
    return frozenset(
        Permutation(tuple(i + 1 for i in p.array_form)) for p in group.generate()
    )


@attr.s(frozen=True)
class OrbitTuple:
    """Canonical representative of a G-orbit of a distinct-entry tuple."""

    entries: Tuple[str, ...] = attr.ib(
        converter=tuple, validator=[validate_distinct]
    )

    @cached_property
    def sort_key(self) -> Tuple[ElementKey, ...]:
        """Ordering key used for sorted relation storage."""
        return tuple_sort_key(self.entries)

    @cached_property
    def points(self) -> FrozenSet[str]:
        """The set of entries."""
        return frozenset(self.entries)

    def __str__(self) -> str:
        return "<" + ",".join(self.entries) + ">"


def sort_relations(relations: Iterable[OrbitTuple]) -> Tuple[OrbitTuple, ...]:
    """Sort and de-duplicate orbit tuples."""
    return tuple(sorted(set(relations), key=lambda r: r.sort_key))


@attr.s(frozen=True)
class FiniteStructure:
    """A finite relational structure whose relation is invariant under a group."""

    group: SymmetryGroup = attr.ib(validator=attr.validators.instance_of(SymmetryGroup))
    universe: Tuple[str, ...] = attr.ib(converter=sort_elements)
    relations: Tuple[OrbitTuple, ...] = attr.ib(converter=sort_relations)
    name: str = attr.ib(default="M", eq=False)

    def __attrs_post_init__(self) -> None:
        """Check tuples are in range, of the right length and canonical."""
        known = set(self.universe)
        for rel in self.relations:
            if len(rel.entries) != self.group.arity:
                raise ArityMismatch(
                    f"Tuple {rel} has length {len(rel.entries)}, "
                    f"expected {self.group.arity}"
                )
            missing = [e for e in rel.entries if e not in known]
            if missing:
                raise UnknownElement(f"Tuple {rel} uses unknown elements {missing}")
            if self.group.canonical(rel.entries) != rel.entries:
                raise ValueError(f"Tuple {rel} is not a canonical representative")

    @property
    def arity(self) -> int:
        """Arity of the relation."""
        return self.group.arity

    @property
    def size(self) -> int:
        """Number of elements."""
        return len(self.universe)

    @cached_property
    def index(self) -> Dict[str, int]:
        """Dense integer position of each element."""
        return {e: i for i, e in enumerate(self.universe)}

    @cached_property
    def full_mask(self) -> int:
        """Bitmask of the whole universe."""
        return (1 << self.size) - 1

    @cached_property
    def relation_masks(self) -> Tuple[int, ...]:
        """Bitmask of the points of each stored orbit."""
        return tuple(self.mask_of(rel.entries) for rel in self.relations)

    @cached_property
    def orbit_keys(self) -> FrozenSet[Tuple[str, ...]]:
        """Canonical entries of every stored orbit."""
        return frozenset(rel.entries for rel in self.relations)

    @cached_property
    def point_sets(self) -> FrozenSet[FrozenSet[str]]:
        """Point sets of the stored orbits."""
        return frozenset(rel.points for rel in self.relations)

    @cached_property
    def incidence(self) -> Dict[str, Tuple[int, ...]]:
        """Indices of the orbits each element takes part in."""
        out: Dict[str, List[int]] = {e: [] for e in self.universe}
        for i, rel in enumerate(self.relations):
            for e in rel.entries:
                out[e].append(i)
        return {e: tuple(v) for e, v in out.items()}

    def has_orbit(self, entries: Sequence[str]) -> bool:
        """Whether the orbit of a raw tuple is related."""
        if len(set(entries)) != len(entries) or len(entries) != self.arity:
            return False
        return self.group.canonical(entries) in self.orbit_keys

    def mask_of(self, elements: Iterable[str]) -> int:
        """Bitmask of a set of elements."""
        mask = 0
        for e in elements:
            try:
                mask |= 1 << self.index[e]
            except KeyError:
                raise UnknownElement(f"Unknown element {e!r} in {self.name}")
        return mask

    def elements_of(self, mask: int) -> FrozenSet[str]:
        """Elements of a bitmask."""
        return frozenset(
            e for i, e in enumerate(self.universe) if mask >> i & 1
        )

    def check_elements(self, elements: Iterable[str]) -> FrozenSet[str]:
        """Validate a set of elements against the universe."""
        out = frozenset(elements)
        missing = out - set(self.universe)
        if missing:
            raise UnknownElement(
                f"Unknown elements {sorted(missing, key=element_sort_key)} "
                f"in {self.name}"
            )
        return out


@attr.s(frozen=True)
class Embedding:
    """An injective, relation preserving and reflecting map between structures."""

    source: FiniteStructure = attr.ib(
        validator=attr.validators.instance_of(FiniteStructure)
    )
    target: FiniteStructure = attr.ib(
        validator=attr.validators.instance_of(FiniteStructure)
    )
    mapping: Tuple[Tuple[str, str], ...] = attr.ib(
        converter=lambda m: tuple(
            sorted(dict(m).items(), key=lambda kv: element_sort_key(kv[0]))
        )
    )

    @mapping.validator
    def _check_injective(self, _: Any, val: Tuple[Tuple[str, str], ...]) -> None:
        images = [v for _, v in val]
        if len(set(images)) != len(images):
            raise ValueError(f"Map is not injective: {val}")

    def as_dict(self) -> Dict[str, str]:
        """The map as a dictionary."""
        return dict(self.mapping)


@attr.s(frozen=True)
class ClosureCertificate:
    """Self-sufficient closure of a set, with the work done to find it."""

    input: FrozenSet[str] = attr.ib(converter=frozenset)
    closure: FrozenSet[str] = attr.ib(converter=frozenset)
    minimizers_examined: int = attr.ib(validator=[validate_non_negative])
    dimension: int = attr.ib()

    @closure.validator
    def _check_contains_input(self, _: Any, val: FrozenSet[str]) -> None:
        if not self.input <= val:
            raise ValueError("Closure does not contain its input")


@attr.s(frozen=True)
class TransferResult:
    """Output of a construction moving between symmetry levels."""

    output: FiniteStructure = attr.ib(
        validator=attr.validators.instance_of(FiniteStructure)
    )
    fresh_elements: FrozenSet[str] = attr.ib(converter=frozenset)
    dimension_match_checked: bool = attr.ib(default=False)


@attr.s(frozen=True)
class AmalgamCheck:
    """Outcome of auditing a simple amalgam."""

    ok: bool = attr.ib()
    witness: Optional[FrozenSet[str]] = attr.ib(default=None)

    def __bool__(self) -> bool:
        return self.ok


def _sorted_index_tuples(
    relations: Iterable[Sequence[int]],
) -> Tuple[Tuple[int, ...], ...]:
    return tuple(sorted(set(tuple(sorted(int(i) for i in r)) for r in relations)))


@attr.s(frozen=True)
class AtomicType:
    """A complete quantifier-free type q(x;y) of a symmetric relation."""

    arity: int = attr.ib(converter=int, validator=[validate_positive])
    tail_len: int = attr.ib(converter=int, validator=[validate_non_negative])
    relations: Tuple[Tuple[int, ...], ...] = attr.ib(converter=_sorted_index_tuples)
    name: str = attr.ib(default="q", eq=False)

    @relations.validator
    def _check_indices(self, _: Any, val: Tuple[Tuple[int, ...], ...]) -> None:
        for rel in val:
            if len(rel) != self.arity:
                raise ValueError(f"Relation {rel} does not have arity {self.arity}")
            if len(set(rel)) != len(rel):
                raise ValueError(f"Relation {rel} repeats an index")
            if rel[0] < 0 or rel[-1] >= self.size:
                raise ValueError(f"Relation {rel} out of range 0..{self.size - 1}")

    @property
    def size(self) -> int:
        """Number of variables, head plus tail."""
        return self.arity + self.tail_len

    @property
    def head_len(self) -> int:
        """Number of head variables."""
        return self.arity

    @property
    def t_q(self) -> int:
        """Number of generated orbits."""
        return len(self.relations)

    @property
    def d_q(self) -> int:
        """Predimension of a realization."""
        return self.size - self.t_q

    @property
    def head_related(self) -> bool:
        """Whether the head variables form a related orbit."""
        return tuple(range(self.arity)) in self.relations


@attr.s(frozen=True)
class TypedTuple:
    """A head and tail of distinct host elements."""

    head: Tuple[str, ...] = attr.ib(converter=tuple)
    tail: Tuple[str, ...] = attr.ib(converter=tuple)

    @tail.validator
    def _check_distinct(self, _: Any, val: Tuple[str, ...]) -> None:
        validate_distinct(None, None, self.head + val)

    @property
    def entries(self) -> Tuple[str, ...]:
        """Head followed by tail."""
        return self.head + self.tail

    @cached_property
    def points(self) -> FrozenSet[str]:
        """Set of entries."""
        return frozenset(self.entries)

    def __str__(self) -> str:
        return "(" + ",".join(self.head) + ";" + ",".join(self.tail) + ")"


@attr.s(frozen=True)
class CollisionReport:
    """Collision and weak-collision counts of a structure."""

    c: int = attr.ib(validator=[validate_non_negative])
    w: int = attr.ib(validator=[validate_non_negative])
    witnesses: Tuple[Tuple[TypedTuple, TypedTuple], ...] = attr.ib(
        converter=tuple, factory=tuple
    )

    @w.validator
    def _check_order(self, _: Any, val: int) -> None:
        if self.c > val:
            raise ValueError(f"More collisions ({self.c}) than weak ones ({val})")


@attr.s(frozen=True)
class ExtensionTemplate:
    """A catalog entry: a structure whose first base_size points are strong in it."""

    structure: FiniteStructure = attr.ib(
        validator=attr.validators.instance_of(FiniteStructure)
    )
    base_size: int = attr.ib(validator=[validate_non_negative])

    @property
    def base(self) -> Tuple[str, ...]:
        """The base points in order."""
        return self.structure.universe[: self.base_size]

    @property
    def size(self) -> int:
        """Number of points."""
        return self.structure.size


@attr.s(frozen=True)
class GenericStep:
    """One logged step of a generic build."""

    index: int = attr.ib()
    template: int = attr.ib()
    image: Tuple[str, ...] = attr.ib(converter=tuple)
    added: Tuple[str, ...] = attr.ib(converter=tuple)
    applied: bool = attr.ib()


@attr.s
class GenericBuildState:
    """A chain of finite approximants of the generic structure."""

    group: SymmetryGroup = attr.ib(validator=attr.validators.instance_of(SymmetryGroup))
    size_bound: int = attr.ib(validator=[validate_positive])
    seed: int = attr.ib()
    chain: List[FiniteStructure] = attr.ib(factory=list)
    catalog: Tuple[ExtensionTemplate, ...] = attr.ib(converter=tuple, factory=tuple)
    cursor: int = attr.ib(default=0)
    log: List[GenericStep] = attr.ib(factory=list)

    @property
    def current(self) -> FiniteStructure:
        """The last structure of the chain."""
        return self.chain[-1]


@attr.s(frozen=True)
class AuditEntry:
    """Whether one (strong base, template) pair is realized."""

    base: Tuple[str, ...] = attr.ib(converter=tuple)
    template: int = attr.ib()
    realized: bool = attr.ib()
    scheduled: bool = attr.ib(default=False)
    embedding: Optional[Tuple[Tuple[str, str], ...]] = attr.ib(default=None)


@attr.s(frozen=True)
class AuditReport:
    """Realized and unrealized extension pairs of an approximant."""

    max_base: int = attr.ib()
    max_template: int = attr.ib()
    entries: Tuple[AuditEntry, ...] = attr.ib(converter=tuple)

    @property
    def realized(self) -> int:
        """Number of realized pairs."""
        return sum(1 for e in self.entries if e.realized)

    @property
    def scheduled(self) -> Tuple[AuditEntry, ...]:
        """Pairs the builder applied at least once."""
        return tuple(e for e in self.entries if e.scheduled)


@attr.s(frozen=True)
class BenignPair:
    """Two extensions of a base, not isomorphic over it but with isomorphic reducts."""

    base: FiniteStructure = attr.ib()
    first: FiniteStructure = attr.ib()
    second: FiniteStructure = attr.ib()
    base_strong: bool = attr.ib()
    distinct_over_base: bool = attr.ib()
    reducts_isomorphic: bool = attr.ib()

    @property
    def certified(self) -> bool:
        """Whether every benignity condition was verified."""
        return self.base_strong and self.distinct_over_base and self.reducts_isomorphic


@attr.s(frozen=True)
class SuiteResult:
    """Outcome of one property suite run."""

    name: str = attr.ib()
    checked: int = attr.ib()
    passed: bool = attr.ib()
    counterexample: Optional[str] = attr.ib(default=None)
