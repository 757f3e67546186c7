"""The pregeometry defined by the dimension function."""
import itertools
import logging
import threading
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import attr
import numpy as np

from .const import DEFAULT_ISOMORPHISM_BOUND, ENGINE_EXHAUSTIVE
from .errors import SearchBoundExceeded
from .predim import dim
from .subsets import SubsetTable
from .types import FiniteStructure, element_sort_key

_LOGGER = logging.getLogger(__name__)

AXIOM_EMPTY = "I: d(empty) = 0"
AXIOM_STEP = "II: d(Y) <= d(Ya) <= d(Y) + 1"
AXIOM_SUBMODULAR = "III: submodularity"
AXIOM_EXTENSIVE = "1: Y subset of cl(Y)"
AXIOM_MONOTONE = "2: monotonicity"
AXIOM_IDEMPOTENT = "3: cl(cl(Y)) = cl(Y)"
AXIOM_EXCHANGE = "5: exchange"


@attr.s
class Matroid:
    """Rank function d of a structure, memoized by subset bitmask."""

    structure: FiniteStructure = attr.ib()
    engine: str = attr.ib(default=ENGINE_EXHAUSTIVE)
    bound: Optional[int] = attr.ib(default=None)
    rank_table: Dict[int, int] = attr.ib(factory=dict)
    _lock: threading.Lock = attr.ib(factory=threading.Lock, repr=False)

    @property
    def ground(self) -> FrozenSet[str]:
        """The universe of the structure."""
        return frozenset(self.structure.universe)

    def rank(self, Y: Iterable[str]) -> int:
        """d(Y)."""
        subset = self.structure.check_elements(Y)
        mask = self.structure.mask_of(subset)
        with self._lock:
            if mask in self.rank_table:
                return self.rank_table[mask]
        value = dim(self.structure, subset, engine=self.engine, bound=self.bound)
        with self._lock:
            self.rank_table[mask] = value
        return value

    def closure(self, Y: Iterable[str]) -> FrozenSet[str]:
        """{a : d(Ya) = d(Y)}."""
        subset = self.structure.check_elements(Y)
        base = self.rank(subset)
        return subset | frozenset(
            e for e in self.structure.universe
            if e not in subset and self.rank(subset | {e}) == base
        )

    def is_independent(self, Y: Iterable[str]) -> bool:
        """Whether d(Y) = |Y|."""
        subset = frozenset(Y)
        return self.rank(subset) == len(subset)

    def basis(self, Y: Iterable[str]) -> Tuple[str, ...]:
        """Greedy basis of Y in element order."""
        chosen: List[str] = []
        for e in sorted(self.structure.check_elements(Y), key=element_sort_key):
            if self.rank(chosen + [e]) == len(chosen) + 1:
                chosen.append(e)
        return tuple(chosen)


@attr.s(frozen=True)
class GeometryQuotient:
    """Geometry of a pregeometry: loops removed, parallel points merged."""

    matroid: Matroid = attr.ib(eq=False, repr=False)
    loops: FrozenSet[str] = attr.ib(converter=frozenset)
    classes: Tuple[FrozenSet[str], ...] = attr.ib(converter=tuple)

    def class_rank(self, indices: Iterable[int]) -> int:
        """Rank of a set of classes: rank of the union of its members."""
        union = frozenset().union(*(self.classes[i] for i in indices))
        return self.matroid.rank(union)

    def closure(self, indices: Iterable[int]) -> FrozenSet[int]:
        """Closure of a set of classes in the quotient."""
        chosen = frozenset(indices)
        base = self.class_rank(chosen)
        return chosen | frozenset(
            j for j in range(len(self.classes))
            if j not in chosen and self.class_rank(chosen | {j}) == base
        )

    def check_geometry_axioms(self) -> bool:
        """cl(∅) = ∅ and cl({x}) = {x} in the quotient."""
        if self.closure(()):
            return False
        return all(self.closure({i}) == {i} for i in range(len(self.classes)))


@attr.s(frozen=True)
class AxiomViolation:
    """The first pregeometry axiom found to fail, with the sets involved."""

    axiom: str = attr.ib()
    witness: Tuple[FrozenSet[str], ...] = attr.ib(converter=tuple)


def rank(M: FiniteStructure, Y: Iterable[str], engine: str = ENGINE_EXHAUSTIVE,
         bound: Optional[int] = None) -> int:
    """Matroid rank of Y, which is d(Y)."""
    return Matroid(M, engine=engine, bound=bound).rank(Y)


def closure(M: FiniteStructure, Y: Iterable[str], engine: str = ENGINE_EXHAUSTIVE,
            bound: Optional[int] = None) -> FrozenSet[str]:
    """Pregeometry closure of Y."""
    return Matroid(M, engine=engine, bound=bound).closure(Y)


def independent_sets(
    M: FiniteStructure, k: int, bound: Optional[int] = None
) -> List[FrozenSet[str]]:
    """All independent sets with at most k elements."""
    if k > M.size:
        raise ValueError(f"Size {k} exceeds the ground set of {M.name}")
    table = SubsetTable(M, bound=bound)
    out = []
    for size in range(k + 1):
        for combo in itertools.combinations(M.universe, size):
            if table.dim_of(combo) == size:
                out.append(frozenset(combo))
    return out


def bases(M: FiniteStructure, Y: Iterable[str], bound: Optional[int] = None) -> Tuple[str, ...]:
    """A greedy basis of Y."""
    return Matroid(M, bound=bound).basis(Y)


def all_bases_equal_size(
    M: FiniteStructure, Y: Iterable[str], bound: Optional[int] = None
) -> bool:
    """Whether every maximal independent subset of Y has size d(Y)."""
    table = SubsetTable(M, bound=bound)
    subset = sorted(M.check_elements(Y), key=element_sort_key)
    target = table.dim_of(subset)
    for size in range(len(subset) + 1):
        for combo in itertools.combinations(subset, size):
            if table.dim_of(combo) != size:
                continue
            maximal = all(
                table.dim_of(combo + (e,)) != size + 1
                for e in subset if e not in combo
            )
            if maximal and size != target:
                _LOGGER.debug(f"Basis {combo} of {subset} has size {size} != {target}")
                return False
    return True


def associated_geometry(
    M: FiniteStructure, engine: str = ENGINE_EXHAUSTIVE, bound: Optional[int] = None
) -> GeometryQuotient:
    """Quotient of the pregeometry by loops and by a ∼ b iff b ∈ cl({a})."""
    matroid = Matroid(M, engine=engine, bound=bound)
    loops = matroid.closure(())
    classes: List[FrozenSet[str]] = []
    seen: set = set()
    for e in M.universe:
        if e in loops or e in seen:
            continue
        members = matroid.closure({e}) - loops
        classes.append(members)
        seen.update(members)
    return GeometryQuotient(matroid=matroid, loops=loops, classes=classes)


def closure_table(dims: np.ndarray, size: int) -> np.ndarray:
    """Mask of the d-closure of every subset, given the d table."""
    masks = np.arange(1 << size, dtype=np.int64)
    out = masks.copy()
    for i in range(size):
        bit = 1 << i
        out |= np.where(dims[masks | bit] == dims, bit, 0)
    return out


def check_pregeometry_axioms(
    M: FiniteStructure, bound: Optional[int] = None
) -> Optional[AxiomViolation]:
    """Exhaustively check d and cl against the pregeometry axioms."""
    table = SubsetTable(M, bound=bound)
    dims = table.dim
    size = M.size
    masks = table.masks

    def sets(*found: int) -> List[FrozenSet[str]]:
        return [M.elements_of(int(m)) for m in found]

    if dims[0] != 0:
        return AxiomViolation(AXIOM_EMPTY, sets(0))
    for i in range(size):
        bit = 1 << i
        step = dims[masks | bit] - dims
        bad = np.nonzero((step < 0) | (step > 1))[0]
        if bad.size:
            return AxiomViolation(AXIOM_STEP, sets(int(bad[0]), bit))
    for y in range(1 << size):
        lhs = dims[y | masks] + dims[y & masks]
        bad = np.nonzero(lhs > dims[y] + dims)[0]
        if bad.size:
            return AxiomViolation(AXIOM_SUBMODULAR, sets(y, int(bad[0])))

    cl = closure_table(dims, size)
    bad = np.nonzero((cl & masks) != masks)[0]
    if bad.size:
        return AxiomViolation(AXIOM_EXTENSIVE, sets(int(bad[0])))
    for i in range(size):
        bit = 1 << i
        bad = np.nonzero((cl & cl[masks | bit]) != cl)[0]
        if bad.size:
            return AxiomViolation(AXIOM_MONOTONE, sets(int(bad[0]), bit))
    bad = np.nonzero(cl[cl] != cl)[0]
    if bad.size:
        return AxiomViolation(AXIOM_IDEMPOTENT, sets(int(bad[0])))
    for a in range(size):
        a_bit = 1 << a
        for b in range(size):
            b_bit = 1 << b
            gained = ((cl[masks | b_bit] & a_bit) != 0) & ((cl & a_bit) == 0)
            swapped = (cl[masks | a_bit] & b_bit) != 0
            bad = np.nonzero(gained & ~swapped)[0]
            if bad.size:
                return AxiomViolation(AXIOM_EXCHANGE, sets(int(bad[0]), a_bit, b_bit))
    return None


def _signatures(dims: np.ndarray, size: int) -> List[Tuple[int, Tuple[int, ...]]]:
    out = []
    for i in range(size):
        pairs = tuple(sorted(int(dims[(1 << i) | (1 << j)]) for j in range(size) if j != i))
        out.append((int(dims[1 << i]), pairs))
    return out


def pregeometry_isomorphic(
    M1: FiniteStructure, M2: FiniteStructure, bound: Optional[int] = None
) -> Optional[Dict[str, str]]:
    """A bijection matching d on every subset, or None if none exists."""
    limit = DEFAULT_ISOMORPHISM_BOUND
    if M1.size > limit or M2.size > limit:
        raise SearchBoundExceeded(
            f"Pregeometry isomorphism search is limited to {limit} elements"
        )
    if M1.size != M2.size:
        return None
    size = M1.size
    d1 = SubsetTable(M1, bound=bound).dim
    d2 = SubsetTable(M2, bound=bound).dim
    if sorted(d1.tolist()) != sorted(d2.tolist()):
        return None
    sig1 = _signatures(d1, size)
    sig2 = _signatures(d2, size)
    if sorted(sig1) != sorted(sig2):
        return None

    image = [-1] * size
    used = [False] * size

    def extend(pos: int, mask1: int) -> bool:
        if pos == size:
            return True
        for j in range(size):
            if used[j] or sig2[j] != sig1[pos]:
                continue
            ok = True
            # Every subset of the assigned points that contains pos must keep its rank.
            sub = mask1
            while True:
                m1 = sub | (1 << pos)
                m2 = (1 << j)
                for i in range(pos):
                    if sub >> i & 1:
                        m2 |= 1 << image[i]
                if d1[m1] != d2[m2]:
                    ok = False
                    break
                if sub == 0:
                    break
                sub = (sub - 1) & mask1
            if not ok:
                continue
            image[pos] = j
            used[j] = True
            if extend(pos + 1, mask1 | (1 << pos)):
                return True
            used[j] = False
            image[pos] = -1
        return False

    if not extend(0, 0):
        _LOGGER.debug(f"No pregeometry isomorphism between {M1.name} and {M2.name}")
        return None
    return {M1.universe[i]: M2.universe[image[i]] for i in range(size)}
