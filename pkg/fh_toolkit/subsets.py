"""Predimension and dimension of every subset of a small structure."""
import logging
from typing import FrozenSet, Iterable, List, Optional

import numpy as np

from . import get_search_bound
from .errors import SearchBoundExceeded
from .types import FiniteStructure

_LOGGER = logging.getLogger(__name__)


def superset_min(values: np.ndarray, size: int) -> np.ndarray:
    """For each mask, the minimum of values over all its supersets."""
    out = values.copy()
    for i in range(size):
        view = out.reshape(-1, 2, 1 << i)
        np.minimum(view[:, 0, :], view[:, 1, :], out=view[:, 0, :])
    return out


class SubsetTable:
    """Tables of δ and d indexed by subset bitmask."""

    def __init__(self, M: FiniteStructure, bound: Optional[int] = None) -> None:
        """Fill the tables, refusing structures beyond the search bound."""
        limit = get_search_bound(bound)
        if M.size > limit:
            raise SearchBoundExceeded(
                f"Subset table of {M.name} needs 2^{M.size} entries, "
                f"bound is {limit} elements"
            )
        self.structure = M
        self.size = M.size
        self.masks = np.arange(1 << self.size, dtype=np.int64)

        counts = np.zeros(1 << self.size, dtype=np.int16)
        for i in range(self.size):
            counts += ((self.masks >> i) & 1).astype(np.int16)
        inside = np.zeros(1 << self.size, dtype=np.int16)
        for rel_mask in M.relation_masks:
            inside += ((self.masks & rel_mask) == rel_mask).astype(np.int16)

        self.sizes = counts
        self.relations_inside = inside
        self.delta = counts - inside
        self.dim = superset_min(self.delta, self.size)
        _LOGGER.debug(f"Built subset table of {M.name} over {1 << self.size} subsets")

    def mask(self, elements: Iterable[str]) -> int:
        """Bitmask of elements."""
        return self.structure.mask_of(elements)

    def delta_of(self, elements: Iterable[str]) -> int:
        """δ of a set."""
        return int(self.delta[self.mask(elements)])

    def dim_of(self, elements: Iterable[str]) -> int:
        """d of a set."""
        return int(self.dim[self.mask(elements)])

    def is_self_sufficient(self, elements: Iterable[str]) -> bool:
        """Whether δ equals d on a set."""
        mask = self.mask(elements)
        return bool(self.delta[mask] == self.dim[mask])

    def minimizers(self, elements: Iterable[str]) -> np.ndarray:
        """Masks of all supersets attaining d."""
        mask = self.mask(elements)
        hits = ((self.masks & mask) == mask) & (self.delta == self.dim[mask])
        return self.masks[hits]

    def closure(self, elements: Iterable[str]) -> FrozenSet[str]:
        """Intersection of all δ-minimizing supersets."""
        found = self.minimizers(elements)
        return self.structure.elements_of(int(np.bitwise_and.reduce(found)))

    def self_sufficient_masks(self) -> np.ndarray:
        """Masks of every self-sufficient subset."""
        return self.masks[self.delta == self.dim]

    def in_class(self) -> bool:
        """Whether no subset has negative δ."""
        return bool(self.delta.min() >= 0)

    def subsets_with_delta_below(self, value: int) -> List[FrozenSet[str]]:
        """Subsets whose δ is strictly below value."""
        return [
            self.structure.elements_of(int(m))
            for m in self.masks[self.delta < value]
        ]
