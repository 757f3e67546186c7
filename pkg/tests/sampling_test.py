"""Test for seeded random structures."""
import logging

import numpy as np

from fh_toolkit.predim import in_class, is_self_sufficient
from fh_toolkit.sampling import (
    element_names,
    random_class_extension,
    random_class_member,
    random_extension,
    random_group,
    random_strong_subset,
    random_structure,
    transposition_group,
)
from fh_toolkit.types import SymmetryGroup

from . import path

logging.basicConfig()
_LOGGER = logging.getLogger(__name__)
_LOGGER.setLevel(logging.DEBUG)


def test_element_names() -> None:
    """Test element_names()."""
    assert element_names(3) == ["e1", "e2", "e3"]
    assert element_names(0) == []
    assert element_names(2, prefix="x") == ["x1", "x2"]


def test_groups() -> None:
    """Test transposition_group() and random_group()."""
    group = transposition_group(3)
    assert group.order == 2
    assert group.canonical(("b", "a", "c")) == ("a", "b", "c")

    rng = np.random.default_rng(0)
    orders = {random_group(rng, 3).order for _ in range(40)}
    assert orders == {1, 2, 6}


def test_random_structure() -> None:
    """Test random_structure() is seeded."""
    group = SymmetryGroup.symmetric(3)
    first = random_structure(np.random.default_rng(5), group, 6, max_relations=4)
    second = random_structure(np.random.default_rng(5), group, 6, max_relations=4)
    assert first == second
    assert first.size == 6
    assert len(first.relations) <= 4

    # Test: Too few points for any orbit.
    small = random_structure(np.random.default_rng(5), group, 2)
    assert small.relations == ()


def test_random_class_member() -> None:
    """Test random_class_member() stays in the class."""
    rng = np.random.default_rng(11)
    for _ in range(10):
        M = random_class_member(rng, SymmetryGroup.trivial(2), 5)
        assert in_class(M)
        assert len(M.relations) <= 5


def test_random_strong_subset() -> None:
    """Test random_strong_subset()."""
    rng = np.random.default_rng(2)
    M = path()
    for _ in range(10):
        assert is_self_sufficient(M, random_strong_subset(rng, M))


def test_random_extension() -> None:
    """Test random_extension() and random_class_extension()."""
    rng = np.random.default_rng(4)
    M = path()
    grown = random_extension(rng, M, 2, 3)
    assert grown.universe == ("a", "b", "c", "d", "n1", "n2")
    assert set(M.relations) <= set(grown.relations)
    assert len(grown.relations) <= len(M.relations) + 3
    for rel in set(grown.relations) - set(M.relations):
        assert rel.points & {"n1", "n2"}

    for _ in range(5):
        assert in_class(random_class_extension(rng, M, 2, 4))
