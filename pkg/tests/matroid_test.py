"""Test for the pregeometry of d."""
import pytest  # type: ignore
import logging

from fh_toolkit.const import ENGINE_FLOW
from fh_toolkit.core import empty_structure, rename
from fh_toolkit.errors import SearchBoundExceeded
from fh_toolkit.matroid import (
    Matroid,
    all_bases_equal_size,
    associated_geometry,
    bases,
    check_pregeometry_axioms,
    closure,
    closure_table,
    independent_sets,
    pregeometry_isomorphic,
    rank,
)
from fh_toolkit.sampling import element_names
from fh_toolkit.subsets import SubsetTable
from fh_toolkit.types import SymmetryGroup

from . import path, triangle

logging.basicConfig()
_LOGGER = logging.getLogger(__name__)
_LOGGER.setLevel(logging.DEBUG)


def test_rank_and_closure() -> None:
    """Test rank() and closure()."""
    M = path()
    assert rank(M, []) == 0
    assert rank(M, ["a"]) == 1
    assert rank(M, ["a", "b"]) == 2
    assert rank(M, M.universe) == 2
    assert closure(M, ["a"]) == {"a"}
    assert closure(M, ["a", "d"]) == {"a", "b", "c", "d"}
    assert closure(triangle(), [], engine=ENGINE_FLOW) == {"a", "b", "c"}


def test_matroid() -> None:
    """Test the memoized Matroid."""
    matroid = Matroid(path())
    assert matroid.rank(["b", "c"]) == 2
    assert matroid.is_independent(["b", "c"])
    assert not matroid.is_independent(["a", "b", "c"])
    assert matroid.basis(path().universe) == ("a", "b")
    assert path().mask_of(["b", "c"]) in matroid.rank_table


def test_bases() -> None:
    """Test bases(), independent_sets() and all_bases_equal_size()."""
    M = path()
    assert bases(M, ["c", "d", "b"]) == ("b", "c")
    assert independent_sets(M, 1) == [
        frozenset(), frozenset({"a"}), frozenset({"b"}), frozenset({"c"}), frozenset({"d"})
    ]
    assert len(independent_sets(M, 2)) == 1 + 4 + 6
    assert all_bases_equal_size(M, M.universe)
    with pytest.raises(ValueError):
        independent_sets(M, 5)


def test_associated_geometry() -> None:
    """Test associated_geometry()."""
    geometry = associated_geometry(path())
    assert geometry.loops == frozenset()
    assert len(geometry.classes) == 4
    assert geometry.check_geometry_axioms()
    assert geometry.class_rank([0, 3]) == 2

    geometry = associated_geometry(triangle())
    assert geometry.loops == {"a", "b", "c"}
    assert geometry.classes == ()


def test_check_pregeometry_axioms() -> None:
    """Test check_pregeometry_axioms()."""
    assert check_pregeometry_axioms(path()) is None
    assert check_pregeometry_axioms(triangle()) is None
    free = empty_structure(SymmetryGroup.trivial(2), element_names(5))
    assert check_pregeometry_axioms(free) is None


def test_pregeometry_isomorphic() -> None:
    """Test pregeometry_isomorphic()."""
    M = path()
    other = rename(M, {"a": "p", "b": "q", "c": "r", "d": "s"})
    found = pregeometry_isomorphic(M, other)
    assert found is not None
    assert sorted(found.values()) == ["p", "q", "r", "s"]
    assert pregeometry_isomorphic(M, triangle()) is None

    # Test: Free pregeometries differ from the path.
    free = empty_structure(SymmetryGroup.symmetric(3), ["a", "b", "c", "d"])
    assert pregeometry_isomorphic(M, free) is None

    with pytest.raises(SearchBoundExceeded):
        big = empty_structure(SymmetryGroup.trivial(2), element_names(11))
        pregeometry_isomorphic(big, big)


def test_closure_table() -> None:
    """Test closure_table()."""
    M = path()
    cl = closure_table(SubsetTable(M).dim, M.size)
    assert cl[0] == 0
    assert cl[M.mask_of(["a"])] == M.mask_of(["a"])
    assert cl[M.mask_of(["a", "b"])] == M.full_mask
