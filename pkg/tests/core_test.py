"""Test for structure helpers."""
import pytest  # type: ignore
import logging

from fh_toolkit.core import (
    all_orbits,
    automorphisms,
    canonicalize,
    disjoint_copy,
    empty_structure,
    format_elements,
    free_union_rename,
    fresh_names,
    induced_substructure,
    is_embedding,
    make_embedding,
    make_structure,
    orbit_count_inside,
    parse_element_list,
    rename,
    structure_isomorphism,
    with_relations,
)
from fh_toolkit.errors import (
    ArityMismatch,
    DuplicateEntry,
    PreconditionFailed,
    SharedMismatch,
)
from fh_toolkit.types import OrbitTuple, SymmetryGroup

from . import ordered, path, triangle

logging.basicConfig()
_LOGGER = logging.getLogger(__name__)
_LOGGER.setLevel(logging.DEBUG)


def test_canonicalize() -> None:
    """Test canonicalize()."""
    sym = SymmetryGroup.symmetric(3)
    assert canonicalize(sym, ["c", "b", "a"]) == OrbitTuple(("a", "b", "c"))
    assert canonicalize(SymmetryGroup.trivial(3), ["c", "b", "a"]).entries == (
        "c", "b", "a"
    )

    # Test: Repeated entries.
    with pytest.raises(DuplicateEntry):
        canonicalize(sym, ["a", "a", "b"])

    # Test: Wrong length.
    with pytest.raises(ArityMismatch):
        canonicalize(sym, ["a", "b"])


def test_all_orbits() -> None:
    """Test all_orbits()."""
    assert all_orbits(SymmetryGroup.symmetric(3), ["a", "b", "c", "d"]) == [
        ("a", "b", "c"), ("a", "b", "d"), ("a", "c", "d"), ("b", "c", "d")
    ]
    assert len(all_orbits(SymmetryGroup.trivial(2), ["a", "b", "c"])) == 6
    assert all_orbits(SymmetryGroup.symmetric(3), ["a", "b"]) == []


def test_induced_substructure() -> None:
    """Test induced_substructure()."""
    M = path()
    sub = induced_substructure(M, ["a", "b", "c"])
    assert sub.universe == ("a", "b", "c")
    assert sub.relations == (OrbitTuple(("a", "b", "c")),)
    assert induced_substructure(M, M.universe) is M
    assert orbit_count_inside(M, ["b", "c", "d"]) == 1


def test_fresh_names() -> None:
    """Test fresh_names()."""
    assert fresh_names("w", 3, ["w1", "w3"]) == ["w2", "w4", "w5"]
    assert fresh_names("w", 0, []) == []


def test_rename_and_copy() -> None:
    """Test rename() and disjoint_copy()."""
    M = path()
    renamed = rename(M, {"a": "z"})
    assert renamed.universe == ("b", "c", "d", "z")
    assert renamed.has_orbit(("z", "b", "c"))

    # Test: Non-injective renaming.
    with pytest.raises(PreconditionFailed, match="not injective"):
        rename(M, {"a": "b"})

    copy, mapping = disjoint_copy(M, fixed=["b", "c"], avoid=["a'"])
    assert set(mapping) == {"a", "d"}
    assert mapping["a"] == "a'2"
    assert mapping["d"] == "d'"
    assert set(copy.universe) & set(M.universe) == {"b", "c"}
    assert len(copy.relations) == 2


def test_with_relations() -> None:
    """Test with_relations() and empty_structure()."""
    M = with_relations(path(), [["a", "b", "d"]], name="other")
    assert M.name == "other"
    assert M.relations == (OrbitTuple(("a", "b", "d")),)
    assert empty_structure(SymmetryGroup.trivial(2), ["x"]).relations == ()


def test_free_union_rename() -> None:
    """Test free_union_rename()."""
    M = path()
    parts = free_union_rename([M, M], ["b", "c"])
    assert parts[0] is M
    assert set(parts[0].universe) & set(parts[1].universe) == {"b", "c"}

    # Test: Parts disagree on the shared set.
    other = make_structure(M.group, M.universe, [["b", "c", "d"]])
    with pytest.raises(SharedMismatch):
        free_union_rename([M, other], ["a", "b", "c"])


def test_embeddings() -> None:
    """Test is_embedding() and make_embedding()."""
    M = path()
    sub = induced_substructure(M, ["b", "c", "d"])
    identity = {e: e for e in sub.universe}
    assert is_embedding(sub, M, identity)
    assert make_embedding(sub, M, identity).as_dict() == identity

    # Test: The image induces an extra orbit.
    flat = make_structure(M.group, ["x", "y", "z"])
    assert not is_embedding(flat, M, {"x": "a", "y": "b", "z": "c"})
    with pytest.raises(PreconditionFailed, match="not an embedding"):
        make_embedding(flat, M, {"x": "a", "y": "b", "z": "c"})


def test_structure_isomorphism() -> None:
    """Test structure_isomorphism() and automorphisms()."""
    M = triangle()
    assert len(automorphisms(M)) == 6
    assert len(automorphisms(M, limit=2)) == 2
    assert len(automorphisms(path())) == 4

    found = structure_isomorphism(M, M, fixed=["a"])
    assert found is not None
    assert found["a"] == "a"

    # Test: Ordered structures respect direction.
    O = ordered()
    reversed_path = make_structure(O.group, O.universe, [["b", "a"], ["c", "b"]])
    found = structure_isomorphism(O, reversed_path)
    assert found == {"a": "c", "b": "b", "c": "a"}
    assert structure_isomorphism(O, reversed_path, fixed=["a"]) is None

    # Test: Different groups never match.
    assert structure_isomorphism(M, O) is None


def test_element_lists() -> None:
    """Test format_elements() and parse_element_list()."""
    assert parse_element_list("b10, b2,a") == {"a", "b2", "b10"}
    assert parse_element_list("") == frozenset()
    assert parse_element_list(None) == frozenset()
    assert format_elements({"b10", "b2", "a"}) == "a,b2,b10"
