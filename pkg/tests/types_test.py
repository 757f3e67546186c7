"""Test for the FH toolkit types."""
import pytest  # type: ignore
import logging

from fh_toolkit.errors import ArityMismatch, GroupClosureError, UnknownElement
from fh_toolkit.types import (
    AtomicType,
    CollisionReport,
    ClosureCertificate,
    FiniteStructure,
    OrbitTuple,
    Permutation,
    SymmetryGroup,
    element_sort_key,
    sort_elements,
)

from . import path

logging.basicConfig()
_LOGGER = logging.getLogger(__name__)
_LOGGER.setLevel(logging.DEBUG)


def test_element_sort_key() -> None:
    """Test element_sort_key()."""
    assert sorted(["b10", "b2", "a", "b1"], key=element_sort_key) == [
        "a", "b1", "b2", "b10"
    ]
    assert sort_elements(["x2", "x1", "x2"]) == ("x1", "x2")


def test_permutation() -> None:
    """Test Permutation."""
    swap = Permutation((2, 1, 3))
    assert swap.apply(("a", "b", "c")) == ("b", "a", "c")
    assert not swap.is_identity()
    assert Permutation.identity(3).is_identity()

    # Test: Not a bijection.
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))


def test_symmetry_group() -> None:
    """Test SymmetryGroup."""
    sym = SymmetryGroup.symmetric(3)
    assert sym.order == 6
    assert sym.is_full
    assert not sym.is_trivial
    assert sym.canonical(("c", "a", "b")) == ("a", "b", "c")

    trivial = SymmetryGroup.trivial(3)
    assert trivial.is_trivial
    assert trivial.canonical(("c", "a", "b")) == ("c", "a", "b")
    assert trivial.is_subgroup_of(sym)
    assert not sym.is_subgroup_of(trivial)

    # Test: Closing generators.
    swap = SymmetryGroup.from_generators(3, [Permutation((2, 1, 3))])
    assert swap.order == 2
    assert swap.canonical(("b", "a", "c")) == ("a", "b", "c")
    assert swap.canonical(("c", "b", "a")) == ("b", "c", "a")
    assert swap.orbit(("a", "b", "c")) == {("a", "b", "c"), ("b", "a", "c")}
    assert SymmetryGroup.from_generators(3, swap.generators()) == swap

    # Test: Order bound.
    with pytest.raises(GroupClosureError):
        SymmetryGroup.from_generators(
            3, [Permutation((2, 1, 3)), Permutation((2, 3, 1))], max_order=3
        )

    # Test: Generator of the wrong length.
    with pytest.raises(ArityMismatch):
        SymmetryGroup.from_generators(3, [Permutation((2, 1))])


def test_finite_structure() -> None:
    """Test FiniteStructure."""
    M = path()
    assert M.arity == 3
    assert M.size == 4
    assert M.universe == ("a", "b", "c", "d")
    assert M.relations == (OrbitTuple(("a", "b", "c")), OrbitTuple(("b", "c", "d")))
    assert M.mask_of(["a", "c"]) == 0b101
    assert M.elements_of(0b1010) == {"b", "d"}
    assert M.has_orbit(("c", "b", "a"))
    assert not M.has_orbit(("a", "b", "d"))
    assert M.incidence["b"] == (0, 1)

    # Test: Name does not take part in equality.
    renamed = FiniteStructure(M.group, M.universe, M.relations, name="other")
    assert renamed == M
    assert hash(renamed) == hash(M)

    # Test: Non-canonical tuples are rejected.
    with pytest.raises(ValueError):
        FiniteStructure(M.group, M.universe, [OrbitTuple(("b", "a", "c"))])

    # Test: Unknown elements.
    with pytest.raises(UnknownElement):
        FiniteStructure(M.group, ["a", "b"], [OrbitTuple(("a", "b", "c"))])
    with pytest.raises(UnknownElement):
        M.check_elements(["z"])


def test_atomic_type() -> None:
    """Test AtomicType."""
    q = AtomicType(arity=2, tail_len=2, relations=[(2, 0), (1, 3), (2, 3)])
    assert q.size == 4
    assert q.t_q == 3
    assert q.d_q == 1
    assert q.relations == ((0, 2), (1, 3), (2, 3))
    assert not q.head_related

    # Test: Relation out of range.
    with pytest.raises(ValueError):
        AtomicType(arity=2, tail_len=1, relations=[(0, 3)])


def test_result_validators() -> None:
    """Test validators on result types."""
    with pytest.raises(ValueError):
        CollisionReport(c=2, w=1)
    with pytest.raises(ValueError):
        ClosureCertificate(
            input=["a"], closure=["b"], minimizers_examined=1, dimension=0
        )
