"""Test for moving structures between symmetry levels."""
import pytest  # type: ignore
import logging
from typing import Any

from fh_toolkit.core import empty_structure, induced_substructure, make_structure
from fh_toolkit.errors import NotStrongBase, PreconditionFailed, VerificationFailed
from fh_toolkit.predim import in_class, is_self_sufficient
from fh_toolkit.transfer import (
    _check_strong_base,
    desymmetrize,
    dim_witness,
    fresh_point,
    good_sets_agree,
    isoext_chain,
    isoext_step_G_to_ns,
    isoext_step_ns_to_G,
    relative_delta_witness,
    relax,
    relaxed_symmetrize,
    technical_lemma_check,
)
from fh_toolkit.types import OrbitTuple, SymmetryGroup

from . import ordered, path, triangle

logging.basicConfig()
_LOGGER = logging.getLogger(__name__)
_LOGGER.setLevel(logging.DEBUG)

SYM2 = SymmetryGroup.symmetric(2)
ID2 = SymmetryGroup.trivial(2)


def test_fresh_point() -> None:
    """Test fresh_point()."""
    assert fresh_point(("a", "b"), []) == "w__a_b"
    assert fresh_point(("a", "b"), ["w__a_b"]) == "w__a_b'"


def test_desymmetrize() -> None:
    """Test desymmetrize()."""
    B = path()
    A_ns = make_structure(SymmetryGroup.trivial(3), ["a", "b", "c"], [["a", "b", "c"]])
    result = desymmetrize(B, A_ns, verify=True)
    assert result.dimension_match_checked
    assert result.fresh_elements == frozenset()
    assert result.output.group.is_trivial
    assert result.output.universe == B.universe
    assert len(result.output.relations) == 2
    assert result.output.name == "desym_path"

    # Test: The base must be ordered.
    with pytest.raises(PreconditionFailed):
        desymmetrize(B, induced_substructure(B, ["a", "b", "c"]))


def test_desymmetrize_strong_base() -> None:
    """Test desymmetrize() keeps a strong base strong and stays in the class."""
    B = path()
    A_ns = empty_structure(SymmetryGroup.trivial(3), ["b", "c"])
    assert is_self_sufficient(B, ["b", "c"])
    output = desymmetrize(B, A_ns, verify=True).output
    assert output.point_sets == {frozenset("abc"), frozenset("bcd")}
    assert is_self_sufficient(output, ["b", "c"])
    assert in_class(output)

    # Test: An output breaking the strong base is reported.
    broken = make_structure(
        SymmetryGroup.trivial(3),
        B.universe,
        [["a", "b", "c"], ["a", "c", "b"], ["b", "a", "c"]],
        name="broken",
    )
    with pytest.raises(VerificationFailed, match="strong in path"):
        _check_strong_base(B, A_ns, broken, None)


def test_desymmetrize_weak_base() -> None:
    """Test desymmetrize() over a base that is not strong."""
    B = triangle()
    A_ns = empty_structure(ID2, ["a"])
    assert not is_self_sufficient(B, ["a"])
    output = desymmetrize(B, A_ns, verify=True).output
    assert len(output.relations) == 3
    assert not is_self_sufficient(output, ["a"])


def test_relax() -> None:
    """Test relax() and relaxed_symmetrize()."""
    C = ordered()
    result = relax(C, ["a"])
    assert result.fresh_elements == {"w__a_b", "w__b_c"}
    assert result.output.size == 5
    assert OrbitTuple(("w__a_b", "a")) in result.output.relations
    assert OrbitTuple(("w__b_c", "b")) in result.output.relations
    assert len(result.output.relations) == 4

    A_G = empty_structure(SYM2, ["a"])
    symmetric = relaxed_symmetrize(C, A_G).output
    assert symmetric.group.is_full
    assert symmetric.size == 5
    assert symmetric.point_sets == {
        frozenset({"a", "w__a_b"}),
        frozenset({"b", "w__a_b"}),
        frozenset({"b", "w__b_c"}),
        frozenset({"c", "w__b_c"}),
    }
    assert good_sets_agree(C, A_G) is None

    # Test: Relaxing over everything adds nothing.
    assert relax(C, C.universe).output == C


def test_witnesses() -> None:
    """Test relative_delta_witness() and dim_witness()."""
    M = triangle()
    bare = empty_structure(SYM2, M.universe)
    assert dim_witness(M, M) is None
    assert dim_witness(M, bare) is not None
    assert relative_delta_witness(M, bare, ["a"]) is not None
    with pytest.raises(PreconditionFailed):
        relative_delta_witness(M, path(), [])


def test_isoext_step_G_to_ns() -> None:
    """Test isoext_step_G_to_ns()."""
    A1 = empty_structure(SYM2, ["a"])
    A2 = empty_structure(ID2, ["a"])
    C = make_structure(SYM2, ["a", "b"], [["a", "b"]], name="edge")
    B1, B2 = isoext_step_G_to_ns(A1, A2, C)
    assert B1 == C
    assert B2.group.is_trivial
    assert B2.relations == (OrbitTuple(("a", "b")),)
    assert dim_witness(B1, B2) is None
    assert is_self_sufficient(B2, ["a"])
    assert technical_lemma_check(B1, B2, ["a"]) is None

    # Test: The second side must be ordered.
    with pytest.raises(PreconditionFailed):
        isoext_step_G_to_ns(A1, A1, C)

    # Test: The base must be strong in the extension.
    edge = make_structure(SYM2, ["a", "b"], [["a", "b"]])
    with pytest.raises(NotStrongBase):
        isoext_step_G_to_ns(edge, make_structure(ID2, ["a", "b"], [["a", "b"]]), triangle())


def test_isoext_step_ns_to_G() -> None:
    """Test isoext_step_ns_to_G()."""
    A1 = empty_structure(ID2, ["a"])
    A2 = empty_structure(SYM2, ["a"])
    C = make_structure(ID2, ["a", "b"], [["a", "b"]])
    B1, B2 = isoext_step_ns_to_G(A1, A2, C)
    assert B1.size == 3
    assert B2.size == 3
    assert B1.group.is_trivial
    assert B2.group.is_full
    assert len(B2.relations) == 2
    assert dim_witness(B1, B2) is None


def test_isoext_chain(caplog: Any) -> None:
    """Test isoext_chain() alternating both directions."""
    caplog.set_level(logging.DEBUG)
    start = (empty_structure(SYM2, ["a"]), empty_structure(ID2, ["a"]))
    C = make_structure(SYM2, ["a", "b"], [["a", "b"]])
    T = make_structure(ID2, ["a", "b", "c"], [["a", "b"], ["b", "c"]])
    pairs = isoext_chain([("g2ns", C), ("ns2g", T)], start)
    assert len(pairs) == 3
    left, right = pairs[-1]
    assert left.group.is_full
    assert right.group.is_trivial
    assert left.size == right.size == 4
    assert dim_witness(left, right) is None
    assert "ns to G step over 2 points" in caplog.text
