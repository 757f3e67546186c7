"""Test for reducts, mixed amalgams and benign pairs."""
import pytest  # type: ignore
import logging

from fh_toolkit.const import KIND_EXQUISITE, KIND_PHI
from fh_toolkit.core import empty_structure, make_structure
from fh_toolkit.errors import (
    ArityMismatch,
    NotInClass,
    NotProperSubgroup,
    NotSubgroup,
    PreconditionFailed,
    UsageError,
)
from fh_toolkit.exquisite import base_exquisite_3, canonical_structure
from fh_toolkit.generic import build_generic
from fh_toolkit.reducts import (
    benign_pair_exquisite,
    benign_pair_subgroup,
    check_encloses,
    check_reduces_class,
    check_stronger,
    exquisite_reduct,
    mixed_amalgam_exquisite,
    mixed_amalgam_subgroup,
    phi_reduct,
    r_copy_check,
    reduct,
    reduct_pipeline_check,
)
from fh_toolkit.types import OrbitTuple, SymmetryGroup

from . import k4, ordered, path, triangle

logging.basicConfig()
_LOGGER = logging.getLogger(__name__)
_LOGGER.setLevel(logging.DEBUG)

SYM2 = SymmetryGroup.symmetric(2)
ID2 = SymmetryGroup.trivial(2)
SYM3 = SymmetryGroup.symmetric(3)
ID3 = SymmetryGroup.trivial(3)


def test_phi_reduct() -> None:
    """Test phi_reduct()."""
    M = phi_reduct(ordered(), SYM2)
    assert M.group.is_full
    assert M.universe == ("a", "b", "c")
    assert len(M.relations) == 2

    # Test: Both directions of an edge collapse to one orbit.
    loop = make_structure(ID2, ["a", "b"], [["a", "b"], ["b", "a"]])
    assert phi_reduct(loop, SYM2).relations == (OrbitTuple(("a", "b")),)

    with pytest.raises(NotSubgroup):
        phi_reduct(triangle(), ID2)
    with pytest.raises(ArityMismatch):
        phi_reduct(ordered(), SYM3)


def test_exquisite_reduct() -> None:
    """Test exquisite_reduct()."""
    q = base_exquisite_3()
    M = exquisite_reduct(canonical_structure(q), q)
    assert M.group.is_trivial
    assert M.relations == (OrbitTuple(("a1", "a2", "a3")),)
    assert reduct(canonical_structure(q), KIND_EXQUISITE, q) == M

    with pytest.raises(PreconditionFailed):
        exquisite_reduct(empty_structure(ID3, ["a"]), q)
    with pytest.raises(UsageError, match="Unknown reduct kind"):
        reduct(path(), "other", q)


def test_reduct_checks() -> None:
    """Test check_encloses(), check_reduces_class() and check_stronger()."""
    M = ordered()
    assert check_encloses(M, ["a", "b"], KIND_PHI, SYM2)
    assert check_encloses(M, ["a", "c"], KIND_PHI, SYM2, require_strong=False)
    assert check_reduces_class(M, KIND_PHI, SYM2)
    assert check_stronger(M, ["a"], KIND_PHI, SYM2)

    with pytest.raises(NotInClass):
        check_reduces_class(k4(), KIND_PHI, SYM2)


def test_mixed_amalgam_subgroup() -> None:
    """Test mixed_amalgam_subgroup()."""
    A = empty_structure(ID2, ["a"])
    B = make_structure(SYM2, ["a", "b"], [["a", "b"]])
    C = mixed_amalgam_subgroup(A, B)
    assert C.group.is_trivial
    assert C.relations == (OrbitTuple(("a", "b")),)
    assert phi_reduct(C, SYM2) == B

    # Test: B must extend the reduct of A.
    with pytest.raises(PreconditionFailed):
        mixed_amalgam_subgroup(make_structure(ID2, ["a", "b"], [["b", "a"]]), triangle())


def test_mixed_amalgam_exquisite() -> None:
    """Test mixed_amalgam_exquisite()."""
    q = base_exquisite_3()
    A = empty_structure(SYM3, ["a", "b", "c"])
    B = make_structure(ID3, ["a", "b", "c", "d"], [["b", "c", "d"]])
    C = mixed_amalgam_exquisite(A, B, q)
    assert C.group.is_full
    assert C.size == 4 + q.tail_len
    assert len(C.relations) == q.t_q
    assert exquisite_reduct(C, q).relations == (OrbitTuple(("b", "c", "d")),)

    with pytest.raises(PreconditionFailed):
        mixed_amalgam_exquisite(A, make_structure(SYM3, ["a", "b", "c", "d"]), q)


def test_benign_pair_subgroup() -> None:
    """Test benign_pair_subgroup()."""
    pair = benign_pair_subgroup(empty_structure(ID2), SYM2)
    assert pair.certified
    assert len(pair.first.relations) == 1
    assert len(pair.second.relations) == 2
    assert pair.first.universe == ("x1", "x2")

    with pytest.raises(NotProperSubgroup):
        benign_pair_subgroup(empty_structure(SYM2), SYM2)
    with pytest.raises(NotSubgroup):
        benign_pair_subgroup(triangle(), ID2)


def test_benign_pair_exquisite() -> None:
    """Test benign_pair_exquisite()."""
    pair = benign_pair_exquisite(empty_structure(SYM3), base_exquisite_3())
    assert pair.base_strong
    assert pair.distinct_over_base
    assert pair.reducts_isomorphic
    assert pair.certified

    with pytest.raises(NotInClass):
        benign_pair_exquisite(k4(), base_exquisite_3())


def test_r_copy_check() -> None:
    """Test r_copy_check() over a strong pair of points."""
    assert r_copy_check(path(), ["b", "c"], KIND_PHI, SYM3)


def test_reduct_pipeline_check() -> None:
    """Test reduct_pipeline_check() when the reduct is the identity."""
    state = build_generic(SYM2, 2, 8, seed=3)
    assert reduct_pipeline_check(state, SYM2, 1, 2) is None
