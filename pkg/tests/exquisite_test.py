"""Test for exquisite types, collisions and decollision."""
import pytest  # type: ignore
import logging

from fh_toolkit.core import make_structure
from fh_toolkit.errors import (
    ArityMismatch,
    LengthMismatch,
    NoCollision,
    PreconditionFailed,
)
from fh_toolkit.exquisite import (
    BASE_RELATIONS,
    base_exquisite_3,
    canonical_structure,
    check_asocial,
    check_exquisite,
    check_intertwined,
    check_nice,
    check_without_symmetry,
    collisions,
    decollide,
    decollide_step,
    exquisite_for_arity,
    find_unique_orbits,
    generated_set,
    glue_copies,
    identity_tuple,
    is_adjacency_loop,
    lift_exquisite,
    plus_realizations,
    loop_dimension_drop,
    positive_heads,
    realizations,
    type_of,
    variable_names,
)
from fh_toolkit.predim import delta, in_class
from fh_toolkit.types import AtomicType, SymmetryGroup, TypedTuple

from . import triangle

logging.basicConfig()
_LOGGER = logging.getLogger(__name__)
_LOGGER.setLevel(logging.DEBUG)


def test_base_type() -> None:
    """Test the arity-3 base type."""
    q = base_exquisite_3()
    assert (q.size, q.t_q, q.d_q) == (11, 9, 2)
    assert check_nice(q)
    assert check_without_symmetry(q)
    assert check_intertwined(q) == (True, None)
    assert check_exquisite(q)
    assert exquisite_for_arity(3) == q

    M = canonical_structure(q)
    assert M.universe == variable_names(q)
    assert delta(M, M.universe) == 2
    assert in_class(M)
    assert type_of(M, identity_tuple(q)) == q


def test_not_exquisite() -> None:
    """Test types failing one of the conditions."""
    # Test: One orbit fewer breaks d_q = n - 1.
    q = AtomicType(arity=3, tail_len=8, relations=BASE_RELATIONS[:-1], name="short")
    assert not check_nice(q)
    assert not check_exquisite(q)
    with pytest.raises(PreconditionFailed):
        lift_exquisite(q)

    with pytest.raises(PreconditionFailed):
        exquisite_for_arity(2)


def test_lift_exquisite() -> None:
    """Test lift_exquisite()."""
    lifted = lift_exquisite(base_exquisite_3())
    assert lifted.name == "q4"
    assert lifted.arity == 4
    assert (lifted.size, lifted.t_q, lifted.d_q) == (16, 13, 3)
    assert check_exquisite(lifted)
    assert exquisite_for_arity(4) == lifted


def test_generated_set() -> None:
    """Test generated_set() and its length check."""
    q = base_exquisite_3()
    t = identity_tuple(q)
    assert generated_set(q, t) == frozenset(canonical_structure(q).relations)
    with pytest.raises(LengthMismatch):
        generated_set(q, TypedTuple(head=("x", "y"), tail=()))


def test_realizations() -> None:
    """Test realizations() on the canonical structure."""
    q = base_exquisite_3()
    M = canonical_structure(q)
    assert realizations(M, q) == [identity_tuple(q)]
    assert plus_realizations(M, q) == [identity_tuple(q)]
    assert positive_heads(M, q) == {("a1", "a2", "a3")}
    report = collisions(M, q)
    assert (report.c, report.w) == (0, 0)

    with pytest.raises(ArityMismatch):
        realizations(triangle(), q)
    ordered = make_structure(SymmetryGroup.trivial(3), M.universe)
    with pytest.raises(PreconditionFailed):
        realizations(ordered, q)


def test_adjacency_loop() -> None:
    """Test is_adjacency_loop() and loop_dimension_drop()."""
    q = base_exquisite_3()
    M = canonical_structure(q)
    t = identity_tuple(q)
    first, second = ["a1", "b1", "b2"], ["a2", "b2", "b3"]

    assert is_adjacency_loop(M, q, [first], [t]) == (True, False, False)
    assert is_adjacency_loop(M, q, [first, second], [t]) == (True, True, True)
    assert is_adjacency_loop(M, q, [first], []) == (True, False, False)

    before, after = loop_dimension_drop(
        M, q, ["a1", "a2", "b1", "b2", "b3"], [first, second], [t]
    )
    assert (before, after) == (3, 2)


def test_glue_and_decollide() -> None:
    """Test glue_copies() produces a collision that decollide() removes."""
    q = base_exquisite_3()
    glued = glue_copies(q)
    assert glued.size == 19
    assert len(glued.relations) == 17
    assert collisions(glued, q).c >= 1
    assert set(realizations(glued, q)) <= set(plus_realizations(glued, q))
    pair = check_asocial(glued, q)
    if pair is not None:
        assert len(generated_set(q, pair[0]) & generated_set(q, pair[1])) != 1
    unique = find_unique_orbits(glued, q)
    assert unique
    for r, t in unique:
        assert r in glued.relations
        assert r in generated_set(q, t)

    fixed = decollide(glued, q)
    assert collisions(fixed, q).c == 0
    assert fixed.size > glued.size
    assert in_class(fixed)

    with pytest.raises(PreconditionFailed):
        glue_copies(q, bijection=[0, 0, 1])


def test_decollide_step_no_collision() -> None:
    """Test decollide_step() on a structure without collisions."""
    q = base_exquisite_3()
    with pytest.raises(NoCollision):
        decollide_step(canonical_structure(q), q)
    assert check_asocial(canonical_structure(q), q) is None
    assert find_unique_orbits(canonical_structure(q), q) == []
