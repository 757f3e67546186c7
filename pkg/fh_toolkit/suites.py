"""Seeded property suites run by `fh verify`."""
import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List, Optional, Tuple, Type, TypeVar

import numpy as np

from .amalgam import simple_amalgam, verify_simple_amalgam
from .const import (
    DEFAULT_ADMISSIBLE_ATTEMPTS,
    DEFAULT_CLOSURE_SWEEP_BOUND,
    ENGINE_EXHAUSTIVE,
    ENGINE_FLOW,
    KIND_EXQUISITE,
    KIND_PHI,
    SUITE_AMALGAM,
    SUITE_BASE_EXQUISITE,
    SUITE_BENIGN,
    SUITE_CLOSURE_ORACLES,
    SUITE_DECOLLIDE,
    SUITE_GENERIC_AUDIT,
    SUITE_LIFT_CHAIN,
    SUITE_MIXED_AMALGAM,
    SUITE_PREGEOMETRY,
    SUITE_REDUCT_CLASS,
    SUITE_SUBMODULARITY,
    SUITE_TRANSFER,
)
from .core import (
    empty_structure,
    format_elements,
    fresh_names,
    induced_substructure,
    make_structure,
)
from .errors import FhError, SampleExhausted, VerificationFailed
from .exquisite import (
    base_exquisite_3,
    canonical_structure,
    check_exquisite,
    collisions,
    decollide_step,
    glue_copies,
    lift_exquisite,
    positive_heads,
)
from .formats import serialize_structure
from .generic import audit_genericity, build_generic
from .matroid import check_pregeometry_axioms
from .predim import d_closure, delta, in_class, is_self_sufficient, self_sufficient_closure
from .reducts import (
    benign_pair_exquisite,
    benign_pair_subgroup,
    check_reduces_class,
    exquisite_reduct,
    mixed_amalgam_exquisite,
    mixed_amalgam_subgroup,
    phi_reduct,
)
from .sampling import (
    random_class_extension,
    random_class_member,
    random_extension,
    random_strong_subset,
    random_structure,
    random_subset,
    transposition_group,
)
from .subsets import SubsetTable
from .transfer import (
    desymmetrize,
    good_sets_agree,
    isoext_step_G_to_ns,
    isoext_step_ns_to_G,
    relaxed_symmetrize,
)
from .types import AtomicType, FiniteStructure, OrbitTuple, SuiteResult, SymmetryGroup

_LOGGER = logging.getLogger(__name__)

ARITY = 3

T = TypeVar("T")


def _ordered_copy(M: FiniteStructure) -> FiniteStructure:
    """Trivial-group structure with one tuple per orbit of M."""
    return FiniteStructure(
        group=SymmetryGroup.trivial(M.arity),
        universe=M.universe,
        relations=[OrbitTuple(r.entries) for r in M.relations],
        name=M.name,
    )


def draw_admissible(
    rng: np.random.Generator,
    make: Callable[[np.random.Generator], Optional[T]],
    what: str,
    attempts: int = DEFAULT_ADMISSIBLE_ATTEMPTS,
) -> T:
    """Redraw from rng until make returns an instance."""
    for attempt in range(attempts):
        instance = make(rng)
        if instance is not None:
            if attempt:
                _LOGGER.debug(f"Drew an admissible {what} on attempt {attempt + 1}")
            return instance
    raise SampleExhausted(f"No admissible {what} in {attempts} draws")


class PropertySuite:
    """Generic baseclass for property suites."""

    name = ""
    default_count = 1

    def check(self, rng: np.random.Generator, index: int) -> Optional[str]:
        """Check one sample, returning a counterexample description on failure."""
        raise NotImplementedError

    def run(self, seed: int, count: Optional[int] = None, jobs: int = 1) -> SuiteResult:
        """Check count samples, each from its own generator seeded by (seed, index)."""
        total = self.default_count if count is None else count
        if self.default_count == 1:
            total = 1
        indices = list(range(total))
        if jobs > 1 and total > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                outcomes = list(
                    pool.map(run_sample, itertools.repeat(self.name), itertools.repeat(seed), indices)
                )
        else:
            outcomes = [run_sample(self.name, seed, i) for i in indices]
        for index, outcome in zip(indices, outcomes):
            if outcome is not None:
                _LOGGER.info(f"Suite {self.name} failed on sample {index}")
                return SuiteResult(
                    name=self.name, checked=index + 1, passed=False,
                    counterexample=f"sample {index}: {outcome}",
                )
        return SuiteResult(name=self.name, checked=total, passed=True)


def run_sample(name: str, seed: int, index: int) -> Optional[str]:
    """Check sample index of the named suite."""
    rng = np.random.default_rng([seed, index])
    try:
        return SUITES[name]().check(rng, index)
    except VerificationFailed as e:
        return f"{e.code}: {e}"


class BaseExquisiteSuite(PropertySuite):
    """The arity-3 witness has δ = 2, lies in the class and is exquisite."""

    name = SUITE_BASE_EXQUISITE

    def check(self, rng: np.random.Generator, index: int) -> Optional[str]:
        """Check the base type once."""
        q = base_exquisite_3()
        M = canonical_structure(q)
        if delta(M, M.universe) != 2:
            return f"δ is {delta(M, M.universe)}"
        if not SubsetTable(M).in_class():
            return "canonical structure is not in the class"
        if not check_exquisite(q):
            return "base type is not exquisite"
        return None


class LiftChainSuite(PropertySuite):
    """Lifts to arity 4 and 5 are exquisite with the expected counts."""

    name = SUITE_LIFT_CHAIN

    def check(self, rng: np.random.Generator, index: int) -> Optional[str]:
        """Check both lifts once."""
        q4 = lift_exquisite(base_exquisite_3())
        if (q4.size, q4.t_q, q4.d_q) != (16, 13, 3):
            return f"arity-4 lift has shape {(q4.size, q4.t_q, q4.d_q)}"
        q5 = lift_exquisite(q4)
        if not check_exquisite(q5):
            return "arity-5 lift is not exquisite"
        return None


class SubmodularitySuite(PropertySuite):
    """δ(A∪B) + δ(A∩B) ≤ δ(A) + δ(B), with equality iff no orbit straddles A and B."""

    name = SUITE_SUBMODULARITY
    default_count = 500

    def check(self, rng: np.random.Generator, index: int) -> Optional[str]:
        """Check all pairs of subsets of one random structure."""
        group = SymmetryGroup.trivial(ARITY) if index % 2 else SymmetryGroup.symmetric(ARITY)
        D = random_structure(rng, group, int(rng.integers(1, 10)), max_relations=12)
        table = SubsetTable(D)
        masks = table.masks
        deltas = table.delta.astype(np.int64)
        for a in range(1 << D.size):
            lhs = deltas[a | masks] + deltas[a & masks]
            rhs = deltas[a] + deltas
            straddling = np.zeros(masks.shape, dtype=np.int64)
            for r in D.relation_masks:
                straddling += (
                    ((r & (a | masks)) == r) & ((r & a) != r) & ((r & masks) != r)
                )
            bad = np.nonzero((lhs > rhs) | ((lhs == rhs) != (straddling == 0)))[0]
            if bad.size:
                return (
                    f"A={format_elements(D.elements_of(a))} "
                    f"B={format_elements(D.elements_of(int(bad[0])))}\n"
                    + serialize_structure(D)
                )
        return None


class PregeometrySuite(PropertySuite):
    """d and its closure satisfy the pregeometry axioms."""

    name = SUITE_PREGEOMETRY
    default_count = 200

    def check(self, rng: np.random.Generator, index: int) -> Optional[str]:
        """Check one random class member."""
        group = SymmetryGroup.symmetric(ARITY) if index % 2 else SymmetryGroup.trivial(ARITY)
        M = random_class_member(rng, group, int(rng.integers(1, 8)))
        violation = check_pregeometry_axioms(M)
        if violation is not None:
            return f"{violation.axiom}\n" + serialize_structure(M)
        return None


class ClosureOraclesSuite(PropertySuite):
    """Both closure engines agree with the minimizer oracle; d-closed sets are strong."""

    name = SUITE_CLOSURE_ORACLES
    default_count = 200

    def check(self, rng: np.random.Generator, index: int) -> Optional[str]:
        """Check one random subset of one random structure, every fifth past the sweep bound."""
        if index % 5 == 4:
            size = int(rng.integers(DEFAULT_CLOSURE_SWEEP_BOUND + 1, DEFAULT_CLOSURE_SWEEP_BOUND + 4))
            M = random_structure(rng, SymmetryGroup.symmetric(2), size, max_relations=size + 4)
            A = random_subset(rng, M.universe, p=0.15)
        else:
            group = SymmetryGroup.symmetric(ARITY) if index % 2 else SymmetryGroup.trivial(ARITY)
            M = random_class_member(rng, group, int(rng.integers(1, 13)))
            A = random_subset(rng, M.universe)
        table = SubsetTable(M)
        oracle = table.closure(A)
        for engine in (ENGINE_EXHAUSTIVE, ENGINE_FLOW):
            if self_sufficient_closure(M, A, engine=engine).closure != oracle:
                return f"{engine} closure of {format_elements(A)}\n" + serialize_structure(M)
        closed = d_closure(M, A)
        if not table.is_self_sufficient(closed):
            return f"d-closure of {format_elements(A)} is not strong\n" + serialize_structure(M)
        return None


class AmalgamSuite(PropertySuite):
    """Free joins are additive, and a strong base keeps the second side strong."""

    name = SUITE_AMALGAM
    default_count = 200

    def check(self, rng: np.random.Generator, index: int) -> Optional[str]:
        """Check one random free join."""
        group = SymmetryGroup.symmetric(ARITY) if index % 2 else SymmetryGroup.trivial(ARITY)
        B1 = random_class_member(rng, group, int(rng.integers(1, 7)), name="B1")
        A = random_subset(rng, B1.universe)
        base = induced_substructure(B1, A)
        B2 = random_extension(rng, base, int(rng.integers(0, 4)), 3, name="B2")
        D = simple_amalgam(B1, B2, A, name="D")
        if not verify_simple_amalgam(D, B1, B2, A).ok:
            return f"free join over {format_elements(A)} is not additive"
        if is_self_sufficient(B1, A):
            if not is_self_sufficient(D, B2.universe):
                return f"B2 is not strong in the join over {format_elements(A)}"
            if in_class(B2) and not in_class(D):
                return f"join over {format_elements(A)} left the class"
        return None


def _isoext_G_triple(
    rng: np.random.Generator,
) -> Optional[Tuple[FiniteStructure, FiniteStructure, FiniteStructure]]:
    """A1 in C_sym, its ordered copy A2 and an extension C1 with A1 ≤ C1."""
    A1 = random_class_member(rng, SymmetryGroup.symmetric(ARITY), int(rng.integers(0, 4)), name="A1")
    C1 = random_class_extension(rng, A1, int(rng.integers(1, 4)), 3, name="C1")
    if not is_self_sufficient(C1, A1.universe):
        return None
    return A1, _ordered_copy(A1), C1


def _isoext_ns_triple(
    rng: np.random.Generator,
) -> Optional[Tuple[FiniteStructure, FiniteStructure, FiniteStructure]]:
    """A2 in C_sym, its ordered copy A1 and an ordered extension C2 with A1 ≤ C2."""
    A2 = random_class_member(rng, SymmetryGroup.symmetric(ARITY), int(rng.integers(0, 4)), name="A2")
    A1 = _ordered_copy(A2)
    C2 = random_class_extension(rng, A1, int(rng.integers(1, 3)), 2, name="C2")
    if not is_self_sufficient(C2, A1.universe):
        return None
    return A1, A2, C2


class TransferSuite(PropertySuite):
    """Desymmetrization, relaxation and both isoext steps keep the relative predimension."""

    name = SUITE_TRANSFER
    default_count = 100

    def check(self, rng: np.random.Generator, index: int) -> Optional[str]:
        """Check one admissible instance of each construction."""
        sym = SymmetryGroup.symmetric(ARITY)
        B = random_class_member(rng, sym, int(rng.integers(1, 8)), name="B")
        A = random_strong_subset(rng, B)
        desymmetrize(B, _ordered_copy(induced_substructure(B, A)), verify=True)
        A = random_subset(rng, B.universe)
        desymmetrize(B, _ordered_copy(induced_substructure(B, A)), verify=True)

        trivial = SymmetryGroup.trivial(ARITY)
        C = random_class_member(rng, trivial, int(rng.integers(1, 6)), name="C")
        A = random_strong_subset(rng, C)
        A_G = random_structure(rng, sym, len(A), max_relations=2, name="A")
        A_G = make_structure(
            sym, A, [[A[int(e[1:]) - 1] for e in r.entries] for r in A_G.relations], name="A"
        )
        witness = good_sets_agree(C, A_G)
        if witness is not None:
            return f"good set {format_elements(witness)} disagrees\n" + serialize_structure(C)
        symmetric = relaxed_symmetrize(C, A_G).output
        if not is_self_sufficient(symmetric, A, engine=ENGINE_FLOW):
            return f"{format_elements(A)} is not strong after relaxed symmetrization"

        A1, A2, C1 = draw_admissible(rng, _isoext_G_triple, "G to ns triple")
        isoext_step_G_to_ns(A1, A2, C1)
        A1, A2, C2 = draw_admissible(rng, _isoext_ns_triple, "ns to G triple")
        isoext_step_ns_to_G(A1, A2, C2)
        return None


class ReductClassSuite(PropertySuite):
    """φ-reducts of C_H members and exquisite reducts of C_sym members stay in class."""

    name = SUITE_REDUCT_CLASS
    default_count = 200

    def check(self, rng: np.random.Generator, index: int) -> Optional[str]:
        """Check one φ-reduct, and an exquisite reduct on every fourth sample."""
        sym = SymmetryGroup.symmetric(ARITY)
        H = SymmetryGroup.trivial(ARITY) if index % 2 else transposition_group(ARITY)
        M = random_class_member(rng, H, int(rng.integers(1, 9)))
        if not check_reduces_class(M, KIND_PHI, sym):
            return "φ-reduct left the class\n" + serialize_structure(M)
        if index % 4:
            return None
        q = base_exquisite_3()
        glued = draw_admissible(rng, lambda r: _glued_instance(r, q), "glued instance")
        if not check_reduces_class(glued, KIND_EXQUISITE, q):
            return "exquisite reduct left the class\n" + serialize_structure(glued)
        return None


def _glued_instance(rng: np.random.Generator, q: AtomicType) -> Optional[FiniteStructure]:
    """Two copies of q glued on random orbits, when in the class with a collision."""
    left = int(rng.integers(q.t_q))
    right = int(rng.integers(q.t_q))
    bijection = [int(i) for i in rng.permutation(q.arity)]
    glued = glue_copies(q, left, right, bijection)
    if not in_class(glued, engine=ENGINE_FLOW) or collisions(glued, q).c == 0:
        _LOGGER.debug(f"Rejecting glued instance {left}/{right}/{bijection}")
        return None
    return glued


class DecollideSuite(PropertySuite):
    """Each decollision step drops w, stays in class and keeps positive heads."""

    name = SUITE_DECOLLIDE
    default_count = 50

    def check(self, rng: np.random.Generator, index: int) -> Optional[str]:
        """Decollide one glued instance step by step."""
        q = base_exquisite_3()
        current = draw_admissible(rng, lambda r: _glued_instance(r, q), "glued instance")
        report = collisions(current, q)
        while report.c:
            heads = positive_heads(current, q)
            step = decollide_step(current, q)
            after = collisions(step, q)
            if after.w >= report.w:
                return f"w did not drop: {report.w} -> {after.w}"
            if not in_class(step, engine=ENGINE_FLOW):
                return "decollision step left the class"
            if not heads <= positive_heads(step, q):
                return "decollision step lost a positive head"
            current, report = step, after
        return None


def _subgroup_pair(
    rng: np.random.Generator,
) -> Optional[Tuple[FiniteStructure, FiniteStructure]]:
    """A in C_id and an extension B of its sym-reduct with A ≤ B."""
    A = random_class_member(rng, SymmetryGroup.trivial(ARITY), int(rng.integers(1, 6)))
    reduct = phi_reduct(A, SymmetryGroup.symmetric(ARITY))
    B = random_class_extension(rng, reduct, int(rng.integers(1, 4)), 3)
    if not is_self_sufficient(B, A.universe, engine=ENGINE_FLOW):
        return None
    return A, B


def _exquisite_pair(
    rng: np.random.Generator, q: AtomicType, A: FiniteStructure
) -> Optional[FiniteStructure]:
    """An ordered extension B of the exquisite reduct of A with A ≤ B."""
    reduced = exquisite_reduct(A, q)
    heads = fresh_names("h", int(rng.integers(1, 3)), A.universe)
    points = list(A.universe) + heads
    tuples = [list(r.entries) for r in reduced.relations]
    for _ in range(int(rng.integers(1, 3))):
        picked = rng.choice(len(points), size=ARITY, replace=False)
        candidate = [points[int(i)] for i in picked]
        if any(e in heads for e in candidate):
            tuples.append(candidate)
    B = make_structure(reduced.group, points, tuples, name="B")
    if not is_self_sufficient(B, A.universe, engine=ENGINE_FLOW):
        return None
    return B


class MixedAmalgamSuite(PropertySuite):
    """Both mixed amalgams meet their postconditions on admissible pairs."""

    name = SUITE_MIXED_AMALGAM
    default_count = 100

    def check(self, rng: np.random.Generator, index: int) -> Optional[str]:
        """Check one admissible pair for each mixed amalgam."""
        A, B = draw_admissible(rng, _subgroup_pair, "subgroup pair")
        mixed_amalgam_subgroup(A, B)

        q = base_exquisite_3()
        sym = SymmetryGroup.symmetric(ARITY)
        A = canonical_structure(q) if index % 2 else empty_structure(sym, ["p1", "p2", "p3"])
        B = draw_admissible(rng, lambda r: _exquisite_pair(r, q, A), "exquisite pair")
        mixed_amalgam_exquisite(A, B, q)
        return None


class GenericAuditSuite(PropertySuite):
    """A seeded build realizes every scheduled small extension and audits reproducibly."""

    name = SUITE_GENERIC_AUDIT

    def check(self, rng: np.random.Generator, index: int) -> Optional[str]:
        """Build and audit twice with the same seed."""
        sym = SymmetryGroup.symmetric(ARITY)
        seed = int(rng.integers(1 << 31))
        reports = [
            audit_genericity(build_generic(sym, 4, 50, seed), 2, 3) for _ in range(2)
        ]
        if reports[0] != reports[1]:
            return f"audit differs across reruns with seed {seed}"
        missing = [e for e in reports[0].scheduled if not e.realized]
        if missing:
            return f"scheduled pair not realized: template {missing[0].template} over {missing[0].base}"
        return None


class BenignSuite(PropertySuite):
    """Both benign constructions certify on seeded bases."""

    name = SUITE_BENIGN
    default_count = 50

    def check(self, rng: np.random.Generator, index: int) -> Optional[str]:
        """Check the subgroup pair and the exquisite pair over random bases."""
        sym = SymmetryGroup.symmetric(ARITY)
        F = random_class_member(rng, SymmetryGroup.trivial(ARITY), int(rng.integers(0, 9)), name="F")
        if not benign_pair_subgroup(F, sym).certified:
            return "subgroup pair not certified\n" + serialize_structure(F)
        F = random_class_member(rng, sym, int(rng.integers(0, 9)), name="F")
        if not benign_pair_exquisite(F, base_exquisite_3()).certified:
            return "exquisite pair not certified\n" + serialize_structure(F)
        return None


SUITES: Dict[str, Type[PropertySuite]] = {
    suite.name: suite
    for suite in (
        BaseExquisiteSuite,
        LiftChainSuite,
        SubmodularitySuite,
        PregeometrySuite,
        ClosureOraclesSuite,
        AmalgamSuite,
        TransferSuite,
        ReductClassSuite,
        DecollideSuite,
        MixedAmalgamSuite,
        GenericAuditSuite,
        BenignSuite,
    )
}


def suite_names() -> List[str]:
    """Registered suite names in registration order."""
    return list(SUITES)


def run_suite(name: str, seed: int, count: Optional[int] = None, jobs: int = 1) -> SuiteResult:
    """Run the named suite."""
    if name not in SUITES:
        raise FhError(f"Unknown suite {name!r}")
    return SUITES[name]().run(seed, count=count, jobs=jobs)
