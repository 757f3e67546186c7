"""Errors raised by the FH toolkit."""
from typing import FrozenSet, Iterable, Optional

from .const import (
    ERROR_ARITY_MISMATCH,
    ERROR_DIM_MISMATCH,
    ERROR_DUPLICATE_ENTRY,
    ERROR_GROUP_CLOSURE,
    ERROR_LENGTH_MISMATCH,
    ERROR_LIFT_VERIFICATION,
    ERROR_NO_COLLISION,
    ERROR_NOT_IN_CLASS,
    ERROR_NOT_PROPER_SUBGROUP,
    ERROR_NOT_STRONG_BASE,
    ERROR_NOT_SUBGROUP,
    ERROR_OVERLAP,
    ERROR_PARSE,
    ERROR_PRECONDITION,
    ERROR_SAMPLE_EXHAUSTED,
    ERROR_SEARCH_BOUND,
    ERROR_SHARED_MISMATCH,
    ERROR_UNKNOWN_ELEMENT,
    ERROR_USAGE,
    ERROR_VERIFICATION,
    EXIT_PROPERTY_FAILURE,
    EXIT_USAGE,
)


class FhError(Exception):
    """Base class for all toolkit errors."""

    code = ERROR_PRECONDITION
    exit_code = EXIT_USAGE


class UsageError(FhError):
    """The command line could not be understood."""

    code = ERROR_USAGE


class ParseError(FhError):
    """A structure or type file could not be parsed."""

    code = ERROR_PARSE

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        """Initialize a parse error."""
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class GroupClosureError(FhError):
    """Closing the listed generators exceeds the configured order bound."""

    code = ERROR_GROUP_CLOSURE


class DuplicateEntry(FhError):
    """A tuple repeats an element."""

    code = ERROR_DUPLICATE_ENTRY


class ArityMismatch(FhError):
    """Tuple length or structure arity disagrees with the group."""

    code = ERROR_ARITY_MISMATCH


class UnknownElement(FhError):
    """An element is not in the universe."""

    code = ERROR_UNKNOWN_ELEMENT


class SharedMismatch(FhError):
    """Induced structures on the shared part disagree."""

    code = ERROR_SHARED_MISMATCH


class OverlapNotA(FhError):
    """Universes intersect outside the amalgamation base."""

    code = ERROR_OVERLAP


class SearchBoundExceeded(FhError):
    """An exhaustive search was asked to run beyond its bound."""

    code = ERROR_SEARCH_BOUND


class NotInClass(FhError):
    """A structure has a subset of negative predimension."""

    code = ERROR_NOT_IN_CLASS


class NotStrongBase(FhError):
    """A base set is not self-sufficient."""

    code = ERROR_NOT_STRONG_BASE


class NotSubgroup(FhError):
    """A group is not contained in another."""

    code = ERROR_NOT_SUBGROUP


class NotProperSubgroup(FhError):
    """A group is not a proper subgroup of another."""

    code = ERROR_NOT_PROPER_SUBGROUP


class LengthMismatch(FhError):
    """A typed tuple does not fit its atomic type."""

    code = ERROR_LENGTH_MISMATCH


class NoCollision(FhError):
    """Decollision was asked for on a collision-free structure."""

    code = ERROR_NO_COLLISION


class PreconditionFailed(FhError):
    """An operation precondition does not hold."""

    code = ERROR_PRECONDITION

    def __init__(
        self, message: str, witness: Optional[Iterable[str]] = None
    ) -> None:
        """Initialize with an optional witness subset."""
        self.witness: Optional[FrozenSet[str]] = (
            frozenset(witness) if witness is not None else None
        )
        if self.witness is not None:
            message = f"{message} (witness: {sorted(self.witness)})"
        super().__init__(message)


class VerificationFailed(FhError):
    """A computed object failed its own postcondition check."""

    code = ERROR_VERIFICATION
    exit_code = EXIT_PROPERTY_FAILURE


class DimMismatch(VerificationFailed):
    """Two dimension functions disagree on a subset."""

    code = ERROR_DIM_MISMATCH

    def __init__(self, message: str, witness: Iterable[str]) -> None:
        """Initialize with the disagreeing subset."""
        self.witness = frozenset(witness)
        super().__init__(f"{message} (witness: {sorted(self.witness)})")


class LiftVerificationFailed(VerificationFailed):
    """A lifted atomic type failed the exquisiteness recheck."""

    code = ERROR_LIFT_VERIFICATION


class SampleExhausted(VerificationFailed):
    """No admissible instance was drawn within the attempt limit."""

    code = ERROR_SAMPLE_EXHAUSTED
