"""Exception hierarchy shared by the engine, the services and the CLI.

Every error carries the process exit code the CLI reports for it:
1 for an unknown command, 2 for rejected input, 3 for a broken internal invariant.
"""

from typing import Any, Optional


class EngineError(Exception):
    """Base class for all engine errors."""

    exit_code: int = 3

    def __init__(self, message: str, location: Optional[str] = None):
        super().__init__(message)
        self.location = location

    def __str__(self) -> str:
        message = super().__str__()
        if self.location:
            return f"{message} (at {self.location})"
        return message


class UnknownCommand(EngineError):
    """Raised when the CLI is asked for a command it does not know."""

    exit_code = 1


class ValidationFailure(EngineError):
    """Input was rejected: malformed document, failed axiom, exceeded cap."""

    exit_code = 2


class DocumentError(ValidationFailure):
    """A JSON document could not be read or does not match its schema."""


class AxiomViolation(ValidationFailure):
    """A structure failed one of its axioms (associativity, functoriality, ...)."""


class CapExceeded(ValidationFailure):
    """A configured size cap would be exceeded."""


class DimensionMismatch(ValidationFailure):
    """Shapes or ambient dimensions do not agree."""


class CoefficientModeError(ValidationFailure):
    """An operation was called with the wrong coefficient mode (Q vs Z)."""


class TruncationOverflow(ValidationFailure):
    """A graded product would land above the truncation weight."""


class NotStronglyConnected(ValidationFailure):
    """The category has an empty hom-set between some ordered pair of objects."""


class NotCyclicGroup(ValidationFailure):
    """The group is not cyclic of the requested order."""


class NotExactSequence(ValidationFailure):
    """A short sequence of complexes is not exact in some degree."""


class InvariantViolation(EngineError):
    """An internal invariant failed; the result cannot be trusted."""

    exit_code = 3

    def __init__(
        self,
        message: str,
        location: Optional[str] = None,
        witness: Any = None,
    ):
        super().__init__(message, location)
        self.witness = witness


class ContainmentError(InvariantViolation):
    """A quotient was requested for subspaces that are not nested."""


class ExactnessFailure(InvariantViolation):
    """A long exact sequence failed to be exact at some node."""


class OracleMismatch(InvariantViolation):
    """Two independent computations of the same quantity disagree."""
