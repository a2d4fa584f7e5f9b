"""Exception types shared across the package."""

from __future__ import annotations


class LeibnizSuperError(Exception):
    """Base class for every error this package raises deliberately."""


class BackendMismatch(LeibnizSuperError):
    """Scalars or objects from different scalar backends were mixed."""


class DimensionMismatch(LeibnizSuperError):
    """Vector or matrix shapes do not line up."""


class IndexOutOfRange(LeibnizSuperError, IndexError):
    """A basis label or position falls outside the declared dimensions."""


class DuplicateEntry(LeibnizSuperError):
    """The same bracket pair was supplied twice."""


class GradingViolation(LeibnizSuperError):
    """A bracket value leaves the parity component forced by its arguments."""


class NotNilpotent(LeibnizSuperError):
    """An operation that requires nilpotency met a non-nilpotent input."""


class SingularMap(LeibnizSuperError):
    """A linear map that must be invertible is singular."""


class ParseError(LeibnizSuperError, ValueError):
    """Malformed serialized input; the message locates the offending part."""


class OddDimensionRequired(LeibnizSuperError):
    """The odd part must have odd dimension for this family."""


class DegenerateFamily(LeibnizSuperError):
    """A family parameter that must be nonzero vanished."""


class ZeroScale(LeibnizSuperError):
    """A scaling parameter that must be nonzero vanished."""


class PartitionMismatch(LeibnizSuperError):
    """A chain-length partition is inconsistent with the declared data."""


class HypothesisViolated(LeibnizSuperError):
    """Probe parameters fall outside the hypothesis the probe targets."""


class NotTwoGenerated(LeibnizSuperError):
    """The algebra does not have exactly two generators."""


class EmptySearchSpace(LeibnizSuperError):
    """No admissible candidate exists for the requested maximization."""


class InconsistentStructure(LeibnizSuperError):
    """Completion produced a table that fails the graded Leibniz identity.

    Carries the first violating triple of basis labels and its residual
    vector so callers can report or bucket the failure.
    """

    def __init__(self, triple, residual, algebra=None):
        self.triple = tuple(triple)
        self.residual = tuple(residual)
        self.algebra = algebra
        labels = ", ".join(str(t) for t in self.triple)
        super().__init__(f"identity fails at ({labels})")
