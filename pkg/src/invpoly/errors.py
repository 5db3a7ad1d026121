"""Exception types shared across the package."""

from __future__ import annotations

import enum


class InvpolyError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(InvpolyError):
    """Malformed polynomial text.  ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ZeroCoefficientError(ParseError):
    """A term with coefficient 0; the monomial would vanish."""


class NotInvertibleReason(enum.Enum):
    NON_SQUARE = "non-square"
    SINGULAR_MATRIX = "singular-matrix"
    BAD_ROW_SHAPE = "bad-row-shape"
    NO_POSITIVE_WEIGHTS = "no-positive-weights"
    EXPONENT_BELOW_TWO = "exponent-below-two"


class NotInvertibleError(InvpolyError):
    """The exponent matrix is not that of an invertible polynomial."""

    def __init__(self, reason: NotInvertibleReason, message: str):
        super().__init__(f"{message} [{reason.value}]")
        self.reason = reason


class NonSquareError(InvpolyError):
    """A square matrix was required."""


class BadShapeError(InvpolyError):
    """Matrix dimensions do not fit the operation."""


class ZeroVectorError(InvpolyError):
    """The zero vector has no primitive direction."""


class SingularMatrixError(InvpolyError):
    """The matrix has determinant zero over the rationals."""


class NoPositiveWeightsError(InvpolyError):
    """No positive integral weight system exists for the polynomial."""


class NotQuasihomogeneousError(InvpolyError):
    """The polynomial admits no positive weight system, so the graded
    Jacobian-ring computation does not apply."""


class InvalidClassificationError(InvpolyError):
    """A Classification value violates its own invariants."""


class CoefficientWarning(UserWarning):
    """A parsed coefficient was normalized away."""


class LimitExceededError(InvpolyError):
    """A resource bound was hit; the computation was skipped, not wrong."""


class ConfigError(InvpolyError):
    """Invalid limits or enumeration configuration."""


class FermatNotAugmentableError(InvpolyError):
    """Single-power atoms admit no cleave variable."""


class BadBError(InvpolyError):
    """The requested auxiliary exponent is outside the valid range."""


class StrategyError(InvpolyError):
    """The cleave-exponent policy cannot produce a valid step here."""


class DefectError(InvpolyError):
    """An internal consistency check failed.  Always a bug, never bad input."""


class SignConventionViolatedError(DefectError):
    """Kernel-vector sign normalization disagrees with the cleave convention."""


class ClosedFormMismatchError(DefectError):
    """Closed-form minor determinants disagree with the generic computation."""


class IdentityViolatedError(DefectError):
    """The Milnor-difference identity failed for a cleave step."""


class LengthMismatchError(DefectError):
    """A decomposition tree's total disagrees with the Milnor number."""


class NonzeroSumDError(DefectError):
    """A degree-balanced cleave step produced a nonzero minor sum."""


class DivisibilityLostError(DefectError):
    """Weight divisibility failed partway through an iterated reduction."""


class TerminalMismatchError(DefectError):
    """The reduction's terminal power sum differs from the predicted one."""
