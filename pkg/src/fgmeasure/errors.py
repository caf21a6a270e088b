"""Exception types shared across the package."""


class FgmeasureError(Exception):
    """Base class for all package-specific errors."""


class CancellationError(FgmeasureError):
    """A concatenation product is undefined because the junction cancels."""


class RankTooSmallError(FgmeasureError):
    """Measure operations need rank at least 2; rank 1 degenerates every bound."""


class RankMismatchError(FgmeasureError):
    """Operands live over free groups of different ranks."""


class PoleAtZeroError(FgmeasureError):
    """Power-series expansion requested for a function with a pole at t = 0."""


class PoleAtPointError(FgmeasureError):
    """Evaluation requested at a zero of the denominator."""


class HigherOrderPoleError(FgmeasureError):
    """Pole of order above one at t = 1; not a frequency generating function."""


class SingularMatrixError(FgmeasureError):
    """Linear solve attempted on a matrix with zero determinant."""


class EmptyLanguageError(FgmeasureError):
    """The automaton accepts nothing."""


class EpsilonArrowsError(FgmeasureError):
    """Operation requires an automaton without epsilon arrows."""


class NotDeterministicError(FgmeasureError):
    """Operation requires a deterministic automaton."""


class NotReducedError(FgmeasureError):
    """Automaton admits an accepting path spelling a cancelling letter pair."""


class NotSpecialError(FgmeasureError):
    """Operation requires a special automaton."""


class KindMismatchError(FgmeasureError):
    """Automaton does not have the speciality kind the operation expects."""


class InvalidFamilyError(FgmeasureError):
    """Malformed family description (empty handle, unreduced word, ...)."""


class UnsupportedFamilyError(FgmeasureError):
    """No tabulated closed form exists for this family."""


class IdentityInGeneratorsError(FgmeasureError):
    """A generator series contains the identity (nonzero constant term)."""


class NotMeasurableError(FgmeasureError):
    """The set is thick, so its frequency measure diverges."""


class ThickSetError(FgmeasureError):
    """Absorbing-chain measure requested for a thick set."""


class BudgetExceededError(FgmeasureError):
    """Exhaustive enumeration would exceed the configured word budget."""


class InconsistentClassificationError(FgmeasureError):
    """Pole test and completeness test disagree; signals an implementation bug."""
