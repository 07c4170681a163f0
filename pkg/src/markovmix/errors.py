"""Exception types shared across the package."""


class ChainError(Exception):
    """Base class for every error this package raises on purpose."""


class NotSquareError(ChainError):
    """Raw matrix is not square or has fewer than two states."""


class NegativeEntryError(ChainError):
    """An entry is more negative than the validation tolerance allows."""


class RowSumError(ChainError):
    """A row sum deviates from 1 by more than the validation tolerance."""


class DimensionMismatchError(ChainError):
    """Operands have incompatible state counts."""


class OutOfRangeError(ChainError):
    """A scalar parameter lies outside its documented domain."""


class NotErgodicError(ChainError):
    """The chain is not irreducible and aperiodic."""


class NoConvergenceError(ChainError):
    """Iterative stationary solver exceeded its iteration cap."""


class RankDefectError(ChainError):
    """I - P has a number of numerically-zero singular values other than one."""


class NonPositiveEpsError(ChainError):
    """Epsilon must be strictly positive."""


class EpsTooLargeError(ChainError):
    """Epsilon is at or above the 1/sqrt(n) validity threshold."""


class IterationCapError(ChainError):
    """Mixing-time search exceeded its iteration cap."""


class HorizonCapError(ChainError):
    """Certified adiabatic horizon exceeds the configured cap."""


class CapExceededError(ChainError):
    """A scan hit its cap before finishing.

    ``trace`` holds the partial per-T worst-gap pairs seen so far, for
    diagnosis.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = list(trace) if trace is not None else []


class BadParamsError(ChainError):
    """Generator parameters or input files outside their allowed ranges."""
