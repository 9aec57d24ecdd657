"""Exception hierarchy for the L00L simulator.

Every error raised on purpose by the library derives from LoolsimError.
Configuration problems are ConfigError; everything a physics module rejects
is a NumericalDomainError subclass. Both also subclass ValueError so callers
catching ValueError keep working.
"""

from typing import Optional


class LoolsimError(Exception):
    """Base class for all simulator errors."""


class ConfigError(LoolsimError, ValueError):
    """Invalid run configuration (unknown key, out-of-range parameter)."""


class OutputPathError(ConfigError):
    """The result file cannot be created or written."""


class NumericalDomainError(LoolsimError, ValueError):
    """An operation was asked to act outside its mathematical domain."""


class PathsNotDistinctError(NumericalDomainError):
    """Both photons of a two-photon input were placed in the same path."""


class NonUnitaryError(NumericalDomainError):
    """A mode transformation failed the unitarity check."""


class UnmappedModeError(NumericalDomainError):
    """A state occupies a mode the transformation does not cover."""


class EmptyPostSelectionError(NumericalDomainError):
    """No coincidence term survived post-selection."""

    def __init__(self, message: str, success_probability: float = 0.0):
        super().__init__(message)
        self.success_probability = success_probability


class ModeTagError(NumericalDomainError):
    """An optical element was applied to a mode it cannot act on."""


class ReflectivityRangeError(NumericalDomainError):
    """Beamsplitter reflectivity outside [0, 1]."""


class UnnormalizedModelError(NumericalDomainError):
    """A spectral amplitude or JSA failed its normalization check."""


class SubspaceMismatchError(NumericalDomainError):
    """A state does not live in the declared two-party subspace."""


class MissingSettingError(NumericalDomainError):
    """A measurement setting required by an estimator has no record."""


class RankDeficientError(NumericalDomainError):
    """Tomographic settings are not informationally complete."""


class DimensionMismatchError(NumericalDomainError):
    """Operands have incompatible dimensions."""


class EmptyRangeError(NumericalDomainError):
    """A scan range is empty or has too few points."""


def describe(error: BaseException, context: Optional[str] = None) -> str:
    """Format an error for log output.

    Args:
        error: The exception to describe
        context: Optional prefix naming the failing step

    Returns:
        One-line description
    """
    text = f"{type(error).__name__}: {error}"
    return f"{context}: {text}" if context else text
