from typing import Any, Optional


class BesselZetaError(Exception):
    """Base class for every error raised by besselzeta."""


class DomainError(BesselZetaError, ValueError):
    """Raised when an argument lies outside the domain of an operation."""


class PoleError(DomainError):
    """Raised when a function is evaluated at one of its simple poles.

    Args:
        message (str): Human readable description.
        pole (int): Location of the pole.
        residue (Any, optional): Residue at the pole, defaults to None.

    Attributes:
        pole (int): Location of the pole.
        residue (Any): Residue at the pole, None when not computed.
    """

    def __init__(self, message: str, pole: int, residue: Optional[Any] = None):
        super().__init__(message)
        self.pole = pole
        self.residue = residue


class RemovedPointError(DomainError):
    """Raised at points where the representation is undefined and no fallback branch exists."""


class NonConvergenceError(BesselZetaError, ArithmeticError):
    """Raised when a series, quadrature or root refinement exhausts its budget above tolerance."""


class ConsistencyError(BesselZetaError, ArithmeticError):
    """Raised when two independent derivations of the same quantity disagree."""


class CacheError(BesselZetaError):
    """Raised when a coefficient cache file is corrupt or was written by an incompatible version."""


class ConfigError(BesselZetaError, ValueError):
    """Raised for invalid evaluation configuration values or files."""
