"""
Exception hierarchy for the stochastic subspace toolkit
Every error raised on purpose by the package derives from SromError
"""

from typing import Optional


class SromError(Exception):
    """Base class for all toolkit errors"""


class InputValidationError(SromError, ValueError):
    """Input data or parameters violate a precondition"""


class DimensionMismatchError(InputValidationError):
    """Array shapes are incompatible"""


class ZeroMatrixError(InputValidationError):
    """Raised when a compact SVD is requested for an all-zero matrix"""

    def __init__(self, message: str = "zero matrix has no compact SVD"):
        super().__init__(message)


class TooFewDrawsError(InputValidationError):
    """Not enough ensemble draws for the requested prediction level"""


class ConfigError(SromError):
    """Configuration file missing or invalid"""


class IllDefinedSubspaceError(SromError):
    """The principal subspace map has no singular-value gap at position k"""

    def __init__(self, gap: float, k: int, message: Optional[str] = None):
        self.gap = float(gap)
        self.k = int(k)
        super().__init__(message or f"principal subspace ill-defined: gap {self.gap:.3e} at k={self.k}")


class DegenerateResampleError(IllDefinedSubspaceError):
    """A bootstrap or Gaussian draw has rank below k"""

    def __init__(self, gap: float, k: int, message: Optional[str] = None):
        super().__init__(gap, k, message or f"degenerate resample: gap {float(gap):.3e} at k={int(k)}")


class SingularSystemError(SromError):
    """A linear system could not be factorized"""

    def __init__(self, message: str, condition: float = float("inf")):
        self.condition = float(condition)
        super().__init__(f"{message} (condition estimate {self.condition:.3e})")


class EnsembleAbortError(SromError):
    """Too many degenerate draws while building an ensemble"""


class TrainingError(SromError):
    """Hyperparameter training could not evaluate the objective"""
