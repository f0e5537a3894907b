"""
Utilities for the stochastic subspace toolkit
"""

from .config_manager import ConfigManager, config
from .logger import get_logger, SromLogger
from .errors import (
    SromError,
    InputValidationError,
    DimensionMismatchError,
    ZeroMatrixError,
    TooFewDrawsError,
    ConfigError,
    IllDefinedSubspaceError,
    DegenerateResampleError,
    SingularSystemError,
    EnsembleAbortError,
    TrainingError,
)

__all__ = [
    'ConfigManager',
    'config',
    'get_logger',
    'SromLogger',
    'SromError',
    'InputValidationError',
    'DimensionMismatchError',
    'ZeroMatrixError',
    'TooFewDrawsError',
    'ConfigError',
    'IllDefinedSubspaceError',
    'DegenerateResampleError',
    'SingularSystemError',
    'EnsembleAbortError',
    'TrainingError',
]
