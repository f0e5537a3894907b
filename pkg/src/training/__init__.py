"""
Training of the concentration parameter β
"""

from .objective import (
    TrainingSet,
    ObjectiveEstimate,
    OutputSampler,
    distance_to_reference,
    objective_samples,
    estimate_objective,
)
from .search import TraceEntry, TrainingResult, BetaSearch, beta_grid, optimize_beta

__all__ = [
    'TrainingSet',
    'ObjectiveEstimate',
    'OutputSampler',
    'distance_to_reference',
    'objective_samples',
    'estimate_objective',
    'TraceEntry',
    'TrainingResult',
    'BetaSearch',
    'beta_grid',
    'optimize_beta',
]
