"""
Stochastic subspace models: bootstrap resampling and probabilistic PCA
"""

from .model import SubspaceKind, SubspaceModel, ResampleIndices
from .sampling import (
    derive_seed,
    make_rng,
    draw_indices,
    sample_bootstrap,
    sample_ppca,
    lift_to_ambient,
    pod_subspace,
    naive_bootstrap_subspace,
    SubspaceSampler,
)

__all__ = [
    'SubspaceKind',
    'SubspaceModel',
    'ResampleIndices',
    'derive_seed',
    'make_rng',
    'draw_indices',
    'sample_bootstrap',
    'sample_ppca',
    'lift_to_ambient',
    'pod_subspace',
    'naive_bootstrap_subspace',
    'SubspaceSampler',
]
