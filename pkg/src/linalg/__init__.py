"""
Deterministic linear-algebra kernels
"""

from .types import SnapshotMatrix, CompactSvd, SubspaceBasis
from .decomposition import (
    center,
    compact_svd,
    principal_subspace,
    leading_left_singular,
    select_pod_dimension,
    cumulative_energy,
    covariance_spectrum,
    principal_angles,
    largest_principal_angle,
    subspace_distance,
)
from .snapshot_io import read_snapshots, write_snapshots

__all__ = [
    'SnapshotMatrix',
    'CompactSvd',
    'SubspaceBasis',
    'center',
    'compact_svd',
    'principal_subspace',
    'leading_left_singular',
    'select_pod_dimension',
    'cumulative_energy',
    'covariance_spectrum',
    'principal_angles',
    'largest_principal_angle',
    'subspace_distance',
    'read_snapshots',
    'write_snapshots',
]
