"""
Stochastic subspace model definitions
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Union

import numpy as np

from ..linalg.decomposition import center, compact_svd, covariance_spectrum
from ..linalg.types import CompactSvd, SnapshotMatrix
from ..utils.errors import DimensionMismatchError, InputValidationError


class SubspaceKind(Enum):
    """Stochastic subspace family"""
    BOOTSTRAP = "bootstrap"
    PPCA = "ppca"


@dataclass(frozen=True, eq=False)
class SubspaceModel:
    """Distribution over k-dimensional subspaces of range(V_r).

    Bootstrap draws resample the rows of W_r; PPCA draws scale a Gaussian
    r×β matrix by the covariance square roots σ_i/√m.
    """
    svd: CompactSvd
    snapshot_count: int
    subspace_dim: int
    concentration: int
    kind: SubspaceKind = SubspaceKind.BOOTSTRAP

    def __post_init__(self):
        kind = SubspaceKind(self.kind)
        object.__setattr__(self, "kind", kind)
        k, beta, m = int(self.subspace_dim), int(self.concentration), int(self.snapshot_count)
        object.__setattr__(self, "subspace_dim", k)
        object.__setattr__(self, "concentration", beta)
        object.__setattr__(self, "snapshot_count", m)

        if self.svd.column_dim != m:
            raise DimensionMismatchError(
                f"SVD has {self.svd.column_dim} right-vector rows but snapshot_count is {m}"
            )
        if k < 1 or k > self.svd.rank or k > m:
            raise InputValidationError(
                f"subspace_dim must satisfy 1 <= k <= min(rank={self.svd.rank}, m={m}), got {k}"
            )
        if beta < k:
            raise InputValidationError(f"concentration beta must be >= k={k}, got {beta}")

    @classmethod
    def from_snapshots(cls,
                       snapshots: Union[np.ndarray, SnapshotMatrix],
                       subspace_dim: int,
                       concentration: int,
                       kind: Union[SubspaceKind, str] = SubspaceKind.BOOTSTRAP,
                       rank_tol: Optional[float] = None) -> "SubspaceModel":
        """Center raw snapshots if needed and factor them"""
        if not isinstance(snapshots, SnapshotMatrix):
            snapshots = center(snapshots)
        svd = compact_svd(snapshots, rank_tol)
        return cls(svd=svd,
                   snapshot_count=snapshots.snapshot_count,
                   subspace_dim=subspace_dim,
                   concentration=concentration,
                   kind=SubspaceKind(kind))

    @property
    def rank(self) -> int:
        return self.svd.rank

    def with_concentration(self, concentration: int) -> "SubspaceModel":
        return SubspaceModel(self.svd, self.snapshot_count, self.subspace_dim, concentration, self.kind)

    def with_kind(self, kind: Union[SubspaceKind, str]) -> "SubspaceModel":
        return SubspaceModel(self.svd, self.snapshot_count, self.subspace_dim, self.concentration, SubspaceKind(kind))

    def summary(self) -> Dict[str, Any]:
        """JSON-serializable description for experiment manifests"""
        return {
            "kind": self.kind.value,
            "r": self.rank,
            "k": self.subspace_dim,
            "beta": self.concentration,
            "m": self.snapshot_count,
            "n": self.svd.row_dim,
            "singular_values": self.svd.singular_values.tolist(),
            "covariance_eigenvalues": covariance_spectrum(self.svd, self.snapshot_count).tolist(),
        }


@dataclass(frozen=True, eq=False)
class ResampleIndices:
    """β bootstrap column indices, zero-based"""
    indices: np.ndarray
    snapshot_count: int

    def __post_init__(self):
        idx = np.array(self.indices, dtype=np.int64, copy=True)
        if idx.ndim != 1 or idx.size < 1:
            raise InputValidationError("resample indices must be a non-empty vector")
        if np.any(idx < 0) or np.any(idx >= self.snapshot_count):
            raise InputValidationError(
                f"resample indices must lie in [0, {self.snapshot_count - 1}]"
            )
        idx.setflags(write=False)
        object.__setattr__(self, "indices", idx)

    def __len__(self) -> int:
        return int(self.indices.size)

    def one_based(self) -> np.ndarray:
        return self.indices + 1
