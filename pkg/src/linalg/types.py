"""
Linear-algebra value types: snapshot matrices, compact SVD factors and
orthonormal subspace bases.
"""

from dataclasses import dataclass, field

import numpy as np

from ..utils.errors import InputValidationError, DimensionMismatchError

ORTHONORMAL_TOL = 1e-10


def as_frozen(array, ndim: int, name: str) -> np.ndarray:
    """Copy to a finite float64 array of the given rank and make it read-only"""
    out = np.array(array, dtype=float, copy=True)
    if out.ndim != ndim:
        raise DimensionMismatchError(f"{name} must be {ndim}-dimensional, got shape {out.shape}")
    if not np.all(np.isfinite(out)):
        raise InputValidationError(f"{name} contains non-finite entries")
    out.setflags(write=False)
    return out


def orthonormality_defect(q: np.ndarray) -> float:
    """Max-abs deviation of qᵀq from the identity"""
    k = q.shape[1]
    return float(np.max(np.abs(q.T @ q - np.eye(k)))) if k else 0.0


@dataclass(frozen=True, eq=False)
class SnapshotMatrix:
    """n×m state samples (columns) with the column mean that was removed"""

    data: np.ndarray
    mean: np.ndarray
    centered: bool = True

    def __post_init__(self):
        data = as_frozen(self.data, 2, "snapshot data")
        mean = as_frozen(self.mean, 1, "snapshot mean")
        n, m = data.shape
        if n < 1 or m < 1:
            raise InputValidationError(f"snapshot matrix needs n, m >= 1, got {data.shape}")
        if mean.shape[0] != n:
            raise DimensionMismatchError(f"mean has length {mean.shape[0]}, expected {n}")
        if self.centered:
            scale = np.maximum(np.max(np.abs(data), axis=1), 1.0)
            if np.any(np.abs(data.sum(axis=1)) > 1e-10 * scale):
                raise InputValidationError("centered snapshot rows do not sum to zero")
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "mean", mean)

    @property
    def state_dim(self) -> int:
        return self.data.shape[0]

    @property
    def snapshot_count(self) -> int:
        return self.data.shape[1]

    def uncentered(self) -> np.ndarray:
        """The raw snapshot matrix X = X₀ + x̄ 1ᵀ"""
        if not self.centered:
            return np.array(self.data)
        return self.data + self.mean[:, None]


@dataclass(frozen=True, eq=False)
class CompactSvd:
    """Factors V_r, σ_r, W_r of a rank-r matrix"""

    left: np.ndarray
    singular_values: np.ndarray
    right: np.ndarray
    rank: int = field(init=False)

    def __post_init__(self):
        left = as_frozen(self.left, 2, "left singular vectors")
        sigma = as_frozen(self.singular_values, 1, "singular values")
        right = as_frozen(self.right, 2, "right singular vectors")
        r = sigma.shape[0]
        if r < 1:
            raise InputValidationError("compact SVD needs rank >= 1")
        if left.shape[1] != r or right.shape[1] != r:
            raise DimensionMismatchError(
                f"factor shapes {left.shape}, {sigma.shape}, {right.shape} disagree on rank"
            )
        if np.any(sigma <= 0) or np.any(np.diff(sigma) > 0):
            raise InputValidationError("singular values must be positive and non-increasing")
        if orthonormality_defect(left) > ORTHONORMAL_TOL or orthonormality_defect(right) > ORTHONORMAL_TOL:
            raise InputValidationError("singular vectors are not orthonormal")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "singular_values", sigma)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "rank", r)

    @property
    def row_dim(self) -> int:
        return self.left.shape[0]

    @property
    def column_dim(self) -> int:
        return self.right.shape[0]

    def reconstruct(self) -> np.ndarray:
        return (self.left * self.singular_values) @ self.right.T


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """Column-orthonormal p×k frame representing a point of Gr(p, k)"""

    basis: np.ndarray

    def __post_init__(self):
        basis = as_frozen(self.basis, 2, "subspace basis")
        p, k = basis.shape
        if not 1 <= k <= p:
            raise InputValidationError(f"subspace dimension must satisfy 1 <= k <= p, got {basis.shape}")
        defect = orthonormality_defect(basis)
        if defect > ORTHONORMAL_TOL:
            raise InputValidationError(f"basis is not orthonormal (defect {defect:.3e})")
        object.__setattr__(self, "basis", basis)

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def subspace_dim(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> np.ndarray:
        """Orthogonal projector onto the subspace"""
        return self.basis @ self.basis.T
