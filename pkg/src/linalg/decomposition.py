"""
Deterministic linear-algebra kernels: centering, compact SVD, the principal
subspace map, POD dimension selection and subspace comparison.
"""

from typing import Optional, Tuple, Union

import numpy as np
import scipy.linalg as la

from .types import CompactSvd, SnapshotMatrix, SubspaceBasis
from ..utils.config_manager import config
from ..utils.errors import (
    DimensionMismatchError,
    IllDefinedSubspaceError,
    InputValidationError,
    ZeroMatrixError,
)

MatrixLike = Union[np.ndarray, SnapshotMatrix]


def default_rank_tol() -> float:
    return float(config.get('linalg.rank_tol', 1e-12))


def default_gap_tol() -> float:
    return float(config.get('linalg.gap_tol', 1e-12))


def _as_matrix(a: MatrixLike, name: str = "matrix") -> np.ndarray:
    if isinstance(a, SnapshotMatrix):
        return a.data
    out = np.asarray(a, dtype=float)
    if out.ndim != 2:
        raise DimensionMismatchError(f"{name} must be 2-dimensional, got shape {out.shape}")
    if not np.all(np.isfinite(out)):
        raise InputValidationError(f"{name} contains non-finite entries")
    return out


def center(raw: np.ndarray) -> SnapshotMatrix:
    """Subtract the column mean: X₀ = X − x̄ 1ᵀ"""
    x = _as_matrix(raw, "snapshot matrix")
    if x.shape[1] < 1:
        raise InputValidationError("snapshot matrix needs at least one column")
    mean = x.mean(axis=1)
    return SnapshotMatrix(data=x - mean[:, None], mean=mean, centered=True)


def compact_svd(a: MatrixLike, rank_tol: Optional[float] = None) -> CompactSvd:
    """Compact SVD keeping singular values above rank_tol·σ_max"""
    x = _as_matrix(a)
    rank_tol = default_rank_tol() if rank_tol is None else float(rank_tol)
    if rank_tol < 0:
        raise InputValidationError(f"rank_tol must be non-negative, got {rank_tol}")

    u, s, vt = la.svd(x, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        raise ZeroMatrixError()
    r = int(np.count_nonzero(s > rank_tol * s[0]))
    return CompactSvd(left=u[:, :r], singular_values=s[:r], right=vt[:r].T)


def leading_left_singular(x: np.ndarray, k: int, gap_tol: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Top-k left singular vectors of x and the full singular spectrum.

    Raises IllDefinedSubspaceError when σ_k − σ_{k+1} <= gap_tol·σ₁. A missing
    σ_{k+1} counts as zero; k equal to the row count is always well defined.
    """
    p, m = x.shape
    if not 1 <= k <= min(p, m):
        raise InputValidationError(f"k must satisfy 1 <= k <= min(p, m) = {min(p, m)}, got {k}")
    gap_tol = default_gap_tol() if gap_tol is None else float(gap_tol)

    u, s, _ = la.svd(x, full_matrices=False)
    if k < p:
        following = s[k] if k < s.size else 0.0
        gap = s[k - 1] - following
        if gap <= gap_tol * s[0]:
            raise IllDefinedSubspaceError(gap, k)
    return u[:, :k], s


def principal_subspace(a: MatrixLike, k: int, gap_tol: Optional[float] = None) -> SubspaceBasis:
    """π_k(a): span of the left singular vectors of the k largest singular values"""
    u_k, _ = leading_left_singular(_as_matrix(a), k, gap_tol)
    return SubspaceBasis(u_k)


def cumulative_energy(singular_values: np.ndarray) -> np.ndarray:
    """Fraction of squared singular-value energy captured by the first j modes"""
    energy = np.cumsum(np.asarray(singular_values, dtype=float) ** 2)
    return energy / energy[-1]


def select_pod_dimension(singular_values: np.ndarray, tau: float) -> int:
    """Smallest k with Σ_{i<=k} σ_i² >= τ Σ σ_i²"""
    sigma = np.asarray(singular_values, dtype=float)
    if sigma.ndim != 1 or sigma.size == 0:
        raise InputValidationError("singular values must be a non-empty vector")
    if np.any(sigma <= 0) or np.any(np.diff(sigma) > 0):
        raise InputValidationError("singular values must be positive and non-increasing")
    if not 0.0 < tau < 1.0:
        raise InputValidationError(f"tau must lie in (0, 1), got {tau}")

    energy = np.cumsum(sigma ** 2)
    k = int(np.searchsorted(energy, tau * energy[-1], side='left')) + 1
    return min(k, sigma.size)


def covariance_spectrum(svd: CompactSvd, snapshot_count: int) -> np.ndarray:
    """Eigenvalues (σ_i/√m)² of the sample covariance S = X₀X₀ᵀ/m"""
    return (svd.singular_values / np.sqrt(snapshot_count)) ** 2


def principal_angles(u: SubspaceBasis, v: SubspaceBasis) -> np.ndarray:
    """Principal angles in [0, π/2], non-decreasing.

    Cosines are the singular values of uᵀv clamped to [0, 1]; angles whose
    cosine exceeds 1/√2 are recomputed from sines for accuracy near zero.
    """
    if u.ambient_dim != v.ambient_dim or u.subspace_dim != v.subspace_dim:
        raise DimensionMismatchError(
            f"subspaces differ in shape: {u.basis.shape} vs {v.basis.shape}"
        )
    a, b = u.basis, v.basis
    cross = a.T @ b
    cosines = np.clip(la.svdvals(cross), 0.0, 1.0)
    sines = np.clip(la.svdvals(b - a @ cross), 0.0, 1.0)

    # cosines descending pair with sines ascending
    sines = np.sort(sines)[: cosines.size]
    angles = np.where(cosines ** 2 >= 0.5, np.arcsin(sines), np.arccos(cosines))
    return np.sort(angles)


def largest_principal_angle(u: SubspaceBasis, v: SubspaceBasis) -> float:
    return float(principal_angles(u, v)[-1])


def subspace_distance(u: SubspaceBasis, v: SubspaceBasis) -> float:
    """Geodesic distance on the Grassmannian"""
    return float(np.linalg.norm(principal_angles(u, v)))
