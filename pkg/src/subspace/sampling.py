"""
Samplers for the bootstrap and PPCA stochastic subspace models.

Both samplers work in the reduced r-dimensional coordinates of V_r: the
per-draw SVD acts on an r×β matrix, and ambient bases are only formed by
lift_to_ambient.
"""

from typing import Callable, Optional

import numpy as np
from retrying import retry

from .model import ResampleIndices, SubspaceKind, SubspaceModel
from ..linalg.decomposition import default_gap_tol, leading_left_singular, principal_subspace
from ..linalg.types import SnapshotMatrix, SubspaceBasis
from ..utils.config_manager import config
from ..utils.errors import (
    DegenerateResampleError,
    DimensionMismatchError,
    IllDefinedSubspaceError,
    InputValidationError,
)

PPCA_MAX_REDRAWS = int(config.get('sampling.ppca_max_redraws', 3))

IndexStrategy = Callable[[SubspaceModel, np.random.Generator], ResampleIndices]


def derive_seed(seed: int, index: int = 0, attempt: int = 0) -> int:
    """Deterministic per-draw seed from (seed, draw index, attempt)"""
    state = np.random.SeedSequence([int(seed), int(index), int(attempt)]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def draw_indices(model: SubspaceModel, rng: np.random.Generator) -> ResampleIndices:
    """β iid uniform column indices, drawn with replacement"""
    m = model.snapshot_count
    return ResampleIndices(rng.integers(0, m, size=model.concentration), m)


def _reduced_principal(matrix: np.ndarray, k: int, gap_tol: Optional[float]) -> SubspaceBasis:
    try:
        u_k, s = leading_left_singular(matrix, k, gap_tol)
    except IllDefinedSubspaceError as e:
        raise DegenerateResampleError(e.gap, k) from e
    tol = (default_gap_tol() if gap_tol is None else gap_tol) * s[0]
    if s[0] == 0.0 or s[k - 1] <= tol:
        raise DegenerateResampleError(s[k - 1], k)
    return SubspaceBasis(u_k)


def sample_bootstrap(model: SubspaceModel,
                     indices: ResampleIndices,
                     gap_tol: Optional[float] = None) -> SubspaceBasis:
    """U_k = π_k(diag(σ_r) W_r(b,:)ᵀ) in reduced coordinates"""
    if model.kind is not SubspaceKind.BOOTSTRAP:
        raise InputValidationError(f"sample_bootstrap needs a bootstrap model, got {model.kind.value}")
    if indices.snapshot_count != model.snapshot_count:
        raise DimensionMismatchError("resample indices were drawn for a different snapshot count")
    if indices.indices.size != model.concentration:
        raise InputValidationError(
            f"got {indices.indices.size} resample indices for beta={model.concentration}"
        )

    resampled = model.svd.singular_values[:, None] * model.svd.right[indices.indices].T
    return _reduced_principal(resampled, model.subspace_dim, gap_tol)


def _is_degenerate(exc: Exception) -> bool:
    return isinstance(exc, DegenerateResampleError)


@retry(stop_max_attempt_number=1 + PPCA_MAX_REDRAWS, retry_on_exception=_is_degenerate)
def _ppca_attempt(scales: np.ndarray, beta: int, k: int,
                  rng: np.random.Generator, gap_tol: Optional[float]) -> SubspaceBasis:
    gaussian = rng.standard_normal((scales.size, beta))
    return _reduced_principal(scales[:, None] * gaussian, k, gap_tol)


def sample_ppca(model: SubspaceModel,
                rng: np.random.Generator,
                gap_tol: Optional[float] = None) -> SubspaceBasis:
    """U_k = π_k(diag(s) Z) with s_i = σ_i/√m and Z an r×β standard Gaussian matrix"""
    if model.kind is not SubspaceKind.PPCA:
        raise InputValidationError(f"sample_ppca needs a PPCA model, got {model.kind.value}")
    scales = model.svd.singular_values / np.sqrt(model.snapshot_count)
    return _ppca_attempt(scales, model.concentration, model.subspace_dim, rng, gap_tol)


def lift_to_ambient(model: SubspaceModel, reduced: SubspaceBasis) -> SubspaceBasis:
    """W = V_r U_k"""
    if reduced.ambient_dim != model.rank:
        raise DimensionMismatchError(
            f"reduced basis lives in R^{reduced.ambient_dim}, model rank is {model.rank}"
        )
    return SubspaceBasis(model.svd.left @ reduced.basis)


def pod_subspace(model: SubspaceModel) -> SubspaceBasis:
    """The deterministic principal subspace 𝒱_k in reduced coordinates"""
    return SubspaceBasis(np.eye(model.rank)[:, :model.subspace_dim])


def naive_bootstrap_subspace(snapshots: SnapshotMatrix,
                             indices: ResampleIndices,
                             k: int,
                             gap_tol: Optional[float] = None) -> SubspaceBasis:
    """π_k(X*₀,β) formed in the ambient space; reference for the low-rank path"""
    return principal_subspace(snapshots.data[:, indices.indices], k, gap_tol)


class SubspaceSampler:
    """Draws reduced-coordinate bases from a model"""

    def __init__(self,
                 model: SubspaceModel,
                 index_strategy: Optional[IndexStrategy] = None,
                 gap_tol: Optional[float] = None):
        self.model = model
        self.index_strategy = index_strategy or draw_indices
        self.gap_tol = gap_tol

    def draw(self, rng: np.random.Generator) -> SubspaceBasis:
        if self.model.kind is SubspaceKind.BOOTSTRAP:
            indices = self.index_strategy(self.model, rng)
            return sample_bootstrap(self.model, indices, self.gap_tol)
        return sample_ppca(self.model, rng, self.gap_tol)

    def draw_ambient(self, rng: np.random.Generator) -> SubspaceBasis:
        return lift_to_ambient(self.model, self.draw(rng))
