"""
Galerkin projection, two-stage reduction and full-state reconstruction
"""

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
import scipy.linalg as la

from .systems import Amplitude, LinearSecondOrderSystem, OutputSelector, ReducedSystem
from ..linalg.types import CompactSvd, SubspaceBasis
from ..solvers.newmark import Trajectory, factorize
from ..utils.errors import DimensionMismatchError, SingularSystemError


def _sandwich(basis: np.ndarray, matrix: Optional[np.ndarray]) -> Optional[np.ndarray]:
    if matrix is None:
        return None
    reduced = basis.T @ matrix @ basis
    # symmetric inputs stay exactly symmetric after projection
    if np.array_equal(matrix, matrix.T):
        reduced = 0.5 * (reduced + reduced.T)
    return reduced


def _project_pattern(basis: np.ndarray, pattern: Optional[np.ndarray]) -> Optional[np.ndarray]:
    return None if pattern is None else basis.T @ pattern


def galerkin_project(system: LinearSecondOrderSystem, basis: SubspaceBasis) -> ReducedSystem:
    """A_V = Vᵀ A V for every operator and Vᵀ F for the load pattern"""
    if basis.ambient_dim != system.size:
        raise DimensionMismatchError(
            f"basis lives in R^{basis.ambient_dim}, system has {system.size} dofs"
        )
    v = basis.basis
    return ReducedSystem(stiffness_r=_sandwich(v, system.stiffness),
                         basis=basis,
                         mass_r=_sandwich(v, system.mass),
                         damping_r=_sandwich(v, system.damping),
                         force_r=_project_pattern(v, system.force),
                         force_amplitude=system.force_amplitude)


@dataclass(frozen=True, eq=False)
class TwoStageOperators:
    """Operators projected once onto range(V_r); shared read-only across draws"""
    frame: np.ndarray
    stiffness_r: np.ndarray
    mass_r: Optional[np.ndarray] = None
    damping_r: Optional[np.ndarray] = None
    force_r: Optional[np.ndarray] = None
    force_amplitude: Optional[Amplitude] = None

    def __post_init__(self):
        for name in ("frame", "stiffness_r", "mass_r", "damping_r", "force_r"):
            value = getattr(self, name)
            if value is not None:
                value.setflags(write=False)

    @property
    def rank(self) -> int:
        return self.frame.shape[1]

    def reduce(self, reduced_basis: SubspaceBasis) -> ReducedSystem:
        """U_kᵀ A_r U_k; touches only r×r and r×k objects"""
        if reduced_basis.ambient_dim != self.rank:
            raise DimensionMismatchError(
                f"reduced basis lives in R^{reduced_basis.ambient_dim}, stage one has rank {self.rank}"
            )
        u = reduced_basis.basis
        return ReducedSystem(stiffness_r=_sandwich(u, self.stiffness_r),
                             basis=reduced_basis,
                             mass_r=_sandwich(u, self.mass_r),
                             damping_r=_sandwich(u, self.damping_r),
                             force_r=_project_pattern(u, self.force_r),
                             force_amplitude=self.force_amplitude,
                             frame=self.frame)


def two_stage_reduce(system: LinearSecondOrderSystem, svd: CompactSvd) -> TwoStageOperators:
    """Stage one: A_r = V_rᵀ A V_r and V_rᵀ F"""
    if svd.row_dim != system.size:
        raise DimensionMismatchError(
            f"SVD left vectors have {svd.row_dim} rows, system has {system.size} dofs"
        )
    v = np.array(svd.left)
    return TwoStageOperators(frame=v,
                             stiffness_r=_sandwich(v, system.stiffness),
                             mass_r=_sandwich(v, system.mass),
                             damping_r=_sandwich(v, system.damping),
                             force_r=_project_pattern(v, system.force),
                             force_amplitude=system.force_amplitude)


def solve_reduced_static(reduced: ReducedSystem, force: Optional[np.ndarray] = None) -> np.ndarray:
    """q = K_k⁻¹ Wᵀ f; the projected load pattern is used when force is None"""
    rhs = reduced.force_r if force is None else reduced.project(force)
    if rhs is None:
        raise DimensionMismatchError("static solve needs a load: the reduced system carries none")
    try:
        lu = factorize(reduced.stiffness_r, "reduced stiffness")
    except SingularSystemError as e:
        condition = float(np.linalg.cond(reduced.stiffness_r))
        raise SingularSystemError(f"singular reduced stiffness (k={reduced.dim})", condition) from e
    return la.lu_solve(lu, rhs, check_finite=False)


def reconstruct(basis: Union[SubspaceBasis, ReducedSystem],
                q: Union[np.ndarray, Trajectory],
                selector: Optional[OutputSelector] = None) -> np.ndarray:
    """Selected rows of x = W q.

    Static q (k or k×p) gives (rows,) or (rows, p); a trajectory gives
    (rows, T) of the selector's quantity.
    """
    if isinstance(basis, ReducedSystem):
        basis = basis.ambient_basis()
    selector = selector or OutputSelector()
    values = q.field(selector.quantity) if isinstance(q, Trajectory) else np.asarray(q, dtype=float)
    if values.shape[0] != basis.subspace_dim:
        raise DimensionMismatchError(
            f"reduced state has {values.shape[0]} rows, basis has {basis.subspace_dim} columns"
        )
    rows = selector.row_index(basis.ambient_dim)
    return basis.basis[rows] @ values
