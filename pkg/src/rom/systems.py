"""
Full and reduced linear systems M ẍ + C ẋ + K x = F a(t)

Loads are separable: a pattern matrix F (n×p) times an amplitude history
a(t) (p values per time). A static system has no mass and reads the columns
of F as independent load cases.
"""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np

from ..linalg.types import SubspaceBasis
from ..solvers.newmark import Quantity
from ..utils.errors import DimensionMismatchError, InputValidationError

Amplitude = Callable[[np.ndarray], np.ndarray]

SYMMETRY_TOL = 1e-10


def _matrix(value, n: Optional[int], name: str) -> Optional[np.ndarray]:
    if value is None:
        return None
    out = np.array(value, dtype=float, copy=True)
    if out.ndim != 2 or out.shape[0] != out.shape[1] or (n is not None and out.shape[0] != n):
        raise DimensionMismatchError(f"{name} must be square of size {n}, got {out.shape}")
    if not np.all(np.isfinite(out)):
        raise InputValidationError(f"{name} contains non-finite entries")
    out.setflags(write=False)
    return out


def _check_symmetric(matrix: Optional[np.ndarray], name: str) -> None:
    if matrix is None:
        return
    scale = max(float(np.max(np.abs(matrix))), 1e-300)
    if float(np.max(np.abs(matrix - matrix.T))) > SYMMETRY_TOL * scale:
        raise InputValidationError(f"{name} is not symmetric")


def _pattern(force, n: int) -> Optional[np.ndarray]:
    if force is None:
        return None
    out = np.array(force, dtype=float, copy=True)
    if out.ndim == 1:
        out = out[:, None]
    if out.ndim != 2 or out.shape[0] != n:
        raise DimensionMismatchError(f"force pattern must have {n} rows, got shape {out.shape}")
    out.setflags(write=False)
    return out


def sampled_force(pattern: Optional[np.ndarray], amplitude: Optional[Amplitude],
                  times: np.ndarray, size: int) -> np.ndarray:
    """F a(t) sampled at every time; constant F·1 when no amplitude is given"""
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if pattern is None:
        return np.zeros((size, times.size))
    if amplitude is None:
        return np.repeat(pattern.sum(axis=1)[:, None], times.size, axis=1)
    coefficients = np.asarray(amplitude(times), dtype=float).reshape(pattern.shape[1], times.size)
    return pattern @ coefficients


@dataclass(frozen=True, eq=False)
class LinearSecondOrderSystem:
    """High-dimensional linear model; mass = damping = None is the static case"""
    stiffness: np.ndarray
    mass: Optional[np.ndarray] = None
    damping: Optional[np.ndarray] = None
    force: Optional[np.ndarray] = None
    force_amplitude: Optional[Amplitude] = None
    constraints: Optional[np.ndarray] = None

    def __post_init__(self):
        stiffness = _matrix(self.stiffness, None, "stiffness")
        n = stiffness.shape[0]
        mass = _matrix(self.mass, n, "mass")
        damping = _matrix(self.damping, n, "damping")
        _check_symmetric(stiffness, "stiffness")
        _check_symmetric(mass, "mass")
        constraints = None
        if self.constraints is not None and np.asarray(self.constraints).size:
            constraints = np.array(self.constraints, dtype=float).reshape(n, -1)
            constraints.setflags(write=False)
        object.__setattr__(self, "stiffness", stiffness)
        object.__setattr__(self, "mass", mass)
        object.__setattr__(self, "damping", damping)
        object.__setattr__(self, "force", _pattern(self.force, n))
        object.__setattr__(self, "constraints", constraints)

    @property
    def size(self) -> int:
        return self.stiffness.shape[0]

    @property
    def is_static(self) -> bool:
        return self.mass is None

    def force_series(self, times: np.ndarray) -> np.ndarray:
        return sampled_force(self.force, self.force_amplitude, times, self.size)

    def with_force(self, force: Optional[np.ndarray],
                   force_amplitude: Optional[Amplitude] = None) -> "LinearSecondOrderSystem":
        return LinearSecondOrderSystem(self.stiffness, self.mass, self.damping,
                                       force, force_amplitude, self.constraints)

    def constraint_residual(self, states: np.ndarray) -> float:
        """max |Bᵀx| over the given states (0 when unconstrained)"""
        if self.constraints is None:
            return 0.0
        return float(np.max(np.abs(self.constraints.T @ states)))


@dataclass(frozen=True, eq=False)
class ReducedSystem:
    """k×k operators A_W = Wᵀ A W and projected load pattern Wᵀ F.

    `frame` is V_r when the basis is expressed in reduced coordinates (two-stage
    path); the ambient basis is then frame · basis.
    """
    stiffness_r: np.ndarray
    basis: SubspaceBasis
    mass_r: Optional[np.ndarray] = None
    damping_r: Optional[np.ndarray] = None
    force_r: Optional[np.ndarray] = None
    force_amplitude: Optional[Amplitude] = None
    frame: Optional[np.ndarray] = None

    # solver-facing aliases
    @property
    def stiffness(self) -> np.ndarray:
        return self.stiffness_r

    @property
    def mass(self) -> Optional[np.ndarray]:
        return self.mass_r

    @property
    def damping(self) -> Optional[np.ndarray]:
        return self.damping_r

    @property
    def dim(self) -> int:
        return self.stiffness_r.shape[0]

    def force_series(self, times: np.ndarray) -> np.ndarray:
        return sampled_force(self.force_r, self.force_amplitude, times, self.dim)

    def ambient_basis(self) -> SubspaceBasis:
        if self.frame is None:
            return self.basis
        return SubspaceBasis(self.frame @ self.basis.basis)

    def project(self, vector: np.ndarray) -> np.ndarray:
        """Apply the force map Wᵀ to an ambient vector or matrix"""
        vector = np.asarray(vector, dtype=float)
        if self.frame is not None:
            vector = self.frame.T @ vector
        if vector.shape[0] != self.basis.ambient_dim:
            raise DimensionMismatchError(
                f"cannot project a vector of length {vector.shape[0]} onto a basis in R^{self.basis.ambient_dim}"
            )
        return self.basis.basis.T @ vector


@dataclass(frozen=True)
class OutputSelector:
    """Rows and trajectory field extracted from a reconstructed state"""
    name: str = "state"
    rows: Optional[Tuple[int, ...]] = None
    quantity: Quantity = Quantity.DISPLACEMENT

    def __post_init__(self):
        if self.rows is not None:
            object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        object.__setattr__(self, "quantity", Quantity(self.quantity))

    def row_index(self, size: int) -> Union[slice, Sequence[int]]:
        if self.rows is None:
            return slice(None)
        if any(r < 0 or r >= size for r in self.rows):
            raise InputValidationError(f"selector '{self.name}' rows {self.rows} out of range for size {size}")
        return list(self.rows)
