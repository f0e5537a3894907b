"""
Newmark-β time integration for linear second-order systems
M ẍ + C ẋ + K x = f(t)
"""

import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Protocol, Sequence, Tuple

import numpy as np
import pandas as pd
import scipy.linalg as la

from ..utils.errors import DimensionMismatchError, InputValidationError, SingularSystemError
from ..utils.logger import get_logger
from ..utils.records import write_frame

logger = get_logger('solvers')


class Quantity(Enum):
    """Trajectory field"""
    DISPLACEMENT = "displacement"
    VELOCITY = "velocity"
    ACCELERATION = "acceleration"


class SecondOrderOperators(Protocol):
    """Anything with mass/damping/stiffness matrices and a sampled load"""

    @property
    def mass(self) -> Optional[np.ndarray]: ...

    @property
    def damping(self) -> Optional[np.ndarray]: ...

    @property
    def stiffness(self) -> np.ndarray: ...

    def force_series(self, times: np.ndarray) -> np.ndarray: ...


@dataclass(frozen=True)
class NewmarkConfig:
    """Time step, step count and Newmark parameters (average acceleration by default)"""
    dt: float
    n_steps: int
    gamma: float = 0.5
    beta_nm: float = 0.25

    def __post_init__(self):
        if not self.dt > 0:
            raise InputValidationError(f"time step must be positive, got {self.dt}")
        if int(self.n_steps) < 1:
            raise InputValidationError(f"n_steps must be >= 1, got {self.n_steps}")
        if not (2 * self.beta_nm >= self.gamma >= 0.5):
            logger.warning(
                f"Newmark parameters gamma={self.gamma}, beta={self.beta_nm} are only conditionally stable"
            )

    def times(self) -> np.ndarray:
        return self.dt * np.arange(int(self.n_steps) + 1)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Displacement, velocity and acceleration histories, one column per time"""
    times: np.ndarray
    displacement: np.ndarray
    velocity: np.ndarray
    acceleration: np.ndarray

    def __post_init__(self):
        t = self.times.size
        for name in ("displacement", "velocity", "acceleration"):
            field = getattr(self, name)
            if field.ndim != 2 or field.shape[1] != t:
                raise DimensionMismatchError(f"{name} has shape {field.shape}, expected (dofs, {t})")
            if not np.all(np.isfinite(field)):
                raise InputValidationError(f"{name} history contains non-finite values")
            field.setflags(write=False)

    @property
    def dofs(self) -> int:
        return self.displacement.shape[0]

    @property
    def n_steps(self) -> int:
        return self.times.size - 1

    def field(self, quantity: Quantity) -> np.ndarray:
        return getattr(self, Quantity(quantity).value)

    def select(self, rows: Sequence[int], quantity: Quantity) -> np.ndarray:
        return self.field(quantity)[list(rows)]

    def to_frame(self, rows: Optional[Sequence[int]] = None,
                 quantities: Sequence[Quantity] = tuple(Quantity)) -> pd.DataFrame:
        """Time column plus one column per (quantity, row)"""
        rows = list(range(self.dofs)) if rows is None else list(rows)
        columns = {"time": self.times}
        for quantity in quantities:
            values = self.field(quantity)
            for row in rows:
                columns[f"{Quantity(quantity).value}_{row}"] = values[row]
        return pd.DataFrame(columns)


def write_trajectory(path, trajectory: Trajectory, rows: Optional[Sequence[int]] = None,
                     quantities: Sequence[Quantity] = tuple(Quantity)):
    """Export selected DOF histories to CSV"""
    return write_frame(path, trajectory.to_frame(rows, quantities))


def factorize(matrix: np.ndarray, what: str) -> Tuple[np.ndarray, np.ndarray]:
    """LU factorization that reports singularity with a condition estimate"""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        lu, piv = la.lu_factor(matrix, check_finite=False)
    pivots = np.abs(np.diag(lu))
    largest = float(pivots.max()) if pivots.size else 0.0
    smallest = float(pivots.min()) if pivots.size else 0.0
    if largest == 0.0 or smallest <= np.finfo(float).eps * largest * matrix.shape[0]:
        condition = largest / smallest if smallest > 0 else float("inf")
        raise SingularSystemError(f"singular {what}", condition)
    return lu, piv


def _zeros_if_none(matrix: Optional[np.ndarray], n: int) -> np.ndarray:
    return np.zeros((n, n)) if matrix is None else np.asarray(matrix, dtype=float)


def newmark_integrate(system: SecondOrderOperators,
                      config: NewmarkConfig,
                      d0: Optional[np.ndarray] = None,
                      v0: Optional[np.ndarray] = None) -> Trajectory:
    """Integrate from (d0, v0) with initial acceleration from M a₀ = f(0) − C v₀ − K d₀"""
    stiffness = np.asarray(system.stiffness, dtype=float)
    n = stiffness.shape[0]
    mass = _zeros_if_none(system.mass, n)
    damping = _zeros_if_none(system.damping, n)

    d = np.zeros(n) if d0 is None else np.array(d0, dtype=float)
    v = np.zeros(n) if v0 is None else np.array(v0, dtype=float)
    if d.shape != (n,) or v.shape != (n,):
        raise DimensionMismatchError(f"initial conditions must have shape ({n},)")

    dt, gamma, beta = float(config.dt), float(config.gamma), float(config.beta_nm)
    times = config.times()
    forces = np.asarray(system.force_series(times), dtype=float)
    if forces.shape != (n, times.size):
        raise DimensionMismatchError(f"force history has shape {forces.shape}, expected {(n, times.size)}")

    mass_lu = factorize(mass, "mass matrix")
    a = la.lu_solve(mass_lu, forces[:, 0] - damping @ v - stiffness @ d, check_finite=False)

    effective = factorize(mass + gamma * dt * damping + beta * dt * dt * stiffness, "Newmark effective matrix")

    displacement = np.empty((n, times.size))
    velocity = np.empty((n, times.size))
    acceleration = np.empty((n, times.size))
    displacement[:, 0], velocity[:, 0], acceleration[:, 0] = d, v, a

    for i in range(1, times.size):
        d_pred = d + dt * v + (0.5 - beta) * dt * dt * a
        v_pred = v + (1.0 - gamma) * dt * a
        a = la.lu_solve(effective, forces[:, i] - damping @ v_pred - stiffness @ d_pred, check_finite=False)
        d = d_pred + beta * dt * dt * a
        v = v_pred + gamma * dt * a
        displacement[:, i], velocity[:, i], acceleration[:, i] = d, v, a

    return Trajectory(times, displacement, velocity, acceleration)


def total_energy(system: SecondOrderOperators, trajectory: Trajectory) -> np.ndarray:
    """Kinetic plus strain energy at every time"""
    stiffness = np.asarray(system.stiffness, dtype=float)
    mass = _zeros_if_none(system.mass, stiffness.shape[0])
    d, v = trajectory.displacement, trajectory.velocity
    kinetic = 0.5 * np.einsum('it,ij,jt->t', v, mass, v)
    strain = 0.5 * np.einsum('it,ij,jt->t', d, stiffness, d)
    return kinetic + strain
