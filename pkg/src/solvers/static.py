"""
Linear static solves K x = f with optional homogeneous constraints Bᵀx = 0
"""

import logging
from typing import Optional

import numpy as np
import scipy.linalg as la

from .newmark import factorize
from ..utils.errors import DimensionMismatchError, InputValidationError
from ..utils.logger import get_logger

logger = get_logger('solvers')


def rayleigh_damping(stiffness: np.ndarray, beta_h: float,
                     mass: Optional[np.ndarray] = None, alpha_h: float = 0.0) -> np.ndarray:
    """C = α M + β K; the benchmarks use the stiffness-proportional form (α = 0)"""
    if beta_h < 0 or alpha_h < 0:
        raise InputValidationError(f"Rayleigh coefficients must be non-negative, got {alpha_h}, {beta_h}")
    damping = beta_h * np.asarray(stiffness, dtype=float)
    if alpha_h:
        if mass is None:
            raise InputValidationError("mass-proportional damping needs the mass matrix")
        damping = damping + alpha_h * np.asarray(mass, dtype=float)
    return damping


def coordinate_constraints(constraints: np.ndarray) -> Optional[np.ndarray]:
    """Indices fixed by B when every column is a unit coordinate vector, else None"""
    fixed = []
    for column in constraints.T:
        nonzero = np.flatnonzero(column)
        if nonzero.size != 1 or column[nonzero[0]] != 1.0:
            return None
        fixed.append(int(nonzero[0]))
    return np.array(sorted(set(fixed)), dtype=int)


def _solve_dense(matrix: np.ndarray, rhs: np.ndarray, what: str) -> np.ndarray:
    return la.lu_solve(factorize(matrix, what), rhs, check_finite=False)


def solve_static(stiffness: np.ndarray, force: np.ndarray,
                 constraints: Optional[np.ndarray] = None) -> np.ndarray:
    """Solve K x = f for one (n,) or many (n, p) loads.

    Coordinate constraints are eliminated exactly so constrained entries are
    zero; general constraints use an orthonormal null-space basis of Bᵀ.
    """
    stiffness = np.asarray(stiffness, dtype=float)
    force = np.asarray(force, dtype=float)
    n = stiffness.shape[0]
    if stiffness.shape != (n, n) or force.shape[0] != n:
        raise DimensionMismatchError(f"stiffness {stiffness.shape} and force {force.shape} disagree")

    residual_map = None
    if constraints is None or np.asarray(constraints).size == 0:
        x = _solve_dense(stiffness, force, "stiffness matrix")
    else:
        constraints = np.asarray(constraints, dtype=float).reshape(n, -1)
        fixed = coordinate_constraints(constraints)
        if fixed is not None:
            free = np.setdiff1d(np.arange(n), fixed)
            x = np.zeros_like(force)
            x[free] = _solve_dense(stiffness[np.ix_(free, free)], force[free], "constrained stiffness matrix")
            residual_map = np.eye(n)[free]
        else:
            null = la.null_space(constraints.T)
            reduced = _solve_dense(null.T @ stiffness @ null, null.T @ force, "constrained stiffness matrix")
            x = null @ reduced
            residual_map = null.T

    if logger.logger.isEnabledFor(logging.DEBUG):
        residual = stiffness @ x - force
        residual = np.linalg.norm(residual if residual_map is None else residual_map @ residual)
        logger.debug(f"static solve relative residual {residual / max(np.linalg.norm(force), 1e-300):.3e}")
    return x
