"""
Full- and reduced-order solvers: Newmark-β integration and static solves
"""

from .newmark import (
    Quantity,
    NewmarkConfig,
    Trajectory,
    SecondOrderOperators,
    newmark_integrate,
    total_energy,
    write_trajectory,
    factorize,
)
from .static import rayleigh_damping, solve_static, coordinate_constraints

__all__ = [
    'Quantity',
    'NewmarkConfig',
    'Trajectory',
    'SecondOrderOperators',
    'newmark_integrate',
    'total_energy',
    'write_trajectory',
    'factorize',
    'rayleigh_damping',
    'solve_static',
    'coordinate_constraints',
]
