"""
Galerkin ROM assembly and stochastic ROM ensembles
"""

from .systems import LinearSecondOrderSystem, ReducedSystem, OutputSelector, sampled_force
from .projection import (
    TwoStageOperators,
    galerkin_project,
    two_stage_reduce,
    solve_reduced_static,
    reconstruct,
)
from .ensemble import (
    ReducedSolver,
    StaticReducedSolver,
    DynamicReducedSolver,
    NonlinearReducedSolver,
    SromDraw,
    SromEnsemble,
    DeterministicRom,
    build_ensemble,
    deterministic_rom,
)
from .pipeline import SromPipeline

__all__ = [
    'LinearSecondOrderSystem',
    'ReducedSystem',
    'OutputSelector',
    'sampled_force',
    'TwoStageOperators',
    'galerkin_project',
    'two_stage_reduce',
    'solve_reduced_static',
    'reconstruct',
    'ReducedSolver',
    'StaticReducedSolver',
    'DynamicReducedSolver',
    'NonlinearReducedSolver',
    'SromDraw',
    'SromEnsemble',
    'DeterministicRom',
    'build_ensemble',
    'deterministic_rom',
    'SromPipeline',
]
