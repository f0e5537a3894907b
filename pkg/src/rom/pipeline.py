"""
SROM pipeline bound to one system and snapshot set
"""

from typing import Optional, Sequence, Union

import numpy as np

from .ensemble import DeterministicRom, ReducedSolver, SromEnsemble, build_ensemble, deterministic_rom
from .projection import two_stage_reduce
from .systems import LinearSecondOrderSystem, OutputSelector
from ..linalg.types import CompactSvd
from ..subspace.model import SubspaceKind, SubspaceModel
from ..subspace.sampling import IndexStrategy
from ..training.objective import OutputSampler
from ..utils.errors import InputValidationError


class SromPipeline(OutputSampler):
    """Stage-one operators computed once; ensembles and reference ROM on demand.

    `cases_along` tells how training cases sit in a reconstructed output:
    "columns" for static multi-load solves (rows are DOFs), "rows" for
    dynamic histories (columns are times).
    """

    def __init__(self,
                 system: LinearSecondOrderSystem,
                 svd: CompactSvd,
                 snapshot_count: int,
                 subspace_dim: int,
                 solver: ReducedSolver,
                 selector: Optional[OutputSelector] = None,
                 kind: Union[SubspaceKind, str] = SubspaceKind.BOOTSTRAP,
                 cases_along: str = "columns",
                 index_strategy: Optional[IndexStrategy] = None,
                 max_workers: Optional[int] = None):
        if cases_along not in ("columns", "rows"):
            raise InputValidationError(f"cases_along must be 'columns' or 'rows', got {cases_along!r}")
        self.system = system
        self.svd = svd
        self.snapshot_count = int(snapshot_count)
        self.k = int(subspace_dim)
        self.solver = solver
        self.selector = selector or OutputSelector()
        self.kind = SubspaceKind(kind)
        self.cases_along = cases_along
        self.index_strategy = index_strategy
        self.max_workers = max_workers
        self.operators = two_stage_reduce(system, svd)

    @property
    def subspace_dim(self) -> int:
        return self.k

    def model(self, beta: int) -> SubspaceModel:
        return SubspaceModel(self.svd, self.snapshot_count, self.k, int(beta), self.kind)

    def ensemble(self, beta: int, n_draws: int, seed: int,
                 selectors: Optional[Sequence[OutputSelector]] = None,
                 keep_solutions: bool = False) -> SromEnsemble:
        return build_ensemble(self.system, self.svd, self.model(beta), n_draws, seed, self.solver,
                              selectors=selectors or (self.selector,),
                              operators=self.operators,
                              index_strategy=self.index_strategy,
                              max_workers=self.max_workers,
                              keep_solutions=keep_solutions)

    def reference(self, selectors: Optional[Sequence[OutputSelector]] = None) -> DeterministicRom:
        return deterministic_rom(self.system, self.svd, self.k, self.solver,
                                 selectors or (self.selector,), operators=self.operators)

    def as_cases(self, output: np.ndarray) -> np.ndarray:
        """(n_cases, T) view of one reconstructed output"""
        output = np.asarray(output, dtype=float)
        if output.ndim == 1:
            return output[None, :]
        return output.T if self.cases_along == "columns" else output

    def reference_cases(self) -> np.ndarray:
        return self.as_cases(self.reference().qoi[self.selector.name])

    def sample(self, beta: int, n_draws: int, seed: int) -> np.ndarray:
        ensemble = self.ensemble(beta, n_draws, seed)
        return np.stack([self.as_cases(d.qoi[self.selector.name]) for d in ensemble.draws])
