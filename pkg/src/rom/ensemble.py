"""
Stochastic ROM ensembles: per-draw reduction, solve and reconstruction
"""

import concurrent.futures
import math
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from .projection import TwoStageOperators, reconstruct, solve_reduced_static, two_stage_reduce
from .systems import LinearSecondOrderSystem, OutputSelector, ReducedSystem
from ..linalg.types import CompactSvd, SubspaceBasis
from ..solvers.newmark import NewmarkConfig, Trajectory, newmark_integrate
from ..subspace.model import SubspaceModel
from ..subspace.sampling import IndexStrategy, SubspaceSampler, derive_seed, make_rng
from ..utils.config_manager import config
from ..utils.errors import DimensionMismatchError, EnsembleAbortError, IllDefinedSubspaceError, InputValidationError
from ..utils.logger import get_logger
from ..utils.records import write_frame, write_json

logger = get_logger('srom')

Solution = Union[np.ndarray, Trajectory]


class ReducedSolver(ABC):
    """Solves a reduced system for its generalized coordinates"""

    @abstractmethod
    def solve(self, reduced: ReducedSystem) -> Solution:
        pass

    @property
    @abstractmethod
    def kind(self) -> str:
        pass


class StaticReducedSolver(ReducedSolver):
    """K_W q = Wᵀ F for every load column; loads default to the system's pattern"""

    def __init__(self, loads: Optional[np.ndarray] = None):
        self.loads = None if loads is None else np.asarray(loads, dtype=float)

    @property
    def kind(self) -> str:
        return "static"

    def solve(self, reduced: ReducedSystem) -> np.ndarray:
        return solve_reduced_static(reduced, self.loads)


class DynamicReducedSolver(ReducedSolver):
    """Newmark integration of the reduced system; ambient initial state is projected"""

    def __init__(self, newmark: NewmarkConfig,
                 d0: Optional[np.ndarray] = None,
                 v0: Optional[np.ndarray] = None):
        self.newmark = newmark
        self.d0 = None if d0 is None else np.asarray(d0, dtype=float)
        self.v0 = None if v0 is None else np.asarray(v0, dtype=float)

    @property
    def kind(self) -> str:
        return "dynamic"

    def solve(self, reduced: ReducedSystem) -> Trajectory:
        q0 = None if self.d0 is None else reduced.project(self.d0)
        qd0 = None if self.v0 is None else reduced.project(self.v0)
        return newmark_integrate(reduced, self.newmark, q0, qd0)


class NonlinearReducedSolver(ReducedSolver):
    """Galerkin ROM of q̇ = Wᵀ f(Wq, t); interface only"""

    def __init__(self, residual):
        self.residual = residual

    @property
    def kind(self) -> str:
        return "nonlinear"

    def solve(self, reduced: ReducedSystem) -> Solution:
        raise NotImplementedError("nonlinear reduced solvers are not available; only linear systems are supported")


@dataclass(frozen=True, eq=False)
class SromDraw:
    """One ensemble member"""
    index: int
    seed: int
    redraws: int
    basis_reduced: SubspaceBasis
    qoi: Dict[str, np.ndarray]
    solution: Optional[Solution] = None


@dataclass(eq=False)
class SromEnsemble:
    draws: Tuple[SromDraw, ...]
    model: SubspaceModel
    seed: int
    solver_kind: str
    seconds: float = 0.0
    extra: Dict[str, Any] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.draws)

    @property
    def redraws(self) -> int:
        return sum(d.redraws for d in self.draws)

    @property
    def qoi_names(self) -> Tuple[str, ...]:
        return tuple(self.draws[0].qoi) if self.draws else ()

    def seeds(self) -> np.ndarray:
        return np.array([d.seed for d in self.draws], dtype=np.uint64)

    def qoi_matrix(self, name: Optional[str] = None) -> np.ndarray:
        """(n_draws, …) stack of one QoI in draw-index order"""
        name = name or self.qoi_names[0]
        return np.stack([d.qoi[name] for d in self.draws])

    def qoi_series(self, name: Optional[str] = None) -> np.ndarray:
        """(n_draws, points) with each draw's QoI flattened row-major"""
        stacked = self.qoi_matrix(name)
        return stacked.reshape(stacked.shape[0], -1)

    def manifest(self) -> Dict[str, Any]:
        summary = self.model.summary()
        return {
            "kind": summary["kind"],
            "solver": self.solver_kind,
            "seed": int(self.seed),
            "beta": summary["beta"],
            "k": summary["k"],
            "r": summary["r"],
            "m": summary["m"],
            "n": summary["n"],
            "n_draws": len(self.draws),
            "redraws": self.redraws,
            "seconds": self.seconds,
            "qoi": list(self.qoi_names),
            "draws": [{"index": d.index, "seed": d.seed, "redraws": d.redraws} for d in self.draws],
            **self.extra,
        }

    def save(self, out_dir: Union[str, Path], prefix: str = "ensemble") -> Dict[str, Path]:
        """JSON manifest plus one CSV per QoI (one row per draw)"""
        out_dir = Path(out_dir)
        written = {"manifest": write_json(out_dir / f"{prefix}_manifest.json", self.manifest())}
        for name in self.qoi_names:
            series = self.qoi_series(name)
            frame = pd.DataFrame(series, columns=[f"p{j}" for j in range(series.shape[1])])
            frame.insert(0, "seed", [str(s) for s in self.seeds()])
            frame.insert(0, "draw", [d.index for d in self.draws])
            written[name] = write_frame(out_dir / f"{prefix}_{name}.csv", frame)
        return written


def _qoi(reduced: ReducedSystem, solution: Solution,
         selectors: Sequence[OutputSelector]) -> Dict[str, np.ndarray]:
    ambient = reduced.ambient_basis()
    return {selector.name: reconstruct(ambient, solution, selector) for selector in selectors}


def _check_consistent(model: SubspaceModel, svd: CompactSvd, operators: TwoStageOperators) -> None:
    if model.svd is not svd and (model.svd.rank != svd.rank or model.svd.row_dim != svd.row_dim):
        raise DimensionMismatchError(
            f"model SVD (rank {model.svd.rank}) does not match the given SVD (rank {svd.rank})"
        )
    if operators.rank != svd.rank:
        raise DimensionMismatchError(
            f"stage-one operators have rank {operators.rank}, SVD has rank {svd.rank}"
        )


def build_ensemble(system: LinearSecondOrderSystem,
                   svd: CompactSvd,
                   model: SubspaceModel,
                   n_draws: int,
                   seed: int,
                   solver: ReducedSolver,
                   selectors: Sequence[OutputSelector] = (OutputSelector(),),
                   operators: Optional[TwoStageOperators] = None,
                   index_strategy: Optional[IndexStrategy] = None,
                   max_workers: Optional[int] = None,
                   abort_fraction: Optional[float] = None,
                   keep_solutions: bool = True) -> SromEnsemble:
    """Draw n_draws stochastic bases and solve the reduced system on each.

    Draw i uses derive_seed(seed, i, attempt); a degenerate draw is retried
    with the next attempt. More than abort_fraction·n_draws redraws in total
    aborts the ensemble, so below 1/abort_fraction draws a single degenerate
    draw is already fatal.
    """
    n_draws = int(n_draws)
    if n_draws < 1:
        raise InputValidationError(f"n_draws must be >= 1, got {n_draws}")
    operators = operators or two_stage_reduce(system, svd)
    _check_consistent(model, svd, operators)

    ensemble_config = config.get_ensemble_config()
    max_workers = int(max_workers or ensemble_config.get('max_workers', 4))
    abort_fraction = float(ensemble_config.get('abort_fraction', 0.1) if abort_fraction is None else abort_fraction)
    redraw_budget = int(math.floor(abort_fraction * n_draws))
    sampler = SubspaceSampler(model, index_strategy)

    def run_draw(index: int) -> SromDraw:
        last_error = None
        for attempt in range(redraw_budget + 1):
            draw_seed = derive_seed(seed, index, attempt)
            try:
                basis = sampler.draw(make_rng(draw_seed))
            except IllDefinedSubspaceError as e:
                last_error = e
                continue
            reduced = operators.reduce(basis)
            solution = solver.solve(reduced)
            return SromDraw(index=index,
                            seed=draw_seed,
                            redraws=attempt,
                            basis_reduced=basis,
                            qoi=_qoi(reduced, solution, selectors),
                            solution=solution if keep_solutions else None)
        raise EnsembleAbortError(
            f"draw {index} stayed degenerate after {redraw_budget + 1} attempts "
            f"(k={model.subspace_dim}, beta={model.concentration}): {last_error}"
        )

    start_time = time.time()
    results: Dict[int, SromDraw] = {}
    if max_workers <= 1 or n_draws == 1:
        for index in range(n_draws):
            results[index] = run_draw(index)
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers=max_workers) as executor:
            future_to_index = {executor.submit(run_draw, index): index for index in range(n_draws)}
            for future in concurrent.futures.as_completed(future_to_index):
                results[future_to_index[future]] = future.result()

    draws = tuple(results[index] for index in range(n_draws))
    redraws = sum(d.redraws for d in draws)
    seconds = time.time() - start_time
    if redraws > abort_fraction * n_draws:
        raise EnsembleAbortError(
            f"{redraws} degenerate draws out of {n_draws} exceed the {abort_fraction:.0%} limit "
            f"(kind={model.kind.value}, k={model.subspace_dim}, beta={model.concentration})"
        )
    if redraws:
        logger.warning(f"Ensemble needed {redraws} redraws for {n_draws} draws")
    logger.info(
        f"Built {model.kind.value} ensemble: {n_draws} draws, k={model.subspace_dim}, "
        f"beta={model.concentration}, r={model.rank} in {seconds:.2f}s"
    )
    return SromEnsemble(draws=draws, model=model, seed=int(seed), solver_kind=solver.kind, seconds=seconds)


@dataclass(frozen=True, eq=False)
class DeterministicRom:
    """Galerkin ROM on the principal subspace V_k"""
    reduced: ReducedSystem
    solution: Solution
    qoi: Dict[str, np.ndarray]


def deterministic_rom(system: LinearSecondOrderSystem,
                      svd: CompactSvd,
                      k: int,
                      solver: ReducedSolver,
                      selectors: Sequence[OutputSelector] = (OutputSelector(),),
                      operators: Optional[TwoStageOperators] = None) -> DeterministicRom:
    """Reference ROM solution on the first k POD modes"""
    operators = operators or two_stage_reduce(system, svd)
    if not 1 <= k <= operators.rank:
        raise DimensionMismatchError(f"k must satisfy 1 <= k <= r={operators.rank}, got {k}")
    reduced = operators.reduce(SubspaceBasis(np.eye(operators.rank)[:, :k]))
    solution = solver.solve(reduced)
    return DeterministicRom(reduced=reduced, solution=solution, qoi=_qoi(reduced, solution, selectors))

