"""
Discrete search for the concentration parameter β.

A coarse geometric grid locates the incumbent, integer golden-section
search refines the bracket around it, and the final choice is the smallest
β whose estimate is within the noise tolerance of the best one.
"""

import math
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import pandas as pd

from .objective import ObjectiveEstimate, OutputSampler, TrainingSet, estimate_objective
from ..utils.config_manager import config
from ..utils.errors import InputValidationError, SromError, TrainingError
from ..utils.logger import get_logger
from ..utils.records import write_frame

logger = get_logger('training')

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

TRACE_HEADER = "objective averages training cases by the mean; common random numbers across beta"


@dataclass(frozen=True)
class TraceEntry:
    beta: int
    mean: float
    std_error: float
    n_mc: int
    seconds: float
    stage: str
    failed: bool = False


@dataclass
class TrainingResult:
    beta_star: int
    trace: List[TraceEntry] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def best(self) -> TraceEntry:
        return next(e for e in self.trace if e.beta == self.beta_star and not e.failed)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([{
            "beta": e.beta,
            "mean": e.mean,
            "std_error": e.std_error,
            "n_mc": e.n_mc,
            "seconds": e.seconds,
            "stage": e.stage,
            "failed": e.failed,
        } for e in self.trace])

    def save_trace(self, path: Union[str, Path]) -> Path:
        return write_frame(path, self.to_frame(), comment=f"{TRACE_HEADER}\nbeta_star={self.beta_star}")


def beta_grid(beta_min: int, beta_max: int) -> List[int]:
    """{k, ⌈1.5k⌉, 2k, 4k, 8k, …} capped by and ending at beta_max"""
    beta_min, beta_max = int(beta_min), int(beta_max)
    if beta_min < 1 or beta_max < beta_min:
        raise InputValidationError(f"need 1 <= beta_min <= beta_max, got {beta_min}, {beta_max}")
    grid = {beta_min, math.ceil(1.5 * beta_min)}
    value = 2 * beta_min
    while value < beta_max:
        grid.add(value)
        value *= 2
    grid.add(beta_max)
    return sorted(b for b in grid if b <= beta_max)


class BetaSearch:
    """Memoized objective evaluations with a full trace"""

    def __init__(self, training: TrainingSet, pipeline: OutputSampler, n_mc: int, seed: int,
                 min_improvement_se: float = 1.0):
        self.training = training
        self.pipeline = pipeline
        self.n_mc = int(n_mc)
        self.seed = int(seed)
        self.min_improvement_se = float(min_improvement_se)
        self.trace: List[TraceEntry] = []
        self._cache: Dict[int, Optional[ObjectiveEstimate]] = {}

    def evaluate(self, beta: int, stage: str) -> Optional[ObjectiveEstimate]:
        beta = int(beta)
        if beta in self._cache:
            return self._cache[beta]
        start_time = time.time()
        try:
            # same seed for every beta: common random numbers
            estimate = estimate_objective(beta, self.training, self.pipeline, self.n_mc, self.seed)
        except SromError as e:
            logger.error(f"Objective evaluation failed at beta={beta}: {e}")
            estimate = None
            self.trace.append(TraceEntry(beta, float("nan"), float("nan"), self.n_mc,
                                         time.time() - start_time, stage, failed=True))
        else:
            self.trace.append(TraceEntry(beta, estimate.mean, estimate.std_error, self.n_mc,
                                         estimate.seconds, stage))
        self._cache[beta] = estimate
        return estimate

    def value(self, beta: int, stage: str) -> float:
        estimate = self.evaluate(beta, stage)
        return float("inf") if estimate is None else estimate.mean

    def improves(self, challenger: Optional[ObjectiveEstimate], incumbent: Optional[ObjectiveEstimate]) -> bool:
        """challenger beats incumbent by more than the combined standard error"""
        if challenger is None:
            return False
        if incumbent is None:
            return True
        combined = math.hypot(challenger.std_error, incumbent.std_error)
        return challenger.mean < incumbent.mean - self.min_improvement_se * combined

    def successful(self) -> List[ObjectiveEstimate]:
        return sorted((e for e in self._cache.values() if e is not None), key=lambda e: e.beta)


def _golden_section(search: BetaSearch, low: int, high: int) -> Tuple[int, int]:
    """Shrink [low, high] on integers assuming unimodality; ties move toward low"""
    while high - low > 3:
        width = high - low
        left = int(round(high - INV_PHI * width))
        right = int(round(low + INV_PHI * width))
        left = min(max(left, low + 1), high - 2)
        right = min(max(right, left + 1), high - 1)
        if search.value(left, "refine") <= search.value(right, "refine"):
            high = right
        else:
            low = left
    return low, high


def optimize_beta(training: TrainingSet,
                  pipeline: OutputSampler,
                  beta_max: Optional[int] = None,
                  n_mc: Optional[int] = None,
                  seed: int = 0,
                  beta_min: Optional[int] = None,
                  min_improvement_se: Optional[float] = None) -> TrainingResult:
    """Minimize the Monte-Carlo objective over integer β in [beta_min, beta_max]"""
    training_config = config.get_training_config()
    beta_min = int(pipeline.subspace_dim if beta_min is None else beta_min)
    beta_max = int(training_config.get('beta_max', 200) if beta_max is None else beta_max)
    n_mc = int(training_config.get('n_mc_search', 200) if n_mc is None else n_mc)
    min_improvement_se = float(training_config.get('min_improvement_se', 1.0)
                               if min_improvement_se is None else min_improvement_se)
    if beta_min < pipeline.subspace_dim:
        raise InputValidationError(f"beta_min must be >= k={pipeline.subspace_dim}, got {beta_min}")

    start_time = time.time()
    search = BetaSearch(training, pipeline, n_mc, seed, min_improvement_se)
    grid = beta_grid(beta_min, beta_max)
    logger.info(f"Searching beta in [{beta_min}, {beta_max}] over grid {grid} with {n_mc} draws per point")

    incumbent_index = None
    for i, beta in enumerate(grid):
        estimate = search.evaluate(beta, "grid")
        incumbent = None if incumbent_index is None else search.evaluate(grid[incumbent_index], "grid")
        if search.improves(estimate, incumbent):
            incumbent_index = i
    if incumbent_index is None:
        raise TrainingError(f"all {len(grid)} grid evaluations of the objective failed")

    low = grid[max(incumbent_index - 1, 0)]
    high = grid[min(incumbent_index + 1, len(grid) - 1)]
    low, high = _golden_section(search, low, high)
    for beta in range(low, high + 1):
        search.evaluate(beta, "refine")

    evaluated = search.successful()
    best = min(evaluated, key=lambda e: (e.mean, e.beta))
    # smallest beta indistinguishable from the best within the noise tolerance
    beta_star = next(e.beta for e in evaluated if e is best or not search.improves(best, e))

    result = TrainingResult(beta_star=beta_star, trace=search.trace, seconds=time.time() - start_time)
    logger.info(
        f"Selected beta*={beta_star} after {len(search.trace)} evaluations in {result.seconds:.2f}s"
    )
    return result

