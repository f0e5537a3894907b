"""
Monte-Carlo estimate of the consistency objective

    f(β) = E[ |d_o(u_L) − d_o(u_E)|² | β ],   d_o(u) = ‖u − u_L^o‖_L²

averaged over SROM draws and, by the mean, over training cases.
"""

import time
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import List, Sequence, Union

import numpy as np

from ..utils.errors import DimensionMismatchError, InputValidationError
from ..utils.logger import get_logger

logger = get_logger('training')

SampledOutputs = Union[np.ndarray, Sequence[np.ndarray]]


def _series(value, name: str) -> np.ndarray:
    out = np.array(value, dtype=float, copy=True).ravel()
    if out.size == 0:
        raise InputValidationError(f"{name} is empty")
    if not np.all(np.isfinite(out)):
        raise InputValidationError(f"{name} contains non-finite values")
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class TrainingSet:
    """Truth outputs u_E and reference-ROM outputs u_L^o, one pair per training case"""
    truth_outputs: Sequence[np.ndarray]
    reference_outputs: Sequence[np.ndarray]
    dt: float = 1.0

    def __post_init__(self):
        if len(self.truth_outputs) != len(self.reference_outputs):
            raise DimensionMismatchError(
                f"{len(self.truth_outputs)} truth series but {len(self.reference_outputs)} reference series"
            )
        if not self.truth_outputs:
            raise InputValidationError("training set needs at least one case")
        if not self.dt > 0:
            raise InputValidationError(f"dt must be positive, got {self.dt}")
        truth = tuple(_series(u, f"truth output {i}") for i, u in enumerate(self.truth_outputs))
        reference = tuple(_series(u, f"reference output {i}") for i, u in enumerate(self.reference_outputs))
        for i, (u, u_ref) in enumerate(zip(truth, reference)):
            if u.size != u_ref.size:
                raise DimensionMismatchError(f"case {i}: truth has {u.size} points, reference {u_ref.size}")
        object.__setattr__(self, "truth_outputs", truth)
        object.__setattr__(self, "reference_outputs", reference)

    @classmethod
    def from_arrays(cls, truth: np.ndarray, reference: np.ndarray, dt: float = 1.0) -> "TrainingSet":
        """Cases along the first axis of two (n_cases, T) arrays"""
        truth, reference = np.atleast_2d(truth), np.atleast_2d(reference)
        return cls(list(truth), list(reference), dt)

    @property
    def n_cases(self) -> int:
        return len(self.truth_outputs)

    def truth_distances(self) -> np.ndarray:
        """d_o(u_E) for every case"""
        return np.array([distance_to_reference(u, u_ref, self.dt)
                         for u, u_ref in zip(self.truth_outputs, self.reference_outputs)])


@dataclass(frozen=True)
class ObjectiveEstimate:
    beta: int
    mean: float
    std_error: float
    n_samples: int
    seconds: float = 0.0

    def __post_init__(self):
        if self.mean < 0 or self.std_error < 0:
            raise InputValidationError(f"objective estimate must be non-negative, got {self.mean}, {self.std_error}")


class OutputSampler(ABC):
    """Anything that draws SROM outputs for a concentration β"""

    @property
    @abstractmethod
    def subspace_dim(self) -> int:
        """k; the smallest admissible β"""

    @abstractmethod
    def sample(self, beta: int, n_draws: int, seed: int) -> SampledOutputs:
        """(n_draws, n_cases, T) array, or one (n_draws, T_c) array per case"""


def distance_to_reference(u: np.ndarray, u_ref: np.ndarray, dt: float = 1.0) -> float:
    """Discrete L² distance sqrt(Σ_t (u_t − u_ref,t)² Δt)"""
    u = np.asarray(u, dtype=float).ravel()
    u_ref = np.asarray(u_ref, dtype=float).ravel()
    if u.size != u_ref.size:
        raise DimensionMismatchError(f"series lengths differ: {u.size} vs {u_ref.size}")
    return float(np.sqrt(np.sum((u - u_ref) ** 2) * dt))


def _per_case(samples: SampledOutputs, n_cases: int, n_draws: int) -> List[np.ndarray]:
    if isinstance(samples, np.ndarray):
        if samples.ndim == 2:
            samples = samples[:, None, :]
        if samples.ndim != 3 or samples.shape[1] != n_cases:
            raise DimensionMismatchError(
                f"sampled outputs have shape {samples.shape}, expected (n_draws, {n_cases}, T)"
            )
        cases = [samples[:, c, :] for c in range(n_cases)]
    else:
        cases = [np.asarray(s, dtype=float) for s in samples]
    if len(cases) != n_cases:
        raise DimensionMismatchError(f"sampler returned {len(cases)} cases, training set has {n_cases}")
    if any(c.shape[0] != n_draws for c in cases):
        raise DimensionMismatchError(f"sampler returned a draw count other than {n_draws}")
    return cases


def objective_samples(training: TrainingSet, samples: SampledOutputs) -> np.ndarray:
    """Per-draw value mean_c (d_o(u_L) − d_o(u_E))²"""
    n_draws = samples.shape[0] if isinstance(samples, np.ndarray) else len(samples[0])
    cases = _per_case(samples, training.n_cases, n_draws)
    truth_distance = training.truth_distances()
    squared = np.empty((n_draws, training.n_cases))
    for c, (draws, u_ref) in enumerate(zip(cases, training.reference_outputs)):
        draws = draws.reshape(n_draws, -1)
        if draws.shape[1] != u_ref.size:
            raise DimensionMismatchError(f"case {c}: sampled series have {draws.shape[1]} points, expected {u_ref.size}")
        distance = np.sqrt(np.sum((draws - u_ref) ** 2, axis=1) * training.dt)
        squared[:, c] = (distance - truth_distance[c]) ** 2
    return squared.mean(axis=1)


def estimate_objective(beta: int,
                       training: TrainingSet,
                       pipeline: OutputSampler,
                       n_mc: int,
                       seed: int) -> ObjectiveEstimate:
    """Monte-Carlo mean and standard error of f(β) from n_mc SROM draws"""
    beta, n_mc = int(beta), int(n_mc)
    if beta < pipeline.subspace_dim:
        raise InputValidationError(f"beta must be >= k={pipeline.subspace_dim}, got {beta}")
    if n_mc < 2:
        raise InputValidationError(f"n_mc must be >= 2, got {n_mc}")

    start_time = time.time()
    values = objective_samples(training, pipeline.sample(beta, n_mc, seed))
    estimate = ObjectiveEstimate(beta=beta,
                                 mean=float(values.mean()),
                                 std_error=float(values.std(ddof=1) / np.sqrt(n_mc)),
                                 n_samples=n_mc,
                                 seconds=time.time() - start_time)
    logger.info(
        f"f({beta}) = {estimate.mean:.6e} ± {estimate.std_error:.2e} "
        f"({n_mc} draws, {estimate.seconds:.2f}s)"
    )
    return estimate
