#!/usr/bin/env python3
"""
Tests for the Monte-Carlo objective and the β search
"""

from typing import Callable, List

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.benchmarks.static_problem import static_pipeline, train_static
from src.subspace.model import SubspaceKind
from src.training.objective import (
    OutputSampler,
    TrainingSet,
    distance_to_reference,
    estimate_objective,
    objective_samples,
)
from src.training.search import TRACE_HEADER, beta_grid, optimize_beta
from src.utils.errors import DimensionMismatchError, InputValidationError, SromError, TrainingError
from src.utils.records import read_frame

ZERO_CASE = TrainingSet.from_arrays(np.zeros((1, 1)), np.zeros((1, 1)))

# per-draw deviations with zero mean
NOISE = np.array([1.0, -1.0, 1.0, -1.0])


class ScriptedSampler(OutputSampler):
    """Outputs whose per-draw objective equals objective(β) + spread·NOISE"""

    def __init__(self, objective: Callable[[int], float], k: int = 1, spread: float = 0.0):
        self.objective = objective
        self.k = k
        self.spread = spread
        self.calls: List[tuple] = []

    @property
    def subspace_dim(self) -> int:
        return self.k

    def sample(self, beta, n_draws, seed):
        self.calls.append((beta, n_draws, seed))
        values = self.objective(beta) + self.spread * np.resize(NOISE, n_draws)
        return np.sqrt(values).reshape(n_draws, 1, 1)


class FailingSampler(ScriptedSampler):
    def sample(self, beta, n_draws, seed):
        raise SromError("solver blew up")


class TestObjective:
    def test_distance_uses_time_step(self):
        assert_allclose(distance_to_reference([3.0, 4.0], [0.0, 0.0], dt=0.25), 2.5)

    def test_per_draw_values(self):
        training = TrainingSet.from_arrays(np.array([[1.0, 1.0]]), np.zeros((1, 2)))
        samples = np.array([[[2.0, 2.0]], [[1.0, 1.0]]])
        # d_E = √2, d_L = 2√2 and √2
        assert_allclose(objective_samples(training, samples), [2.0, 0.0])

    def test_cases_are_averaged_by_the_mean(self):
        training = TrainingSet.from_arrays(np.zeros((2, 1)), np.zeros((2, 1)))
        samples = np.array([[[1.0], [3.0]]])
        assert_allclose(objective_samples(training, samples), [5.0])

    def test_estimate_mean_and_standard_error(self):
        sampler = ScriptedSampler(lambda beta: 10.0, spread=3.0)
        estimate = estimate_objective(4, ZERO_CASE, sampler, n_mc=4, seed=0)
        assert_allclose(estimate.mean, 10.0)
        assert_allclose(estimate.std_error, np.std(3.0 * NOISE, ddof=1) / 2.0)

    def test_case_order_does_not_matter(self, small_static_data):
        data = small_static_data
        order = np.random.default_rng(0).permutation(data.states.shape[1])
        pipeline = static_pipeline(data, SubspaceKind.BOOTSTRAP)
        shuffled = static_pipeline(data, SubspaceKind.BOOTSTRAP, loads=data.loads[:, order])
        training = TrainingSet.from_arrays(data.states.T, pipeline.reference_cases())
        shuffled_training = TrainingSet.from_arrays(data.states.T[order], shuffled.reference_cases())
        a = estimate_objective(4, training, pipeline, n_mc=20, seed=5)
        b = estimate_objective(4, shuffled_training, shuffled, n_mc=20, seed=5)
        assert_allclose(b.mean, a.mean, rtol=1e-10)
        assert_allclose(b.std_error, a.std_error, rtol=1e-8)

    def test_independent_seeds_agree_within_noise(self, small_static_data):
        pipeline = static_pipeline(small_static_data, SubspaceKind.PPCA)
        training = TrainingSet.from_arrays(small_static_data.states.T, pipeline.reference_cases())
        a = estimate_objective(4, training, pipeline, n_mc=40, seed=1)
        b = estimate_objective(4, training, pipeline, n_mc=40, seed=2)
        assert abs(a.mean - b.mean) <= 4.0 * np.hypot(a.std_error, b.std_error)

    def test_beta_below_k(self):
        with pytest.raises(InputValidationError):
            estimate_objective(1, ZERO_CASE, ScriptedSampler(lambda b: 1.0, k=2), n_mc=4, seed=0)

    def test_too_few_draws(self):
        with pytest.raises(InputValidationError):
            estimate_objective(2, ZERO_CASE, ScriptedSampler(lambda b: 1.0), n_mc=1, seed=0)

    def test_sample_shape_mismatch(self):
        training = TrainingSet.from_arrays(np.zeros((2, 3)), np.zeros((2, 3)))
        with pytest.raises(DimensionMismatchError):
            objective_samples(training, np.zeros((4, 3, 3)))

    def test_training_set_lengths_must_match(self):
        with pytest.raises(DimensionMismatchError):
            TrainingSet([np.zeros(3)], [np.zeros(2)])


class TestBetaGrid:
    def test_starts_at_k(self):
        assert beta_grid(1, 64) == [1, 2, 4, 8, 16, 32, 64]

    def test_includes_one_and_a_half_k(self):
        assert beta_grid(10, 200) == [10, 15, 20, 40, 80, 160, 200]

    def test_single_point(self):
        assert beta_grid(5, 5) == [5]

    def test_invalid_range(self):
        with pytest.raises(InputValidationError):
            beta_grid(8, 4)


class TestOptimizeBeta:
    def test_finds_minimum_of_noise_free_parabola(self):
        result = optimize_beta(ZERO_CASE, ScriptedSampler(lambda beta: (beta - 12.0) ** 2),
                               beta_max=64, n_mc=4)
        assert result.beta_star == 12
        assert result.best.mean == 0.0
        assert {e.stage for e in result.trace} == {"grid", "refine"}

    def test_flat_objective_returns_smallest_beta(self):
        result = optimize_beta(ZERO_CASE, ScriptedSampler(lambda beta: 5.0, k=3), beta_max=96, n_mc=4)
        assert result.beta_star == 3

    def test_improvement_within_noise_is_ignored(self):
        step = ScriptedSampler(lambda beta: 10.0 if beta < 8 else 9.0, spread=3.0)
        assert optimize_beta(ZERO_CASE, step, beta_max=64, n_mc=4).beta_star == 1

    def test_improvement_beyond_noise_is_taken(self):
        step = ScriptedSampler(lambda beta: 10.0 if beta < 8 else 9.0)
        assert optimize_beta(ZERO_CASE, step, beta_max=64, n_mc=4).beta_star == 8

    def test_common_random_numbers(self):
        sampler = ScriptedSampler(lambda beta: (beta - 5.0) ** 2)
        optimize_beta(ZERO_CASE, sampler, beta_max=32, n_mc=4, seed=77)
        assert {seed for _, _, seed in sampler.calls} == {77}

    def test_each_beta_evaluated_once(self):
        sampler = ScriptedSampler(lambda beta: abs(beta - 20.0))
        result = optimize_beta(ZERO_CASE, sampler, beta_max=128, n_mc=4)
        betas = [beta for beta, _, _ in sampler.calls]
        assert len(betas) == len(set(betas)) == len(result.trace)

    def test_all_failures_raise(self):
        with pytest.raises(TrainingError):
            optimize_beta(ZERO_CASE, FailingSampler(lambda beta: 0.0), beta_max=8, n_mc=4)

    def test_beta_min_below_k(self):
        with pytest.raises(InputValidationError):
            optimize_beta(ZERO_CASE, ScriptedSampler(lambda beta: 0.0, k=4), beta_max=8, n_mc=4, beta_min=2)

    def test_trace_file(self, tmp_path):
        result = optimize_beta(ZERO_CASE, ScriptedSampler(lambda beta: (beta - 3.0) ** 2), beta_max=16, n_mc=4)
        path = result.save_trace(tmp_path / "trace.csv")
        first = path.read_text(encoding="utf-8").splitlines()[0]
        assert first == f"# {TRACE_HEADER}"
        frame = read_frame(path)
        assert list(frame.columns) == ["beta", "mean", "std_error", "n_mc", "seconds", "stage", "failed"]
        assert int(frame.loc[frame["mean"].idxmin(), "beta"]) == result.beta_star == 3


class TestStaticTraining:
    @pytest.mark.parametrize("kind", list(SubspaceKind))
    def test_small_benchmark_training(self, small_static_data, kind):
        result = train_static(small_static_data, kind)
        spec = small_static_data.problem.spec
        assert spec.k <= result.beta_star <= spec.beta_max
        assert all(np.isfinite(e.mean) for e in result.trace if not e.failed)
