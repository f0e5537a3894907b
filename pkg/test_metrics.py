#!/usr/bin/env python3
"""
Tests for prediction bands, coverage and width metrics
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.metrics.bands import (
    PredictionBand,
    average_width,
    band_frame,
    band_summary,
    coverage,
    empirical_band,
    ensemble_mean,
    ensemble_std,
    minimum_draws,
    ratio_of_average_widths,
    width_ratio,
)
from src.utils.errors import DimensionMismatchError, InputValidationError, TooFewDrawsError


def _band(lower, upper, level=0.95, n_draws=100):
    return PredictionBand(np.asarray(lower, dtype=float), np.asarray(upper, dtype=float), level, n_draws)


class TestEmpiricalBand:
    def test_matches_linear_quantiles(self, rng):
        draws = rng.standard_normal((200, 30))
        band = empirical_band(draws, 0.9)
        assert_allclose(band.lower, np.quantile(draws, 0.05, axis=0, method="linear"))
        assert_allclose(band.upper, np.quantile(draws, 0.95, axis=0, method="linear"))
        assert band.n_draws == 200 and len(band) == 30

    def test_minimum_draws(self):
        assert minimum_draws(0.95) == 20
        assert minimum_draws(0.9) == 10
        assert minimum_draws(0.99) == 100

    def test_too_few_draws(self, rng):
        with pytest.raises(TooFewDrawsError):
            empirical_band(rng.standard_normal((19, 4)), 0.95)
        assert len(empirical_band(rng.standard_normal((20, 4)), 0.95)) == 4

    def test_identical_draws_give_zero_width(self):
        band = empirical_band(np.tile([1.0, -2.0, 0.3], (25, 1)), 0.95)
        assert_allclose(band.width, 0.0)
        assert coverage(band, [1.0, -2.0, 0.3]) == 1.0

    def test_multidimensional_draws_are_flattened(self, rng):
        band = empirical_band(rng.standard_normal((40, 3, 5)), 0.9)
        assert len(band) == 15

    def test_wider_level_contains_narrower(self, rng):
        draws = rng.standard_normal((400, 25))
        narrow, wide = empirical_band(draws, 0.95), empirical_band(draws, 0.99)
        assert np.all(wide.lower <= narrow.lower)
        assert np.all(narrow.upper <= wide.upper)

    def test_subset(self):
        band = _band([0.0, 1.0, 2.0], [1.0, 3.0, 2.5], level=0.9, n_draws=50)
        inner = band.subset(np.array([1, 2]))
        assert_allclose(inner.lower, [1.0, 2.0])
        assert_allclose(inner.upper, [3.0, 2.5])
        assert (inner.level, inner.n_draws) == (0.9, 50)
        assert len(band.subset(np.array([True, False, True]))) == 2

    @pytest.mark.parametrize("level", [0.0, 1.0, 1.5])
    def test_invalid_level(self, rng, level):
        with pytest.raises(InputValidationError):
            empirical_band(rng.standard_normal((50, 2)), level)

    def test_non_finite_draws(self):
        draws = np.ones((30, 2))
        draws[3, 1] = np.inf
        with pytest.raises(InputValidationError):
            empirical_band(draws, 0.9)


class TestCoverage:
    def test_boundaries_are_inclusive(self):
        band = _band([0.0, 0.0, 0.0], [1.0, 1.0, 1.0])
        assert coverage(band, [0.0, 1.0, 1.0 + 1e-12]) == pytest.approx(2 / 3)

    def test_calibrated_band(self, rng):
        draws = rng.standard_normal((4000, 400))
        truth = rng.standard_normal(400)
        assert abs(coverage(empirical_band(draws, 0.95), truth) - 0.95) < 0.04

    def test_invariant_under_common_rescaling(self, rng):
        draws = rng.standard_normal((200, 50))
        truth = 1.5 * rng.standard_normal(50)
        base = coverage(empirical_band(draws, 0.95), truth)
        assert coverage(empirical_band(4.0 * draws, 0.95), 4.0 * truth) == base

    def test_truth_length_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            coverage(_band([0.0], [1.0]), [0.5, 0.5])

    def test_lower_above_upper_rejected(self):
        with pytest.raises(InputValidationError):
            _band([1.0], [0.0])


class TestWidths:
    def test_average_width(self):
        assert average_width(_band([0.0, 1.0], [2.0, 2.0])) == 1.5

    def test_pointwise_ratio_skips_degenerate_points(self):
        wide = _band([0.0, 0.0, 0.0], [2.0, 6.0, 0.0])
        narrow = _band([0.0, 0.0, 0.0], [1.0, 2.0, 0.0])
        assert width_ratio(wide, narrow) == pytest.approx(2.5)
        assert ratio_of_average_widths(wide, narrow) == pytest.approx(8.0 / 3.0)

    def test_zero_denominator_gives_inf(self):
        a = _band([0.0, 0.0], [1.0, 1.0])
        b = _band([0.0, 0.0], [1.0, 0.0])
        assert width_ratio(a, b) == np.inf

    def test_all_degenerate(self):
        flat = _band([1.0, 2.0], [1.0, 2.0])
        with pytest.raises(InputValidationError):
            width_ratio(flat, flat)
        with pytest.raises(InputValidationError):
            ratio_of_average_widths(_band([0.0, 0.0], [1.0, 1.0]), flat)

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            width_ratio(_band([0.0], [1.0]), _band([0.0, 0.0], [1.0, 1.0]))


class TestSummaries:
    def test_mean_and_std(self):
        draws = np.array([[1.0, 2.0], [3.0, 6.0]])
        assert_allclose(ensemble_mean(draws), [2.0, 4.0])
        assert_allclose(ensemble_std(draws), [np.sqrt(2.0), np.sqrt(8.0)])
        assert_allclose(ensemble_std(draws[:1]), [0.0, 0.0])

    def test_band_summary(self):
        summary = band_summary(_band([0.0, 0.0], [1.0, 3.0], level=0.9, n_draws=50), [0.5, 4.0])
        assert summary == {"level": 0.9, "n_draws": 50, "points": 2, "average_width": 2.0, "coverage": 0.5}

    def test_band_frame_columns(self):
        band = _band([0.0, 1.0], [1.0, 2.0])
        frame = band_frame(band, [0.5, 1.5], grid=[0.1, 0.2], rom=[0.4, 1.4])
        assert list(frame.columns) == ["point", "lower", "upper", "width", "truth", "rom"]
        assert_allclose(frame["width"], [1.0, 1.0])
        with pytest.raises(DimensionMismatchError):
            band_frame(band, rom=[1.0, 2.0, 3.0])
