"""
Empirical prediction bands from ensemble draws, and their coverage and width
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np
import pandas as pd

from ..utils.config_manager import config
from ..utils.errors import DimensionMismatchError, InputValidationError, TooFewDrawsError

# linear interpolation between order statistics
QUANTILE_METHOD = "linear"
DEGENERATE_WIDTH = 1e-14


def default_level() -> float:
    return float(config.get('metrics.level', 0.95))


def minimum_draws(level: float) -> int:
    """Draws needed so each tail holds at least half a sample: ⌈1/(1−level)⌉"""
    return int(math.ceil(1.0 / (1.0 - level) - 1e-9))


def _vector(values, name: str) -> np.ndarray:
    out = np.array(values, dtype=float, copy=True).ravel()
    if not np.all(np.isfinite(out)):
        raise InputValidationError(f"{name} contains non-finite values")
    return out


@dataclass(frozen=True, eq=False)
class PredictionBand:
    lower: np.ndarray
    upper: np.ndarray
    level: float
    n_draws: int

    def __post_init__(self):
        lower, upper = _vector(self.lower, "lower bound"), _vector(self.upper, "upper bound")
        if lower.shape != upper.shape:
            raise DimensionMismatchError(f"band bounds differ in length: {lower.size} vs {upper.size}")
        if not 0.0 < self.level < 1.0:
            raise InputValidationError(f"level must lie in (0, 1), got {self.level}")
        if np.any(lower > upper):
            raise InputValidationError("band lower bound exceeds upper bound")
        lower.setflags(write=False)
        upper.setflags(write=False)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    def __len__(self) -> int:
        return int(self.lower.size)

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    @property
    def midpoint(self) -> np.ndarray:
        return 0.5 * (self.lower + self.upper)

    def subset(self, points) -> "PredictionBand":
        """Band restricted to the given point indices or boolean mask"""
        return PredictionBand(lower=self.lower[points], upper=self.upper[points],
                              level=self.level, n_draws=self.n_draws)


def _draw_matrix(draws) -> np.ndarray:
    draws = np.asarray(draws, dtype=float)
    if draws.ndim == 1:
        draws = draws[:, None]
    if draws.ndim != 2:
        draws = draws.reshape(draws.shape[0], -1)
    if not np.all(np.isfinite(draws)):
        raise InputValidationError("ensemble draws contain non-finite values")
    return draws


def empirical_band(draws: np.ndarray, level: Optional[float] = None) -> PredictionBand:
    """Pointwise quantiles at (1−level)/2 and (1+level)/2 of an (n_draws, T) matrix"""
    level = default_level() if level is None else float(level)
    if not 0.0 < level < 1.0:
        raise InputValidationError(f"level must lie in (0, 1), got {level}")
    draws = _draw_matrix(draws)
    needed = minimum_draws(level)
    if draws.shape[0] < needed:
        raise TooFewDrawsError(f"level {level} needs at least {needed} draws, got {draws.shape[0]}")

    tail = 0.5 * (1.0 - level)
    lower, upper = np.quantile(draws, [tail, 1.0 - tail], axis=0, method=QUANTILE_METHOD)
    # quantiles of equal samples can round apart by one ulp
    upper = np.maximum(upper, lower)
    return PredictionBand(lower=lower, upper=upper, level=level, n_draws=draws.shape[0])


def _truth(band: PredictionBand, truth) -> np.ndarray:
    truth = _vector(truth, "truth")
    if truth.size != len(band):
        raise DimensionMismatchError(f"truth has {truth.size} points, band has {len(band)}")
    return truth


def coverage(band: PredictionBand, truth: np.ndarray) -> float:
    """Fraction of points with lower <= truth <= upper"""
    truth = _truth(band, truth)
    return float(np.mean((band.lower <= truth) & (truth <= band.upper)))


def average_width(band: PredictionBand) -> float:
    return float(np.mean(band.width))


def width_ratio(band_a: PredictionBand, band_b: PredictionBand) -> float:
    """Mean of pointwise width ratios a/b, skipping points where both widths vanish"""
    if len(band_a) != len(band_b):
        raise DimensionMismatchError(f"bands differ in length: {len(band_a)} vs {len(band_b)}")
    wa, wb = band_a.width, band_b.width
    keep = ~((wa < DEGENERATE_WIDTH) & (wb < DEGENERATE_WIDTH))
    if not np.any(keep):
        raise InputValidationError("every point has a degenerate width in both bands")
    with np.errstate(divide='ignore'):
        ratios = wa[keep] / wb[keep]
    return float(np.mean(ratios))


def ratio_of_average_widths(band_a: PredictionBand, band_b: PredictionBand) -> float:
    if len(band_a) != len(band_b):
        raise DimensionMismatchError(f"bands differ in length: {len(band_a)} vs {len(band_b)}")
    denominator = average_width(band_b)
    if denominator < DEGENERATE_WIDTH:
        raise InputValidationError("reference band has zero average width")
    return average_width(band_a) / denominator


def ensemble_mean(draws: np.ndarray) -> np.ndarray:
    return _draw_matrix(draws).mean(axis=0)


def ensemble_std(draws: np.ndarray) -> np.ndarray:
    draws = _draw_matrix(draws)
    return draws.std(axis=0, ddof=1) if draws.shape[0] > 1 else np.zeros(draws.shape[1])


def band_summary(band: PredictionBand, truth: Optional[np.ndarray] = None) -> Dict[str, Any]:
    summary = {
        "level": band.level,
        "n_draws": band.n_draws,
        "points": len(band),
        "average_width": average_width(band),
    }
    if truth is not None:
        summary["coverage"] = coverage(band, truth)
    return summary


def band_frame(band: PredictionBand, truth: Optional[np.ndarray] = None,
               grid: Optional[np.ndarray] = None, **extra: np.ndarray) -> pd.DataFrame:
    """Tidy table: grid, lower, upper, width and any extra series (truth, mean, ...)"""
    columns: Dict[str, np.ndarray] = {
        "point": np.arange(len(band)) if grid is None else np.asarray(grid, dtype=float),
        "lower": band.lower,
        "upper": band.upper,
        "width": band.width,
    }
    if truth is not None:
        columns["truth"] = _truth(band, truth)
    for name, values in extra.items():
        values = np.asarray(values, dtype=float).ravel()
        if values.size != len(band):
            raise DimensionMismatchError(f"column '{name}' has {values.size} points, band has {len(band)}")
        columns[name] = values
    return pd.DataFrame(columns)
