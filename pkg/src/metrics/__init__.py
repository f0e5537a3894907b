"""
Prediction-band consistency and sharpness metrics
"""

from .bands import (
    PredictionBand,
    minimum_draws,
    empirical_band,
    coverage,
    average_width,
    width_ratio,
    ratio_of_average_widths,
    ensemble_mean,
    ensemble_std,
    band_summary,
    band_frame,
)

__all__ = [
    'PredictionBand',
    'minimum_draws',
    'empirical_band',
    'coverage',
    'average_width',
    'width_ratio',
    'ratio_of_average_widths',
    'ensemble_mean',
    'ensemble_std',
    'band_summary',
    'band_frame',
]
