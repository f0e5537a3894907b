"""
Benchmark outputs: band tables, SVG plots and the JSON report
"""

from pathlib import Path
from typing import Any, Dict, Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from ..metrics.bands import (  # noqa: E402
    PredictionBand,
    band_frame,
    ensemble_mean,
    ensemble_std,
    ratio_of_average_widths,
    width_ratio,
)
from ..training.search import TrainingResult  # noqa: E402
from ..utils.errors import InputValidationError  # noqa: E402
from ..utils.logger import get_logger  # noqa: E402
from ..utils.records import write_frame, write_json  # noqa: E402

logger = get_logger('benchmarks')

SYNTHETIC_LABEL = "synthetic analogue"


def plot_band(path: Path, grid: np.ndarray, band: PredictionBand, truth: np.ndarray,
              rom: Optional[np.ndarray] = None, mean: Optional[np.ndarray] = None,
              title: str = "", xlabel: str = "", ylabel: str = "") -> Path:
    """Truth, ROM and SROM mean over the shaded prediction band"""
    fig, ax = plt.subplots(figsize=(8, 4.5))
    try:
        ax.fill_between(grid, band.lower, band.upper, color="tab:blue", alpha=0.25,
                        label=f"{band.level:.0%} PI")
        ax.plot(grid, truth, color="black", linewidth=1.2, label="HDM")
        if rom is not None:
            ax.plot(grid, rom, color="tab:red", linestyle="--", linewidth=1.0, label="ROM")
        if mean is not None:
            ax.plot(grid, mean, color="tab:blue", linewidth=1.0, label="SROM mean")
        ax.set_title(title)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        ax.grid(True, alpha=0.3)
        ax.legend(loc="best")
        path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(path, format="svg", bbox_inches="tight")
    finally:
        plt.close(fig)
    return path


def plot_trace(path: Path, result: TrainingResult, title: str = "") -> Path:
    """Objective estimates with ±1 standard error against β"""
    frame = result.to_frame()
    frame = frame[~frame["failed"]].sort_values("beta")
    fig, ax = plt.subplots(figsize=(6, 4))
    try:
        ax.errorbar(frame["beta"], frame["mean"], yerr=frame["std_error"], fmt="o-", markersize=3)
        ax.axvline(result.beta_star, color="tab:red", linestyle="--", label=f"beta* = {result.beta_star}")
        ax.set_xscale("log")
        ax.set_xlabel("beta")
        ax.set_ylabel("f(beta)")
        ax.set_title(title)
        ax.legend(loc="best")
        path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(path, format="svg", bbox_inches="tight")
    finally:
        plt.close(fig)
    return path


def write_band_outputs(out_dir: Path, stem: str, grid: np.ndarray, band: PredictionBand,
                       truth: np.ndarray, rom: np.ndarray, draws: np.ndarray,
                       title: str, xlabel: str, ylabel: str) -> Dict[str, Path]:
    """Plot-ready CSV and SVG for one QoI and one method"""
    mean = ensemble_mean(draws)
    frame = band_frame(band, truth, grid=grid, rom=rom, srom_mean=mean, srom_std=ensemble_std(draws))
    return {
        "csv": write_frame(out_dir / f"{stem}.csv", frame),
        "svg": plot_band(out_dir / f"{stem}.svg", grid, band, truth, rom, mean, title, xlabel, ylabel),
    }


def write_report(out_dir: Path, name: str, report: Dict[str, Any]) -> Path:
    path = write_json(out_dir / f"{name}.json", report)
    logger.info(f"Report written to {path}")
    return path


def compare_widths(band_a: PredictionBand, band_b: PredictionBand) -> Dict[str, Optional[float]]:
    """Both width ratios a/b; None when band b collapses to zero width"""
    try:
        pointwise = width_ratio(band_a, band_b)
        averaged = ratio_of_average_widths(band_a, band_b)
    except InputValidationError as e:
        logger.warning(f"Width ratio undefined: {e}")
        return {"width_ratio": None, "ratio_of_average_widths": None}
    return {"width_ratio": pointwise, "ratio_of_average_widths": averaged}
