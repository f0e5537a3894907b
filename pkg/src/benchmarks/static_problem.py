"""
Parametric linear static benchmark.

K = Φ Λ Φᵀ with Λ = diag(4π² j²) and Φ = [0 S 0]ᵀ, S the orthogonal DST-I
matrix of order n−2, so x₁ = x_n = 0. The load is
f(μ) = g(μ)/‖g(μ)‖_∞ with g(μ) = μ₁(φ₂ + φ₃) + μ₂(φ₄ + φ₅).
"""

import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np
from cachetools import LRUCache, cached
from scipy import stats

from .reporting import compare_widths, plot_trace, write_band_outputs, write_report
from .specs import StaticBenchmarkSpec
from ..linalg.decomposition import center, compact_svd
from ..linalg.types import CompactSvd, SnapshotMatrix
from ..metrics.bands import PredictionBand, average_width, coverage, empirical_band
from ..rom.ensemble import StaticReducedSolver
from ..rom.pipeline import SromPipeline
from ..rom.systems import LinearSecondOrderSystem, OutputSelector
from ..solvers.static import solve_static
from ..subspace.model import SubspaceKind
from ..subspace.sampling import derive_seed
from ..training.objective import TrainingSet
from ..training.search import TrainingResult, optimize_beta
from ..utils.logger import get_logger

logger = get_logger('benchmarks')

PARAMETER_STREAM = 0
TRAINING_STREAM = 1
ENSEMBLE_STREAM = 2

DISPLACEMENT = OutputSelector("displacement")


@cached(LRUCache(maxsize=4))
def dst1_matrix(order: int) -> np.ndarray:
    """Orthogonal type-I DST matrix √(2/(order+1)) [sin(jkπ/(order+1))]"""
    j = np.arange(1, order + 1)
    s = np.sqrt(2.0 / (order + 1)) * np.sin(np.outer(j, j) * np.pi / (order + 1))
    s.setflags(write=False)
    return s


@dataclass(frozen=True, eq=False)
class StaticProblem:
    spec: StaticBenchmarkSpec
    system: LinearSecondOrderSystem
    modes: np.ndarray
    eigenvalues: np.ndarray

    @property
    def size(self) -> int:
        return self.system.size

    @property
    def free_dofs(self) -> np.ndarray:
        """Indices of the DOFs no boundary condition pins"""
        pinned = np.any(self.system.constraints != 0.0, axis=1)
        return np.flatnonzero(~pinned)

    def mode(self, j: int) -> np.ndarray:
        """φ_j, one-based as in the eigenpair numbering"""
        return self.modes[:, j - 1]


def build_static_system(spec: StaticBenchmarkSpec) -> StaticProblem:
    n = spec.n
    modes = np.zeros((n, n - 2))
    modes[1:-1] = dst1_matrix(n - 2)
    eigenvalues = 4.0 * np.pi ** 2 * np.arange(1, n - 1) ** 2
    stiffness = (modes * eigenvalues) @ modes.T
    stiffness = 0.5 * (stiffness + stiffness.T)
    boundary = np.zeros((n, 2))
    boundary[0, 0] = boundary[-1, 1] = 1.0
    modes.setflags(write=False)
    eigenvalues.setflags(write=False)
    system = LinearSecondOrderSystem(stiffness=stiffness, constraints=boundary)
    return StaticProblem(spec=spec, system=system, modes=modes, eigenvalues=eigenvalues)


def static_load(problem: StaticProblem, mu: Sequence[float]) -> np.ndarray:
    """f(μ), scaled to unit infinity norm; zero when g(μ) vanishes"""
    mu1, mu2 = float(mu[0]), float(mu[1])
    g = mu1 * (problem.mode(2) + problem.mode(3)) + mu2 * (problem.mode(4) + problem.mode(5))
    scale = float(np.max(np.abs(g)))
    if scale == 0.0:
        logger.warning(f"Load shape vanishes at mu=({mu1}, {mu2}); using a zero load")
        return np.zeros(problem.size)
    return g / scale


def static_loads(problem: StaticProblem, parameters: np.ndarray) -> np.ndarray:
    """n×m load matrix, one column per parameter point"""
    return np.column_stack([static_load(problem, mu) for mu in np.atleast_2d(parameters)])


def sample_parameters(spec: StaticBenchmarkSpec, rng: np.random.Generator) -> np.ndarray:
    """n_snapshots×2 parameter points by inverse-CDF transform of uniforms"""
    uniforms = rng.random((spec.n_snapshots, 2))
    if spec.parameter_distribution == "gaussian":
        mean, std = spec.gaussian_params
        # parameters live in [0, 1]²
        return np.clip(stats.norm.ppf(uniforms, loc=mean, scale=std), 0.0, 1.0)
    a, b = spec.beta_dist_params
    return stats.beta.ppf(uniforms, a, b)


@dataclass(frozen=True, eq=False)
class StaticData:
    """HDM training solves and their POD factors"""
    problem: StaticProblem
    parameters: np.ndarray
    loads: np.ndarray
    states: np.ndarray
    snapshots: SnapshotMatrix
    svd: CompactSvd
    seconds: float


def generate_static_data(spec: StaticBenchmarkSpec) -> StaticData:
    problem = build_static_system(spec)
    rng = np.random.default_rng(derive_seed(spec.parameter_seed, PARAMETER_STREAM))
    parameters = sample_parameters(spec, rng)
    loads = static_loads(problem, parameters)

    start_time = time.time()
    states = solve_static(problem.system.stiffness, loads, problem.system.constraints)
    seconds = time.time() - start_time

    if spec.center_snapshots:
        snapshots = center(states)
    else:
        # V = π_k(X) on the raw snapshots
        snapshots = SnapshotMatrix(states, np.zeros(spec.n), centered=False)
    svd = compact_svd(snapshots)
    logger.info(
        f"Static snapshots: n={spec.n}, m={spec.n_snapshots}, rank={svd.rank}, "
        f"centered={snapshots.centered}, "
        f"HDM solves {seconds:.3f}s"
    )
    return StaticData(problem, parameters, loads, states, snapshots, svd, seconds)


def static_pipeline(data: StaticData, kind: SubspaceKind, loads: Optional[np.ndarray] = None,
                    k: Optional[int] = None) -> SromPipeline:
    """SROM pipeline solving the static ROM for every load column"""
    loads = data.loads if loads is None else loads
    system = data.problem.system.with_force(loads)
    return SromPipeline(system, data.svd, data.snapshots.snapshot_count,
                        data.problem.spec.k if k is None else k,
                        StaticReducedSolver(), DISPLACEMENT, kind, cases_along="columns")


def train_static(data: StaticData, kind: SubspaceKind) -> TrainingResult:
    """β* from HDM training displacements against the deterministic ROM"""
    spec = data.problem.spec
    pipeline = static_pipeline(data, kind)
    training = TrainingSet.from_arrays(data.states.T, pipeline.reference_cases())
    return optimize_beta(training, pipeline,
                         beta_max=spec.beta_max,
                         n_mc=spec.n_mc_search,
                         seed=derive_seed(spec.seed, TRAINING_STREAM))


def run_static_training(spec: StaticBenchmarkSpec, out_dir: Path,
                        methods: Optional[Sequence[str]] = None) -> Dict[str, Any]:
    data = generate_static_data(spec)
    report: Dict[str, Any] = {"benchmark": "static", "spec": spec.model_dump(), "methods": {}}
    for method in methods or spec.methods:
        result = train_static(data, SubspaceKind(method))
        result.save_trace(out_dir / f"static_{method}_trace.csv")
        plot_trace(out_dir / f"static_{method}_trace.svg", result, f"Static training ({method})")
        report["methods"][method] = {"beta_star": result.beta_star, "training_seconds": result.seconds}
    write_report(out_dir, "static_training", report)
    return report


def _evaluate_method(data: StaticData, kind: SubspaceKind, beta: int, n_draws: int,
                     test_load: np.ndarray) -> Tuple[np.ndarray, Dict[str, Any]]:
    spec = data.problem.spec
    pipeline = static_pipeline(data, kind, loads=test_load[:, None])
    ensemble = pipeline.ensemble(beta, n_draws, derive_seed(spec.seed, ENSEMBLE_STREAM))
    draws = ensemble.qoi_series(DISPLACEMENT.name)
    return draws, {"beta": beta, "n_draws": n_draws, "redraws": ensemble.redraws,
                   "ensemble_seconds": ensemble.seconds}


def run_static_benchmark(spec: StaticBenchmarkSpec, out_dir: Path,
                         methods: Optional[Sequence[str]] = None,
                         n_draws: Optional[int] = None,
                         train: bool = True) -> Dict[str, Any]:
    """Snapshots, POD, training, test-parameter ensembles and band metrics"""
    out_dir = Path(out_dir)
    methods = list(methods or spec.methods)
    n_draws = int(n_draws or spec.n_draws)
    data = generate_static_data(spec)
    problem = data.problem

    test_load = static_load(problem, spec.test_param)
    truth = solve_static(problem.system.stiffness, test_load, problem.system.constraints)
    rom = static_pipeline(data, SubspaceKind.BOOTSTRAP, loads=test_load[:, None]).reference()
    rom_state = rom.qoi[DISPLACEMENT.name].ravel()
    rom_error = float(np.linalg.norm(rom_state - truth) / np.linalg.norm(truth))
    logger.info(f"Deterministic ROM relative error at mu_test={tuple(spec.test_param)}: {rom_error:.4e}")

    grid = np.arange(problem.size)
    free = problem.free_dofs
    report: Dict[str, Any] = {
        "benchmark": "static",
        "spec": spec.model_dump(),
        "rank": data.svd.rank,
        "singular_values": data.svd.singular_values,
        "hdm_seconds": data.seconds,
        "rom_relative_error": rom_error,
        "coverage_points": "free DOFs (pinned boundary rows excluded)",
        "methods": {},
    }
    bands: Dict[str, PredictionBand] = {}
    for method in methods:
        kind = SubspaceKind(method)
        entry: Dict[str, Any] = {}
        beta = spec.beta
        if beta is None and train:
            result = train_static(data, kind)
            result.save_trace(out_dir / f"static_{method}_trace.csv")
            plot_trace(out_dir / f"static_{method}_trace.svg", result, f"Static training ({method})")
            beta = result.beta_star
            entry.update(beta_star=result.beta_star, training_seconds=result.seconds)
        beta = spec.k if beta is None else beta

        draws, info = _evaluate_method(data, kind, beta, n_draws, test_load)
        band = empirical_band(draws, spec.level)
        bands[method] = band
        entry.update(info)
        entry.update(coverage=coverage(band.subset(free), truth[free]),
                     coverage_all_dofs=coverage(band, truth),
                     average_width=average_width(band.subset(free)))
        write_band_outputs(out_dir, f"static_{method}_displacement", grid, band, truth, rom_state, draws,
                           title=f"Static problem: prediction using {method}",
                           xlabel="DOF", ylabel="displacement")
        logger.info(
            f"[{method}] beta={beta} coverage={entry['coverage']:.4f} "
            f"average width={entry['average_width']:.4e}"
        )
        report["methods"][method] = entry

    if "bootstrap" in bands and "ppca" in bands:
        ratios = compare_widths(bands["ppca"].subset(free), bands["bootstrap"].subset(free))
        report["width_ratio_ppca_over_bootstrap"] = ratios["width_ratio"]
        report["ratio_of_average_widths_ppca_over_bootstrap"] = ratios["ratio_of_average_widths"]
        logger.info(f"PPCA/Bootstrap width ratio: {ratios['width_ratio']}")

    write_report(out_dir, "static_report", report)
    return report


def compare_distributions(spec: StaticBenchmarkSpec, out_dir: Path,
                          n_draws: Optional[int] = None) -> Dict[str, Any]:
    """Width ratios under Beta and Gaussian parameter sampling side by side"""
    out_dir = Path(out_dir)
    comparison: Dict[str, Any] = {}
    for distribution in ("beta", "gaussian"):
        variant = spec.model_copy(update={"parameter_distribution": distribution,
                                          "methods": ["bootstrap", "ppca"]})
        report = run_static_benchmark(variant, out_dir / distribution, n_draws=n_draws)
        comparison[distribution] = {
            "width_ratio_ppca_over_bootstrap": report["width_ratio_ppca_over_bootstrap"],
            "coverage": {m: v["coverage"] for m, v in report["methods"].items()},
        }
    write_report(out_dir, "static_distribution_comparison", comparison)
    return comparison
