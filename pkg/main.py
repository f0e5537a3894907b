"""
Stochastic Subspace ROM - Benchmark Harness
Builds the static and dynamic benchmarks, trains the concentration parameter,
generates SROM ensembles and writes coverage and sharpness reports
"""

import argparse
import signal
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import ValidationError

from src.benchmarks.dynamic_problem import run_dynamic_benchmark, run_dynamic_training
from src.benchmarks.specs import DynamicBenchmarkSpec, StaticBenchmarkSpec
from src.benchmarks.static_problem import compare_distributions, run_static_benchmark, run_static_training
from src.benchmarks.subspace_export import run_sample_subspace
from src.utils.config_manager import config
from src.utils.errors import ConfigError, InputValidationError, SromError
from src.utils.logger import get_logger

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_INTERRUPTED = 130


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='YAML configuration file (default: config/config.yaml)')
    common.add_argument('--seed', type=int, help='Master seed')
    common.add_argument('--out-dir', help='Output directory (default: output.out_dir)')
    common.add_argument('--method', choices=['bootstrap', 'ppca'], action='append',
                        help='Stochastic subspace model; repeat for both (default: from config)')
    common.add_argument('--draws', type=int, help='Number of SROM draws')

    benchmark = argparse.ArgumentParser(add_help=False, parents=[common])
    benchmark.add_argument('--beta', type=int, help='Fixed concentration parameter (skips training)')
    benchmark.add_argument('--n-mc', type=int, help='Monte-Carlo draws per objective evaluation')

    parser = argparse.ArgumentParser(prog='ssrom', description='Stochastic subspace reduced-order models')
    verbs = parser.add_subparsers(dest='problem', required=True)

    static = verbs.add_parser('static', help='Parametric linear static benchmark')
    static_verbs = static.add_subparsers(dest='action', required=True)
    static_run = static_verbs.add_parser('run', parents=[benchmark], help='Train, sample and report')
    static_run.add_argument('--compare-distributions', action='store_true',
                            help='Also run with Gaussian parameters and compare width ratios')
    static_verbs.add_parser('train', parents=[benchmark], help='Train beta only')

    dynamic = verbs.add_parser('dynamic', help='Linear dynamics benchmark (synthetic analogue)')
    dynamic_verbs = dynamic.add_subparsers(dest='action', required=True)
    dynamic_verbs.add_parser('run', parents=[benchmark], help='Train, sample and report')
    dynamic_verbs.add_parser('train', parents=[benchmark], help='Train beta only')

    sample = verbs.add_parser('sample-subspace', parents=[common],
                              help='Draw stochastic bases from a snapshot file')
    sample.add_argument('--snapshots', required=True, help='Snapshot matrix (.csv or .mtx), one column per sample')
    sample.add_argument('--beta', type=int, required=True, help='Concentration parameter')
    dimension = sample.add_mutually_exclusive_group()
    dimension.add_argument('--k', type=int, help='Subspace dimension')
    dimension.add_argument('--tau', type=float, help='Energy threshold used to select k')
    return parser


class SromBenchApp:
    """Command-line application for the benchmark harness"""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.logger = get_logger('ssrom_main')
        signal.signal(signal.SIGINT, self._signal_handler)
        signal.signal(signal.SIGTERM, self._signal_handler)

    def _signal_handler(self, signum, frame):
        """Handle shutdown signals"""
        self.logger.info(f"Received signal {signum}, shutting down...")
        raise KeyboardInterrupt

    def _overrides(self) -> Dict[str, Any]:
        args = self.args
        updates: Dict[str, Any] = {}
        if args.seed is not None:
            updates['seed'] = args.seed
        if args.draws is not None:
            updates['n_draws'] = args.draws
        if args.method:
            updates['methods'] = list(dict.fromkeys(args.method))
        if getattr(args, 'beta', None) is not None:
            updates['beta'] = args.beta
        if getattr(args, 'n_mc', None) is not None:
            updates['n_mc_search'] = args.n_mc
        return updates

    def _out_dir(self) -> Path:
        out_dir = Path(self.args.out_dir) if self.args.out_dir else config.get_out_dir()
        out_dir.mkdir(parents=True, exist_ok=True)
        return out_dir

    def static_spec(self) -> StaticBenchmarkSpec:
        # re-validate so overrides go through the field checks
        return StaticBenchmarkSpec(**{**config.get_static_spec().model_dump(), **self._overrides()})

    def dynamic_spec(self) -> DynamicBenchmarkSpec:
        return DynamicBenchmarkSpec(**{**config.get_dynamic_spec().model_dump(), **self._overrides()})

    def run_static(self) -> Dict[str, Any]:
        spec = self.static_spec()
        out_dir = self._out_dir()
        if self.args.action == 'train':
            return run_static_training(spec, out_dir)
        report = run_static_benchmark(spec, out_dir)
        if self.args.compare_distributions:
            report['distribution_comparison'] = compare_distributions(spec, out_dir / 'distributions')
        return report

    def run_dynamic(self) -> Dict[str, Any]:
        spec = self.dynamic_spec()
        out_dir = self._out_dir()
        if self.args.action == 'train':
            return run_dynamic_training(spec, out_dir)
        return run_dynamic_benchmark(spec, out_dir)

    def run_sample_subspace(self) -> Dict[str, Any]:
        args = self.args
        methods: List[str] = args.method or ['bootstrap']
        summaries = {}
        for method in dict.fromkeys(methods):
            summaries[method] = run_sample_subspace(args.snapshots,
                                                    self._out_dir() / method if len(methods) > 1 else self._out_dir(),
                                                    concentration=args.beta,
                                                    k=args.k,
                                                    tau=args.tau,
                                                    method=method,
                                                    n_draws=args.draws or 10,
                                                    seed=0 if args.seed is None else args.seed)
        return summaries

    def run(self) -> int:
        """Dispatch the requested verb and map failures to exit codes"""
        start_time = time.time()
        try:
            if self.args.config:
                config.use_file(self.args.config)
            if self.args.problem == 'static':
                self.run_static()
            elif self.args.problem == 'dynamic':
                self.run_dynamic()
            else:
                self.run_sample_subspace()
        except (ConfigError, ValidationError, InputValidationError, OSError) as e:
            self.logger.error(f"Configuration or input error: {e}")
            return EXIT_CONFIG
        except (SromError, np.linalg.LinAlgError) as e:
            self.logger.error(f"Numerical failure: {e}")
            return EXIT_NUMERICAL
        except KeyboardInterrupt:
            self.logger.warning("Interrupted")
            return EXIT_INTERRUPTED
        self.logger.info(f"Finished '{self.args.problem}' in {time.time() - start_time:.2f}s")
        return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point"""
    args = build_parser().parse_args(argv)
    return SromBenchApp(args).run()


if __name__ == "__main__":
    sys.exit(main())
