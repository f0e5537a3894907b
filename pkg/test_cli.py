#!/usr/bin/env python3
"""
Tests for the ssrom command line and its exit codes
"""

import json

import numpy as np
import pytest
import yaml

import main
from src.utils.errors import SingularSystemError

SMALL_STATIC = {
    "n": 60,
    "n_snapshots": 20,
    "k": 1,
    "n_draws": 40,
    "beta_max": 16,
    "n_mc_search": 10,
}


@pytest.fixture
def config_file(tmp_path, restore_config):
    path = tmp_path / "config.yaml"
    path.write_text(yaml.safe_dump({
        "logging": {"level": "INFO", "log_to_file": False},
        "static": SMALL_STATIC,
        "output": {"out_dir": str(tmp_path / "results")},
    }), encoding="utf-8")
    return path


class TestParser:
    def test_static_run_options(self):
        args = main.build_parser().parse_args(
            ["static", "run", "--beta", "4", "--method", "ppca", "--method", "bootstrap", "--seed", "3"]
        )
        assert (args.problem, args.action) == ("static", "run")
        assert args.beta == 4 and args.seed == 3
        assert args.method == ["ppca", "bootstrap"]
        assert not args.compare_distributions

    def test_sample_subspace_k_and_tau_are_exclusive(self):
        with pytest.raises(SystemExit):
            main.build_parser().parse_args(
                ["sample-subspace", "--snapshots", "x.csv", "--beta", "4", "--k", "2", "--tau", "0.9"]
            )

    def test_verb_is_required(self):
        with pytest.raises(SystemExit):
            main.build_parser().parse_args([])

    def test_unknown_method(self):
        with pytest.raises(SystemExit):
            main.build_parser().parse_args(["dynamic", "run", "--method", "bayesian"])


class TestExitCodes:
    def test_missing_config_file(self, tmp_path, restore_config):
        assert main.main(["static", "run", "--config", str(tmp_path / "absent.yaml")]) == main.EXIT_CONFIG

    def test_invalid_spec_value(self, tmp_path, restore_config):
        path = tmp_path / "bad.yaml"
        path.write_text(yaml.safe_dump({"static": {"n": 3}}), encoding="utf-8")
        assert main.main(["static", "train", "--config", str(path)]) == main.EXIT_CONFIG

    def test_beta_below_k(self, config_file):
        assert main.main(["static", "run", "--config", str(config_file), "--beta", "0"]) == main.EXIT_CONFIG

    def test_missing_snapshot_file(self, tmp_path, restore_config):
        code = main.main(["sample-subspace", "--snapshots", str(tmp_path / "none.csv"), "--beta", "4",
                          "--k", "1", "--out-dir", str(tmp_path / "out")])
        assert code == main.EXIT_CONFIG

    def test_numerical_failure(self, config_file, monkeypatch):
        def singular(*args, **kwargs):
            raise SingularSystemError("singular stiffness")

        monkeypatch.setattr(main, "run_static_benchmark", singular)
        assert main.main(["static", "run", "--config", str(config_file), "--beta", "2"]) == main.EXIT_NUMERICAL

    def test_linalg_failure(self, config_file, monkeypatch):
        def diverged(*args, **kwargs):
            raise np.linalg.LinAlgError("SVD did not converge")

        monkeypatch.setattr(main, "run_static_training", diverged)
        assert main.main(["static", "train", "--config", str(config_file)]) == main.EXIT_NUMERICAL

    def test_interrupt(self, config_file, monkeypatch):
        def interrupted(*args, **kwargs):
            raise KeyboardInterrupt

        monkeypatch.setattr(main, "run_static_benchmark", interrupted)
        assert main.main(["static", "run", "--config", str(config_file), "--beta", "2"]) == main.EXIT_INTERRUPTED


class TestRuns:
    def test_static_run_with_fixed_beta(self, config_file, tmp_path):
        out_dir = tmp_path / "static"
        code = main.main(["static", "run", "--config", str(config_file), "--beta", "4", "--draws", "20",
                          "--out-dir", str(out_dir)])
        assert code == main.EXIT_OK
        report = json.loads((out_dir / "static_report.json").read_text(encoding="utf-8"))
        assert set(report["methods"]) == {"bootstrap", "ppca"}
        assert report["methods"]["ppca"]["beta"] == 4
        assert (out_dir / "static_bootstrap_displacement.csv").exists()

    def test_overrides_reach_the_spec(self, config_file, monkeypatch, tmp_path):
        seen = {}

        def record(spec, out_dir):
            seen["spec"] = spec
            return {}

        monkeypatch.setattr(main, "run_static_training", record)
        code = main.main(["static", "train", "--config", str(config_file), "--seed", "9", "--n-mc", "12",
                          "--method", "ppca", "--out-dir", str(tmp_path / "o")])
        assert code == main.EXIT_OK
        spec = seen["spec"]
        assert (spec.seed, spec.n_mc_search, spec.methods, spec.n) == (9, 12, ["ppca"], 60)

    def test_sample_subspace(self, random_snapshots, tmp_path, restore_config):
        path = tmp_path / "snapshots.csv"
        np.savetxt(path, random_snapshots, delimiter=",")
        out_dir = tmp_path / "bases"
        code = main.main(["sample-subspace", "--snapshots", str(path), "--beta", "6", "--k", "2",
                          "--draws", "3", "--out-dir", str(out_dir)])
        assert code == main.EXIT_OK
        assert len(list(out_dir.glob("*.mtx"))) >= 1
