#!/usr/bin/env python3
"""
Tests for snapshot readers/writers and the shared CSV/JSON helpers
"""

import numpy as np
import pandas as pd
import pytest
from numpy.testing import assert_array_equal

from src.linalg.decomposition import center
from src.linalg.snapshot_io import read_snapshots, write_snapshots
from src.utils.errors import InputValidationError
from src.utils.records import read_frame, read_json, write_frame, write_json


class TestSnapshotFiles:
    @pytest.mark.parametrize("suffix", [".csv", ".mtx"])
    def test_full_precision(self, tmp_path, rng, suffix):
        matrix = rng.standard_normal((7, 5)) * 10.0 ** rng.integers(-8, 8, size=(7, 5))
        path = write_snapshots(tmp_path / f"snapshots{suffix}", matrix)
        assert_array_equal(read_snapshots(path), matrix)

    def test_csv_without_header(self, tmp_path):
        path = tmp_path / "plain.csv"
        path.write_text("1,2,3\n4,5,6\n", encoding="utf-8")
        assert_array_equal(read_snapshots(path), [[1, 2, 3], [4, 5, 6]])

    def test_csv_with_header(self, tmp_path):
        path = tmp_path / "named.csv"
        path.write_text("t0,t1\n1.5,2.5\n3.5,4.5\n", encoding="utf-8")
        assert_array_equal(read_snapshots(path), [[1.5, 2.5], [3.5, 4.5]])

    def test_snapshot_matrix_written_uncentered(self, tmp_path, random_snapshots):
        path = write_snapshots(tmp_path / "raw.mtx", center(random_snapshots))
        np.testing.assert_allclose(read_snapshots(path), random_snapshots, atol=1e-13)

    def test_unsupported_suffix(self, tmp_path):
        with pytest.raises(InputValidationError, match="unsupported snapshot format"):
            read_snapshots(tmp_path / "snapshots.npy")

    def test_non_finite_entries_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1,nan\n2,3\n", encoding="utf-8")
        with pytest.raises(InputValidationError):
            read_snapshots(path)

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("", encoding="utf-8")
        with pytest.raises(InputValidationError):
            read_snapshots(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            read_snapshots(tmp_path / "absent.csv")


class TestRecords:
    def test_frame_comment_is_skipped(self, tmp_path):
        frame = pd.DataFrame({"beta": [1, 2], "mean": [0.1, 1.0 / 3.0]})
        path = write_frame(tmp_path / "trace.csv", frame, comment="first line\nsecond line")
        text = path.read_bytes()
        assert text.startswith(b"# first line\r\n# second line\r\n")
        loaded = read_frame(path)
        assert list(loaded.columns) == ["beta", "mean"]
        assert loaded["mean"].iloc[1] == 1.0 / 3.0

    def test_json_converts_numpy_values(self, tmp_path):
        data = {"rank": np.int64(3), "values": np.array([1.0, 2.0]), "ok": np.bool_(True),
                "path": tmp_path, "nested": ({"x": np.float32(0.5)},)}
        loaded = read_json(write_json(tmp_path / "out" / "report.json", data))
        assert loaded == {"rank": 3, "values": [1.0, 2.0], "ok": True,
                          "path": str(tmp_path), "nested": [{"x": 0.5}]}
