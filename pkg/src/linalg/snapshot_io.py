"""
Snapshot matrix readers and writers: CSV (columns are snapshots, optional
header row) and Matrix Market array files.
"""

from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np
import pandas as pd
import scipy.io

from .types import SnapshotMatrix
from ..utils.errors import InputValidationError
from ..utils.records import write_frame

PathLike = Union[str, Path]


def _has_header(path: Path) -> bool:
    with open(path, 'r', encoding='utf-8') as f:
        first = f.readline().strip()
    if not first:
        raise InputValidationError(f"empty snapshot file: {path}")
    try:
        [float(token) for token in first.split(',')]
    except ValueError:
        return True
    return False


def read_snapshot_csv(path: PathLike) -> np.ndarray:
    path = Path(path)
    frame = pd.read_csv(path, header=0 if _has_header(path) else None,
                        float_precision="round_trip")
    values = frame.to_numpy(dtype=float)
    if not np.all(np.isfinite(values)):
        raise InputValidationError(f"non-finite snapshot entries in {path}")
    return values


def write_snapshot_csv(path: PathLike, matrix: np.ndarray, header: Optional[Sequence[str]] = None) -> Path:
    matrix = np.asarray(matrix, dtype=float)
    columns = list(header) if header is not None else [f"s{j}" for j in range(matrix.shape[1])]
    return write_frame(path, pd.DataFrame(matrix, columns=columns))


def read_snapshot_mtx(path: PathLike) -> np.ndarray:
    loaded = scipy.io.mmread(str(path))
    values = loaded.toarray() if hasattr(loaded, "toarray") else np.asarray(loaded)
    values = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(values)):
        raise InputValidationError(f"non-finite snapshot entries in {path}")
    return values


def write_snapshot_mtx(path: PathLike, matrix: np.ndarray) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    scipy.io.mmwrite(str(path), np.asarray(matrix, dtype=float), field='real', precision=17)
    return path


def read_snapshots(path: PathLike) -> np.ndarray:
    """Load a raw n×m snapshot matrix, dispatching on the file suffix"""
    suffix = Path(path).suffix.lower()
    if suffix == '.csv':
        return read_snapshot_csv(path)
    if suffix == '.mtx':
        return read_snapshot_mtx(path)
    raise InputValidationError(f"unsupported snapshot format '{suffix}' (use .csv or .mtx)")


def write_snapshots(path: PathLike, matrix: Union[np.ndarray, SnapshotMatrix]) -> Path:
    """Write a snapshot matrix; a SnapshotMatrix is written uncentered"""
    if isinstance(matrix, SnapshotMatrix):
        matrix = matrix.uncentered()
    suffix = Path(path).suffix.lower()
    if suffix == '.csv':
        return write_snapshot_csv(path, matrix)
    if suffix == '.mtx':
        return write_snapshot_mtx(path, matrix)
    raise InputValidationError(f"unsupported snapshot format '{suffix}' (use .csv or .mtx)")
