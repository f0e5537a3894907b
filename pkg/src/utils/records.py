"""
File helpers shared by every writer: CSV tables and JSON manifests
"""

import json
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np
import pandas as pd

FLOAT_FORMAT = "%.17g"


def _to_builtin(value: Any) -> Any:
    """Convert numpy scalars and arrays to JSON-friendly builtins"""
    if isinstance(value, dict):
        return {str(k): _to_builtin(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_to_builtin(v) for v in value]
    if isinstance(value, np.ndarray):
        return _to_builtin(value.tolist())
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, Path):
        return str(value)
    return value


def write_json(path: Union[str, Path], data: Any) -> Path:
    """Write a JSON manifest with stable key order"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(_to_builtin(data), f, indent=2)
        f.write("\n")
    return path


def read_json(path: Union[str, Path]) -> Any:
    """Read a JSON manifest"""
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)


def write_frame(path: Union[str, Path], frame: pd.DataFrame, comment: Optional[str] = None) -> Path:
    """Write a DataFrame as RFC-4180 CSV with full float precision"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='') as f:
        if comment:
            for line in comment.splitlines():
                f.write(f"# {line}\r\n")
        frame.to_csv(f, index=False, float_format=FLOAT_FORMAT, lineterminator="\r\n")
    return path


def read_frame(path: Union[str, Path]) -> pd.DataFrame:
    """Read a CSV written by write_frame, skipping comment lines"""
    return pd.read_csv(path, comment='#', float_precision="round_trip")
