"""
Draw stochastic bases from a snapshot file and export them
"""

from pathlib import Path
from typing import Any, Dict, Optional, Union

import pandas as pd

from .reporting import write_report
from ..linalg.decomposition import (
    center,
    compact_svd,
    cumulative_energy,
    largest_principal_angle,
    select_pod_dimension,
)
from ..linalg.snapshot_io import read_snapshots, write_snapshot_mtx
from ..subspace.model import SubspaceKind, SubspaceModel
from ..subspace.sampling import SubspaceSampler, derive_seed, lift_to_ambient, make_rng, pod_subspace
from ..utils.errors import IllDefinedSubspaceError
from ..utils.logger import get_logger
from ..utils.records import write_frame

logger = get_logger('benchmarks')

DEFAULT_TAU = 0.99


def run_sample_subspace(snapshot_path: Union[str, Path],
                        out_dir: Union[str, Path],
                        concentration: int,
                        k: Optional[int] = None,
                        tau: Optional[float] = None,
                        method: str = "bootstrap",
                        n_draws: int = 10,
                        seed: int = 0) -> Dict[str, Any]:
    """Write W_1..W_N as Matrix Market files, the model summary and angles to V_k"""
    out_dir = Path(out_dir)
    snapshots = center(read_snapshots(snapshot_path))
    svd = compact_svd(snapshots)
    if k is None:
        k = select_pod_dimension(svd.singular_values, DEFAULT_TAU if tau is None else tau)
        logger.info(f"Selected k={k} from energy threshold {DEFAULT_TAU if tau is None else tau}")

    model = SubspaceModel(svd, snapshots.snapshot_count, k, concentration, SubspaceKind(method))
    sampler = SubspaceSampler(model)
    pod = lift_to_ambient(model, pod_subspace(model))

    rows = []
    for index in range(int(n_draws)):
        draw_seed = derive_seed(seed, index)
        try:
            basis = sampler.draw_ambient(make_rng(draw_seed))
        except IllDefinedSubspaceError as e:
            logger.warning(f"Draw {index} is degenerate, skipped: {e}")
            continue
        write_snapshot_mtx(out_dir / f"basis_{index:04d}.mtx", basis.basis)
        rows.append({"draw": index, "seed": str(draw_seed),
                     "largest_angle": largest_principal_angle(basis, pod)})

    write_frame(out_dir / "principal_angles.csv", pd.DataFrame(rows, columns=["draw", "seed", "largest_angle"]))
    summary = model.summary()
    summary.update(source=str(snapshot_path), seed=int(seed), n_draws=int(n_draws), written=len(rows),
                   cumulative_energy=cumulative_energy(svd.singular_values))
    write_report(out_dir, "subspace_model", summary)
    logger.info(f"Wrote {len(rows)} of {n_draws} bases to {out_dir}")
    return summary
