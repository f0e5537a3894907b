"""
Shared fixtures: seeded generators, small benchmark problems and config isolation
"""

import numpy as np
import pytest

from src.benchmarks.specs import DynamicBenchmarkSpec, StaticBenchmarkSpec
from src.benchmarks.static_problem import generate_static_data
from src.linalg.decomposition import center, compact_svd
from src.rom.systems import LinearSecondOrderSystem
from src.utils.config_manager import config


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def random_snapshots():
    """12×15 raw snapshots with a well-separated spectrum"""
    gen = np.random.default_rng(7)
    left, _ = np.linalg.qr(gen.standard_normal((12, 12)))
    right, _ = np.linalg.qr(gen.standard_normal((15, 12)))
    sigma = 2.0 ** -np.arange(12)
    return (left * sigma) @ right.T + gen.standard_normal(12)[:, None]


@pytest.fixture
def random_svd(random_snapshots):
    snapshots = center(random_snapshots)
    return snapshots, compact_svd(snapshots)


@pytest.fixture
def spd_system():
    """Random 30-DOF system with SPD mass and stiffness and two load patterns"""
    gen = np.random.default_rng(11)
    a = gen.standard_normal((30, 30))
    stiffness = 0.5 * (a @ a.T + (a @ a.T).T) / 30 + np.eye(30)
    b = gen.standard_normal((30, 30))
    mass = 0.5 * (b @ b.T + (b @ b.T).T) / 30 + np.eye(30)
    return LinearSecondOrderSystem(stiffness=stiffness,
                                   mass=mass,
                                   damping=0.01 * stiffness,
                                   force=gen.standard_normal((30, 2)))


@pytest.fixture(scope="session")
def small_static_spec():
    return StaticBenchmarkSpec(n=60, n_snapshots=20, k=1, n_draws=40, beta_max=16, n_mc_search=10)


@pytest.fixture(scope="session")
def small_static_data(small_static_spec):
    return generate_static_data(small_static_spec)


@pytest.fixture(scope="session")
def small_dynamic_spec():
    return DynamicBenchmarkSpec(n=20, n_steps=80, snapshot_every=4, k=3, n_draws=20,
                                beta_max=12, n_mc_search=10, dt=0.1)


@pytest.fixture
def restore_config():
    """Undo any switch of the global configuration made by a test"""
    saved = (config.config_path, config._explicit, config.as_dict())
    yield config
    config.config_path, config._explicit = saved[0], saved[1]
    config._config = saved[2]
