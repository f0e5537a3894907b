"""
Benchmark specifications, validated with pydantic
"""

from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

Method = Literal["bootstrap", "ppca"]


class StaticBenchmarkSpec(BaseModel):
    """Parametric static problem K x(μ) = f(μ) on a DST-I eigenbasis"""
    n: int = Field(1000, ge=6)
    n_snapshots: int = Field(50, ge=2)
    k: int = Field(1, ge=1)
    beta_dist_params: Tuple[float, float] = (0.5, 0.5)
    test_param: Tuple[float, float] = (0.5, 0.5)
    parameter_distribution: Literal["beta", "gaussian"] = "beta"
    gaussian_params: Tuple[float, float] = (0.5, 0.1)  # mean, std
    seed: int = 0
    data_seed: Optional[int] = None  # parameter points; defaults to seed
    center_snapshots: bool = False  # POD of X₀ instead of the raw snapshot matrix X
    n_draws: int = Field(1000, ge=2)
    level: float = Field(0.95, gt=0.0, lt=1.0)
    methods: List[Method] = ["bootstrap", "ppca"]
    beta: Optional[int] = None  # fixed concentration; skips training
    beta_max: int = Field(64, ge=1)
    n_mc_search: int = Field(200, ge=2)

    @model_validator(mode="after")
    def _check(self) -> "StaticBenchmarkSpec":
        if min(self.beta_dist_params) <= 0:
            raise ValueError("Beta distribution parameters must be positive")
        if self.gaussian_params[1] <= 0:
            raise ValueError("Gaussian standard deviation must be positive")
        if self.k > self.n_snapshots:
            raise ValueError(f"k={self.k} exceeds the snapshot count {self.n_snapshots}")
        if self.beta is not None and self.beta < self.k:
            raise ValueError(f"beta={self.beta} must be >= k={self.k}")
        if self.beta_max < self.k:
            raise ValueError(f"beta_max={self.beta_max} must be >= k={self.k}")
        return self

    @property
    def parameter_seed(self) -> int:
        return self.seed if self.data_seed is None else self.data_seed


class DynamicBenchmarkSpec(BaseModel):
    """Free-free spring-mass chain with one heavy mass hit by a half-sine impulse.

    Times are in ms; stiffness and mass units are consistent with that clock.
    """
    n: int = Field(200, ge=20)
    mass: float = Field(1.0, gt=0.0)
    stiffness: float = Field(100.0, gt=0.0)
    heterogeneity: float = Field(0.3, ge=0.0, lt=1.0)  # spring stiffness spread ±
    heavy_mass_factor: float = Field(100.0, gt=0.0)
    heavy_dof: Optional[int] = None  # defaults to the chain center
    rayleigh_beta: float = Field(6.366e-6, ge=0.0)
    dt: float = Field(5e-2, gt=0.0)
    n_steps: int = Field(800, ge=1)
    gamma: float = 0.5
    beta_nm: float = 0.25
    snapshot_every: int = Field(8, ge=1)
    impulse_amplitude: float = 1.0
    impulse_duration: float = Field(1.0, gt=0.0)
    k: int = Field(10, ge=1)
    monitored_dof: Optional[int] = None  # defaults to 0.8·n
    random_dof: Optional[int] = None  # seeded choice when unset
    seed: int = 0
    n_draws: int = Field(1000, ge=2)
    level: float = Field(0.95, gt=0.0, lt=1.0)
    methods: List[Method] = ["bootstrap", "ppca"]
    beta: Optional[int] = None
    beta_max: int = Field(200, ge=1)
    n_mc_search: int = Field(200, ge=2)

    @model_validator(mode="after")
    def _check(self) -> "DynamicBenchmarkSpec":
        for name in ("heavy_dof", "monitored_dof", "random_dof"):
            value = getattr(self, name)
            if value is not None and not 0 <= value < self.n:
                raise ValueError(f"{name}={value} outside [0, {self.n - 1}]")
        if self.snapshot_every > self.n_steps:
            raise ValueError("snapshot_every exceeds n_steps")
        if self.k > self.n_steps // self.snapshot_every + 1:
            raise ValueError(f"k={self.k} exceeds the snapshot count")
        if self.beta is not None and self.beta < self.k:
            raise ValueError(f"beta={self.beta} must be >= k={self.k}")
        if self.beta_max < self.k:
            raise ValueError(f"beta_max={self.beta_max} must be >= k={self.k}")
        return self

    @property
    def heavy_index(self) -> int:
        return self.n // 2 if self.heavy_dof is None else self.heavy_dof

    @property
    def monitored_index(self) -> int:
        return int(0.8 * self.n) if self.monitored_dof is None else self.monitored_dof

    @property
    def snapshot_count(self) -> int:
        return self.n_steps // self.snapshot_every + 1
