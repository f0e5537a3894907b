#!/usr/bin/env python3
"""
Tests for the Newmark integrator and the static solver
"""

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.linalg import expm

from src.benchmarks.dynamic_problem import chain_stiffness
from src.rom.systems import LinearSecondOrderSystem
from src.solvers.newmark import (
    NewmarkConfig,
    Quantity,
    newmark_integrate,
    total_energy,
    write_trajectory,
)
from src.solvers.static import coordinate_constraints, rayleigh_damping, solve_static
from src.utils.errors import DimensionMismatchError, InputValidationError, SingularSystemError
from src.utils.records import read_frame


def _oscillator(omega: float) -> LinearSecondOrderSystem:
    return LinearSecondOrderSystem(stiffness=[[omega ** 2]], mass=[[1.0]])


class TestNewmark:
    def test_undamped_oscillator_matches_cosine(self):
        omega = 2.0 * np.pi
        trajectory = newmark_integrate(_oscillator(omega), NewmarkConfig(dt=1.0 / 200, n_steps=1000),
                                       d0=np.array([1.0]), v0=np.array([0.0]))
        exact = np.cos(omega * trajectory.times)
        assert np.max(np.abs(trajectory.displacement[0] - exact)) < 5e-3

    def test_damped_oscillator_matches_matrix_exponential(self):
        omega, zeta = 2.0 * np.pi, 0.05
        system = LinearSecondOrderSystem(stiffness=[[omega ** 2]], mass=[[1.0]], damping=[[2.0 * zeta * omega]])
        trajectory = newmark_integrate(system, NewmarkConfig(dt=1.0 / 200, n_steps=1000),
                                       d0=np.array([1.0]), v0=np.array([0.0]))
        generator = np.array([[0.0, 1.0], [-omega ** 2, -2.0 * zeta * omega]])
        exact = np.array([expm(generator * t)[0, 0] for t in trajectory.times])
        assert np.max(np.abs(trajectory.displacement[0] - exact)) < 5e-3

    def test_response_is_linear_in_the_load(self, spd_system):
        def amplitude(t):
            return np.sin(t)[None, :]

        config = NewmarkConfig(dt=0.05, n_steps=200)
        first, second = spd_system.force[:, :1], spd_system.force[:, 1:]
        a = newmark_integrate(spd_system.with_force(first, amplitude), config)
        b = newmark_integrate(spd_system.with_force(second, amplitude), config)
        combined = newmark_integrate(spd_system.with_force(first + 2.0 * second, amplitude), config)
        scale = np.max(np.abs(combined.displacement))
        assert_allclose(combined.displacement, a.displacement + 2.0 * b.displacement, atol=1e-10 * scale)
        assert_allclose(combined.acceleration, a.acceleration + 2.0 * b.acceleration,
                        atol=1e-10 * np.max(np.abs(combined.acceleration)))

    def test_energy_is_conserved_without_damping(self):
        springs = np.array([3.0, 1.0, 2.0])
        system = LinearSecondOrderSystem(stiffness=chain_stiffness(springs) + np.diag([1.0, 0, 0, 0]),
                                         mass=np.diag([1.0, 2.0, 1.5, 1.0]))
        trajectory = newmark_integrate(system, NewmarkConfig(dt=0.05, n_steps=10_000),
                                       d0=np.array([0.1, -0.2, 0.3, 0.0]))
        energy = total_energy(system, trajectory)
        assert np.max(np.abs(energy - energy[0])) / energy[0] < 1e-6

    def test_damping_dissipates_energy(self):
        stiffness = chain_stiffness(np.array([4.0, 4.0])) + np.eye(3)
        system = LinearSecondOrderSystem(stiffness=stiffness, mass=np.eye(3),
                                         damping=rayleigh_damping(stiffness, 0.05))
        trajectory = newmark_integrate(system, NewmarkConfig(dt=0.02, n_steps=2000), d0=np.ones(3))
        energy = total_energy(system, trajectory)
        assert np.all(np.diff(energy) <= 1e-12)
        assert energy[-1] < 0.5 * energy[0]

    def test_initial_acceleration_from_equilibrium(self):
        system = LinearSecondOrderSystem(stiffness=[[4.0]], mass=[[2.0]], force=[1.0])
        trajectory = newmark_integrate(system, NewmarkConfig(dt=0.1, n_steps=3), d0=np.array([0.5]))
        assert_allclose(trajectory.acceleration[0, 0], (1.0 - 4.0 * 0.5) / 2.0)

    def test_static_system_has_singular_mass(self):
        system = LinearSecondOrderSystem(stiffness=np.eye(2))
        with pytest.raises(SingularSystemError, match="mass matrix"):
            newmark_integrate(system, NewmarkConfig(dt=0.1, n_steps=2))

    def test_initial_condition_shape(self):
        with pytest.raises(DimensionMismatchError):
            newmark_integrate(_oscillator(1.0), NewmarkConfig(dt=0.1, n_steps=2), d0=np.zeros(2))

    @pytest.mark.parametrize("dt, n_steps", [(0.0, 10), (-1.0, 10), (0.1, 0)])
    def test_invalid_config(self, dt, n_steps):
        with pytest.raises(InputValidationError):
            NewmarkConfig(dt=dt, n_steps=n_steps)

    def test_trajectory_export(self, tmp_path):
        trajectory = newmark_integrate(_oscillator(1.0), NewmarkConfig(dt=0.5, n_steps=4), d0=np.array([1.0]))
        path = write_trajectory(tmp_path / "trajectory.csv", trajectory, rows=[0],
                                quantities=[Quantity.DISPLACEMENT, Quantity.VELOCITY])
        frame = read_frame(path)
        assert list(frame.columns) == ["time", "displacement_0", "velocity_0"]
        assert_allclose(frame["velocity_0"], trajectory.select([0], Quantity.VELOCITY)[0])
        assert trajectory.n_steps == 4 and trajectory.dofs == 1


class TestStaticSolve:
    def test_unconstrained_matches_dense_solve(self, rng):
        a = rng.standard_normal((6, 6))
        stiffness = a @ a.T + 6 * np.eye(6)
        force = rng.standard_normal((6, 3))
        assert_allclose(solve_static(stiffness, force), np.linalg.solve(stiffness, force), atol=1e-12)

    def test_coordinate_constraints_are_exact_zeros(self, rng):
        a = rng.standard_normal((6, 6))
        stiffness = a @ a.T + 6 * np.eye(6)
        boundary = np.zeros((6, 2))
        boundary[0, 0] = boundary[5, 1] = 1.0
        x = solve_static(stiffness, rng.standard_normal(6), boundary)
        assert x[0] == 0.0 and x[5] == 0.0

    def test_general_constraint_matches_lagrange_system(self, rng):
        a = rng.standard_normal((5, 5))
        stiffness = a @ a.T + 5 * np.eye(5)
        constraint = rng.standard_normal((5, 1))
        force = rng.standard_normal(5)
        kkt = np.block([[stiffness, constraint], [constraint.T, np.zeros((1, 1))]])
        oracle = np.linalg.solve(kkt, np.append(force, 0.0))[:5]
        x = solve_static(stiffness, force, constraint)
        assert_allclose(x, oracle, atol=1e-10)
        assert abs(float(constraint[:, 0] @ x)) < 1e-12

    def test_singular_stiffness(self):
        with pytest.raises(SingularSystemError):
            solve_static(chain_stiffness(np.ones(3)), np.ones(4))

    def test_shape_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            solve_static(np.eye(3), np.ones(4))

    def test_coordinate_constraint_detection(self):
        assert coordinate_constraints(np.array([[0.0], [1.0], [0.0]])).tolist() == [1]
        assert coordinate_constraints(np.array([[0.5], [0.5], [0.0]])) is None


class TestRayleighDamping:
    def test_stiffness_proportional(self):
        stiffness = np.diag([1.0, 2.0])
        assert_allclose(rayleigh_damping(stiffness, 0.1), 0.1 * stiffness)

    def test_mass_proportional_term(self):
        damping = rayleigh_damping(np.eye(2), 0.1, mass=2 * np.eye(2), alpha_h=0.5)
        assert_allclose(damping, 1.1 * np.eye(2))

    def test_negative_coefficient(self):
        with pytest.raises(InputValidationError):
            rayleigh_damping(np.eye(2), -0.1)

    def test_mass_term_needs_mass(self):
        with pytest.raises(InputValidationError):
            rayleigh_damping(np.eye(2), 0.1, alpha_h=0.2)
