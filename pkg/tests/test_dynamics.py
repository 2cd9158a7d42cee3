"""Exact propagation layer, checked against independent oracles.

Oracle ordering matters here: the dense matrix-exponential propagator and
the adaptive integrator are written and trusted first, then the closed-form
block propagator and the coherence series are held to them.
"""

from __future__ import annotations

import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from cavitytherm import dynamics, hilbert
from cavitytherm.hilbert import LEVEL_E, LEVEL_G, PhysicalParams


def random_joint_state(n_max: int, seed: int,
                       params: PhysicalParams | None = None) -> hilbert.JointPureState:
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=2 * (n_max + 1)) + 1j * rng.normal(size=2 * (n_max + 1))
    amps /= np.linalg.norm(amps)
    return hilbert.JointPureState(amps, params or PhysicalParams())


def fidelity(a: hilbert.JointPureState, b: hilbert.JointPureState) -> float:
    return abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2


class TestDensePropagatorOracle:
    """Closed-form blocks vs scipy's matrix exponential of the dense H."""

    @pytest.mark.parametrize("n_max", [0, 1, 7, 40])
    @pytest.mark.parametrize("t", [0.0, 0.37, 2.0, 11.3])
    def test_propagate_matches_expm(self, n_max, t):
        params = PhysicalParams(delta_e=1.3, g=0.7)
        state = random_joint_state(n_max, seed=n_max * 1000 + int(10 * t), params=params)
        u = scipy.linalg.expm(-1j * t * dynamics.hamiltonian_matrix(params, n_max))
        expected = u @ state.amplitudes
        got = dynamics.propagate(state, t).amplitudes
        np.testing.assert_allclose(got, expected, atol=1e-12)

    def test_top_block_gets_bare_phase_only(self):
        params = PhysicalParams(delta_e=2.0, g=1.0)
        n_max = 3
        amps = np.zeros(2 * (n_max + 1), dtype=complex)
        amps[2 * n_max + LEVEL_E] = 1.0
        out = dynamics.propagate(hilbert.JointPureState(amps, params), 0.8)
        expected = np.exp(-1j * params.omega * (n_max + 1) * 0.8)
        assert out.amplitude(LEVEL_E, n_max) == pytest.approx(expected, abs=1e-14)
        assert out.norm == pytest.approx(1.0, abs=1e-14)


class TestAdaptiveIntegratorOracle:
    def test_matches_closed_form_for_coherent_state(self):
        params = PhysicalParams()
        state = hilbert.coherent_joint_state(LEVEL_E, 2.0, params)
        t = 4.0
        ode = dynamics.propagate_ode(state, t)
        closed = dynamics.propagate(state, t)
        assert 1.0 - fidelity(ode, closed) <= 1e-8
        assert ode.norm == pytest.approx(1.0, abs=1e-8)

    def test_excited_vacuum_half_period(self):
        params = PhysicalParams(delta_e=1.0, g=1.0)
        state = hilbert.product_state(LEVEL_E, [1.0, 0.0, 0.0], params)
        out = dynamics.propagate_ode(state, math.pi / (2.0 * params.g))
        pe = hilbert.partial_trace_field(out).rho11
        assert pe <= 1e-8

    def test_zero_time_is_identity(self):
        state = random_joint_state(4, seed=9)
        assert dynamics.propagate_ode(state, 0.0) is state

    def test_negative_time_rejected(self):
        state = random_joint_state(2, seed=1)
        with pytest.raises(ValueError):
            dynamics.propagate_ode(state, -1.0)

    def test_unreachable_tolerance_raises(self):
        state = random_joint_state(3, seed=5)
        control = dynamics.StepControl(tolerance=0.0)
        with pytest.raises(dynamics.IntegrationError, match="underflow at t="):
            dynamics.propagate_ode(state, 1.0, control)


class TestVacuumRabi:
    def test_cosine_squared_population(self):
        params = PhysicalParams(delta_e=1.0, g=0.8)
        state = hilbert.product_state(LEVEL_E, [1.0, 0.0], params)
        for t in np.linspace(0.0, 6.0, 25):
            pe = hilbert.partial_trace_field(dynamics.propagate(state, t)).rho11
            assert pe == pytest.approx(math.cos(params.g * t) ** 2, abs=1e-12)

    def test_ground_vacuum_is_stationary(self):
        state = hilbert.product_state(LEVEL_G, [1.0, 0.0, 0.0])
        out = dynamics.propagate(state, 17.3)
        np.testing.assert_allclose(out.amplitudes, state.amplitudes, atol=1e-15)


class TestDressedStates:
    @pytest.mark.parametrize("n", [1, 2, 9])
    def test_eigenpair_relation(self, n):
        params = PhysicalParams(delta_e=1.7, g=0.4)
        n_max = 12
        h = dynamics.hamiltonian_matrix(params, n_max)
        for energy, state in dynamics.dressed_pair(n, params, n_max):
            np.testing.assert_allclose(
                h @ state.amplitudes, energy * state.amplitudes, atol=1e-12)

    def test_energies_and_splitting(self):
        params = PhysicalParams(delta_e=1.0, g=0.5)
        (e_plus, _), (e_minus, _) = dynamics.dressed_pair(4, params, 6)
        assert e_plus == pytest.approx(4.0 + 0.5 * 2.0)
        assert e_minus == pytest.approx(4.0 - 0.5 * 2.0)
        assert e_plus - e_minus == pytest.approx(dynamics.rabi_splitting(4, params.g))

    def test_orthonormal(self):
        params = PhysicalParams()
        (_, plus), (_, minus) = dynamics.dressed_pair(3, params, 5)
        assert abs(np.vdot(plus.amplitudes, minus.amplitudes)) <= 1e-14
        assert plus.norm == pytest.approx(1.0, abs=1e-14)
        assert minus.norm == pytest.approx(1.0, abs=1e-14)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            dynamics.dressed_pair(0, PhysicalParams(), 5)
        with pytest.raises(ValueError):
            dynamics.dressed_pair(6, PhysicalParams(), 5)

    def test_stationary_under_propagation_up_to_phase(self):
        params = PhysicalParams(delta_e=1.0, g=0.3)
        t = 2.2
        for energy, state in dynamics.dressed_pair(2, params, 4):
            out = dynamics.propagate(state, t)
            np.testing.assert_allclose(
                out.amplitudes, np.exp(-1j * energy * t) * state.amplitudes,
                atol=1e-13)


class TestConservationProperties:
    @settings(max_examples=30, deadline=None)
    @given(t=st.floats(0.0, 50.0), seed=st.integers(0, 10_000))
    def test_norm_and_energy_conserved(self, t, seed):
        state = random_joint_state(6, seed=seed)
        out = dynamics.propagate(state, t)
        assert out.norm == pytest.approx(1.0, abs=1e-12)
        assert dynamics.energy_expectation(out) == pytest.approx(
            dynamics.energy_expectation(state), abs=1e-10)

    @settings(max_examples=30, deadline=None)
    @given(t=st.floats(0.0, 20.0), s=st.floats(0.0, 20.0))
    def test_composition(self, t, s):
        state = random_joint_state(5, seed=77)
        both = dynamics.propagate(state, t + s)
        stepped = dynamics.propagate(dynamics.propagate(state, t), s)
        np.testing.assert_allclose(stepped.amplitudes, both.amplitudes, atol=1e-11)


class TestApplyHamiltonian:
    def test_matches_dense_matrix(self):
        params = PhysicalParams(delta_e=0.9, g=1.4)
        state = random_joint_state(11, seed=3, params=params)
        dense = dynamics.hamiltonian_matrix(params, 11) @ state.amplitudes
        np.testing.assert_allclose(
            dynamics.apply_hamiltonian(state.amplitudes, params), dense, atol=1e-13)

    def test_energy_expectation_matches_dense(self):
        params = PhysicalParams(delta_e=0.9, g=1.4)
        state = random_joint_state(8, seed=21, params=params)
        dense = float(np.real(np.vdot(
            state.amplitudes,
            dynamics.hamiltonian_matrix(params, 8) @ state.amplitudes)))
        assert dynamics.energy_expectation(state) == pytest.approx(dense, abs=1e-12)


class TestCoherenceSeries:
    @pytest.mark.parametrize("initial_level", [LEVEL_E, LEVEL_G])
    @pytest.mark.parametrize("alpha", [2.0, 6.0 * np.exp(1j * 0.6)])
    def test_series_matches_propagator(self, initial_level, alpha):
        params = PhysicalParams()
        for t in (0.0, 1.0, 4.24, 10.0, 30.0):
            series = dynamics.rho01_exact_sum(
                t, alpha, params, initial_level=initial_level)
            direct = dynamics.coherence_from_propagator(
                t, alpha, params, initial_level=initial_level)
            assert series == pytest.approx(direct, abs=1e-10)

    def test_wrong_splitting_convention_breaks_identity(self):
        params = PhysicalParams()
        halved = lambda n: params.g * np.sqrt(n)  # noqa: E731
        t, alpha = 4.0, 2.0
        series = dynamics.rho01_exact_sum(t, alpha, params, rabi_frequency=halved)
        direct = dynamics.coherence_from_propagator(t, alpha, params)
        assert abs(series - direct) > 1e-3

    def test_vacuum_guard_returns_zero(self):
        assert dynamics.rho01_exact_summand(3, 1.0, 0.0) == 0j
        arr = dynamics.rho01_exact_summand(np.arange(5), 1.0, 0.0)
        np.testing.assert_array_equal(arr, np.zeros(5, dtype=complex))
        assert dynamics.rho01_exact_sum(1.0, 0.0) == 0j

    def test_zeroth_term_vanishes(self):
        assert dynamics.rho01_exact_summand(0, 2.0, 2.0) == 0j

    def test_empty_series_is_zero(self):
        assert dynamics.rho01_exact_sum(1.0, 2.0, n_max=0) == 0j

    def test_bad_level_rejected(self):
        with pytest.raises(ValueError):
            dynamics.rho01_exact_summand(1, 1.0, 2.0, initial_level=7)


class TestMixtureEvolution:
    def test_pure_excited_matches_joint_propagation(self):
        params = PhysicalParams()
        alpha = 2.0 * np.exp(1j * 0.3)
        t = 3.1
        mixed = dynamics.evolve_atom_field_mixture(
            hilbert.AtomDensity(1.0), alpha, t, params)
        joint = hilbert.coherent_joint_state(LEVEL_E, alpha, params)
        direct = hilbert.partial_trace_field(dynamics.propagate(joint, t))
        assert mixed.rho11 == pytest.approx(direct.rho11, abs=1e-12)
        assert mixed.rho01 == pytest.approx(direct.rho01, abs=1e-12)

    def test_diagonal_mixture_is_convex_combination(self):
        params = PhysicalParams()
        alpha, t, pe0 = 2.0, 2.6, 0.3
        mixed = dynamics.evolve_atom_field_mixture(
            hilbert.AtomDensity(pe0), alpha, t, params)
        branch = {}
        for level in (LEVEL_G, LEVEL_E):
            joint = hilbert.coherent_joint_state(level, alpha, params)
            branch[level] = hilbert.partial_trace_field(dynamics.propagate(joint, t))
        expected = hilbert.mix_densities(
            [1.0 - pe0, pe0], [branch[LEVEL_G], branch[LEVEL_E]])
        assert mixed.rho11 == pytest.approx(expected.rho11, abs=1e-12)
        assert mixed.rho01 == pytest.approx(expected.rho01, abs=1e-12)

    def test_coherent_atom_input_supported(self):
        atom = hilbert.atom_density_from_bloch([0.6, 0.0, 0.0])
        out = dynamics.evolve_atom_field_mixture(atom, 1.5, 1.0)
        assert 0.0 <= out.rho11 <= 1.0
        assert out.determinant >= -1e-12
