from dataclasses import replace

import numpy as np
import pytest

from adaptive_leg import dynamics as dyn
from adaptive_leg.invariants import mass_rate_fd
from adaptive_leg.kincore import RobotParams, jacobian_com
from adaptive_leg.oracles import euler_lagrange_torque, potential_gradient_fd
from conftest import random_state


def test_upright_hip_yaw_entry_is_rotor_inertia(params):
    assert dyn.mass_matrix(np.zeros(4), params)[0, 0] == pytest.approx(params.rotor_inertia, abs=1e-15)


def test_mass_matrix_symmetric_and_kinetic_energy(params, rng):
    for _ in range(100):
        q, qd, _ = random_state(rng)
        m = dyn.mass_matrix(q, params)
        assert np.abs(m - m.T).max() <= 1e-12
        ju = jacobian_com("upper", q, params) @ qd
        jl = jacobian_com("lower", q, params) @ qd
        expected = 0.5 * (params.mass_upper * ju @ ju + params.mass_lower * jl @ jl
                          + params.rotor_inertia * qd @ qd)
        assert 0.5 * qd @ m @ qd == pytest.approx(expected, abs=1e-12)


def test_mass_matrix_yaw_invariant(params, rng):
    q = rng.uniform(-np.pi, np.pi, 4)
    shifted = q + np.array([1.3, 0, 0, 0])
    np.testing.assert_allclose(dyn.mass_matrix(q, params), dyn.mass_matrix(shifted, params), atol=1e-14)


def test_gravity_upright_zero(params):
    np.testing.assert_allclose(dyn.gravity_vector(np.zeros(4), params), 0, atol=1e-15)


def test_gravity_matches_potential_gradient(params, rng):
    for _ in range(50):
        q = rng.uniform(-np.pi, np.pi, 4)
        g = dyn.gravity_vector(q, params)
        np.testing.assert_allclose(g, potential_gradient_fd(q, params), atol=1e-6)
        assert g[0] == 0


def test_coriolis_zero_at_rest_and_homogeneous(params, rng):
    q, qd, _ = random_state(rng)
    np.testing.assert_array_equal(dyn.coriolis_matrix(q, np.zeros(4), params), 0)
    np.testing.assert_array_equal(dyn.coriolis_matrix(q, 2 * qd, params), 2 * dyn.coriolis_matrix(q, qd, params))


def test_skew_symmetry(params, rng):
    for _ in range(100):
        q, qd, _ = random_state(rng)
        value = qd @ (mass_rate_fd(q, qd, params) - 2 * dyn.coriolis_matrix(q, qd, params)) @ qd
        assert abs(value) <= 1e-9


def test_inverse_dynamics_statics(params, rng):
    q = rng.uniform(-np.pi, np.pi, 4)
    np.testing.assert_allclose(dyn.inverse_dynamics(q, np.zeros(4), np.zeros(4), params),
                               dyn.gravity_vector(q, params), atol=1e-14)


def test_inverse_dynamics_pure_inertia(params):
    e_knee = np.array([0, 0, 0, 1.0])
    np.testing.assert_allclose(dyn.inverse_dynamics(np.zeros(4), np.zeros(4), e_knee, params),
                               dyn.mass_matrix(np.zeros(4), params) @ e_knee, atol=1e-15)


def test_bias_matches_christoffel_form(params, rng):
    for _ in range(50):
        q, qd, _ = random_state(rng)
        np.testing.assert_allclose(dyn.bias_torque(q, qd, params),
                                   dyn.coriolis_matrix(q, qd, params) @ qd + dyn.gravity_vector(q, params),
                                   atol=1e-12)


def test_euler_lagrange_oracle(params, rng):
    for _ in range(20):
        q, qd, qdd = random_state(rng)
        ref = euler_lagrange_torque(q, qd, qdd, params)
        err = np.abs(dyn.inverse_dynamics(q, qd, qdd, params) - ref).max()
        assert err <= 1e-5 * np.abs(ref).max()


def test_forward_dynamics_gravity_compensation(params, rng):
    q = rng.uniform(-np.pi, np.pi, 4)
    np.testing.assert_allclose(dyn.forward_dynamics(q, np.zeros(4), dyn.gravity_vector(q, params), params),
                               0, atol=1e-12)


def test_forward_dynamics_decoupled_yaw_at_upright(params):
    tau = np.array([params.rotor_inertia, 0, 0, 0])
    np.testing.assert_allclose(dyn.forward_dynamics(np.zeros(4), np.zeros(4), tau, params),
                               [1, 0, 0, 0], atol=1e-12)


def test_forward_inverse_roundtrip(params, rng):
    for _ in range(200):
        q, qd, qdd = random_state(rng)
        tau = dyn.inverse_dynamics(q, qd, qdd, params)
        np.testing.assert_allclose(dyn.forward_dynamics(q, qd, tau, params), qdd, atol=1e-9)


def test_forward_dynamics_singular_without_rotor(params):
    bare = replace(params, rotor_inertia=0.0)
    with pytest.raises(dyn.SingularMassMatrixError):
        dyn.forward_dynamics(np.zeros(4), np.zeros(4), np.zeros(4), bare)
    # away from the upright pose the bare model is still invertible
    dyn.forward_dynamics([0.0, 0.7, 0.3, 1.0], np.zeros(4), np.zeros(4), bare)


def test_energies(params, rng):
    expected = params.gravity * (params.mass_upper * params.com_upper
                                 + params.mass_lower * (params.len_upper + params.com_lower))
    assert dyn.potential_energy(np.zeros(4), params) == pytest.approx(expected, rel=1e-15)
    q, qd, _ = random_state(rng)
    assert dyn.kinetic_energy(q, 2 * qd, params) == pytest.approx(4 * dyn.kinetic_energy(q, qd, params), rel=1e-14)
    assert dyn.total_energy(q, qd, params) == pytest.approx(
        dyn.kinetic_energy(q, qd, params) + dyn.potential_energy(q, params), rel=1e-15)


def test_dyn_terms_consistent(params, rng):
    q, qd, qdd = random_state(rng)
    terms = dyn.dyn_terms(q, qd, params)
    np.testing.assert_allclose(terms.m_matrix @ qdd + terms.coriolis_vec + terms.gravity_vec,
                               dyn.inverse_dynamics(q, qd, qdd, params), atol=1e-12)


def test_zero_gravity_has_no_gravity_torque(rng):
    p = RobotParams(gravity=0.0)
    q = rng.uniform(-np.pi, np.pi, 4)
    np.testing.assert_array_equal(dyn.gravity_vector(q, p), 0)
