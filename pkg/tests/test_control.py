import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from adaptive_leg.control import (ControllerSetup, ControlLawMode, Gains, LoopState, PiecewiseTrajectory,
                                  TrajectoryPoint, computed_torque, control_tick, excitation_waypoints,
                                  linear_trajectory, quintic_trajectory)
from adaptive_leg.dynamics import gravity_vector, inverse_dynamics, mass_matrix
from adaptive_leg.estimator import rls_init
from adaptive_leg.kincore import JointState
from conftest import random_state

Q0 = np.array([0.1, -0.2, 0.3, 0.4])
Q1 = np.array([-0.5, 0.6, 0.2, 1.4])


def test_quintic_boundaries():
    for t, q in ((0.0, Q0), (2.0, Q1)):
        p = quintic_trajectory(Q0, Q1, 2.0, t)
        np.testing.assert_array_equal(p.q_ref, q)
        np.testing.assert_array_equal(p.qd_ref, 0)
        np.testing.assert_array_equal(p.qdd_ref, 0)


def test_quintic_midpoint():
    np.testing.assert_allclose(quintic_trajectory(Q0, Q1, 2.0, 1.0).q_ref, (Q0 + Q1) / 2, atol=1e-15)


@given(st.floats(0.01, 1.99))
def test_quintic_derivatives(t):
    h = 1e-6
    p = quintic_trajectory(Q0, Q1, 2.0, t)
    plus, minus = quintic_trajectory(Q0, Q1, 2.0, t + h), quintic_trajectory(Q0, Q1, 2.0, t - h)
    np.testing.assert_allclose(p.qd_ref, (plus.q_ref - minus.q_ref) / (2 * h), atol=1e-7)
    np.testing.assert_allclose(p.qdd_ref, (plus.qd_ref - minus.qd_ref) / (2 * h), atol=1e-6)


def test_quintic_holds_outside_range():
    np.testing.assert_array_equal(quintic_trajectory(Q0, Q1, 2.0, -1).q_ref, Q0)
    np.testing.assert_array_equal(quintic_trajectory(Q0, Q1, 2.0, 5).q_ref, Q1)
    with pytest.raises(ValueError):
        quintic_trajectory(Q0, Q1, 0.0, 0.5)


def test_linear_trajectory():
    p = linear_trajectory(Q0, Q1, 2.0, 0.5)
    np.testing.assert_allclose(p.q_ref, Q0 + 0.25 * (Q1 - Q0))
    np.testing.assert_allclose(p.qd_ref, (Q1 - Q0) / 2)
    np.testing.assert_array_equal(p.qdd_ref, 0)


def test_piecewise_passes_knots():
    knots = [Q0, Q1, Q0 + 1]
    traj = PiecewiseTrajectory(knots, 1.5)
    assert traj.duration == 3.0
    np.testing.assert_allclose(traj(1.5).q_ref, Q1)
    np.testing.assert_allclose(traj(3.0).q_ref, Q0 + 1)
    np.testing.assert_allclose(traj(10.0).q_ref, Q0 + 1)
    with pytest.raises(ValueError):
        PiecewiseTrajectory([Q0], 1.0)
    with pytest.raises(ValueError):
        PiecewiseTrajectory(knots, 1.0, "cubic")


def test_excitation_waypoints_seeded():
    a = excitation_waypoints(3, 4, 0.8, Q0)
    b = excitation_waypoints(3, 4, 0.8, Q0)
    assert len(a) == 4
    for x, y in zip(a, b):
        np.testing.assert_array_equal(x, y)
        assert np.all(np.abs(x - Q0) <= 0.8)


def test_mode_parse():
    assert ControlLawMode.parse("paper-literal") is ControlLawMode.PAPER_LITERAL
    assert ControlLawMode.parse(ControlLawMode.STANDARD) is ControlLawMode.STANDARD
    with pytest.raises(ValueError):
        ControlLawMode.parse("fancy")


def test_gains_validation():
    g = Gains.diagonal([1, 2, 3, 4], 5)
    np.testing.assert_array_equal(np.diag(g.kp), [1, 2, 3, 4])
    with pytest.raises(ValueError):
        Gains(np.ones((4, 4)), np.eye(4))
    with pytest.raises(ValueError):
        Gains.diagonal(-1.0, 1.0)


def test_zero_error_collapse(params, rng):
    gains = Gains.diagonal()
    for _ in range(20):
        q, qd, qdd = random_state(rng)
        meas = JointState(q, qd, np.zeros(4))
        ref = TrajectoryPoint(q, qd, qdd)
        expected = inverse_dynamics(q, qd, qdd, params)
        for mode in ControlLawMode:
            np.testing.assert_allclose(computed_torque(meas, ref, np.ones(5), params, gains, mode),
                                       expected, atol=1e-9)


def test_zero_gains_give_open_loop_inverse_dynamics(params, rng):
    q, qd, _ = random_state(rng)
    ref_q, ref_qd, ref_qdd = random_state(rng)
    meas = JointState(q, qd, np.zeros(4))
    ref = TrajectoryPoint(ref_q, ref_qd, ref_qdd)
    expected = inverse_dynamics(q, qd, ref_qdd, params)
    for mode in ControlLawMode:
        np.testing.assert_allclose(computed_torque(meas, ref, np.ones(5), params, Gains.diagonal(0, 0), mode),
                                   expected, atol=1e-9)


def test_standard_mode_linearisation(params, rng):
    target = np.array([0.2, 0.6, -0.1, 1.2])
    gains = Gains.diagonal(100.0, 20.0)
    e = 1e-6 * rng.normal(size=4)
    meas = JointState(target - e, np.zeros(4), np.zeros(4))
    ref = TrajectoryPoint(target, np.zeros(4), np.zeros(4))
    tau = computed_torque(meas, ref, np.ones(5), params, gains)
    predicted = mass_matrix(target, params) @ gains.kp @ e
    np.testing.assert_allclose(tau - gravity_vector(target - e, params), predicted, rtol=1e-4)


def _loop(params, trajectory):
    return LoopState(ControllerSetup(params, Gains.diagonal(), ControlLawMode.STANDARD, trajectory), rls_init())


def test_control_tick_without_adaptation_keeps_theta(params, rng):
    state = _loop(params, PiecewiseTrajectory([Q0, Q1], 1.0))
    for k in range(5):
        q, qd, qdd = random_state(rng)
        tau, state = control_tick(0.1 * k, state, JointState(q, qd, qdd), adaptation_on=False)
        np.testing.assert_array_equal(state.rls.theta_hat, np.ones(5))
        np.testing.assert_array_equal(state.last_tau, tau)


def test_control_tick_updates_from_second_tick(params, rng):
    state = _loop(params, PiecewiseTrajectory([Q0, Q1], 1.0))
    q, qd, qdd = random_state(rng)
    _, state = control_tick(0.0, state, JointState(q, qd, qdd))
    assert state.rls.tick == 0
    _, state = control_tick(0.01, state, JointState(q, qd, qdd))
    assert state.rls.tick == 1


def test_control_tick_freezes_on_singular_update(params):
    state = _loop(params, PiecewiseTrajectory([Q0, Q1], 1.0))
    state = LoopState(state.setup, state.rls, last_tau=np.zeros(4))
    huge = JointState(Q0, 1e6 * np.ones(4), np.zeros(4))
    _, new = control_tick(0.0, state, huge)
    assert new.frozen
    np.testing.assert_array_equal(new.rls.theta_hat, state.rls.theta_hat)
