from dataclasses import replace

import numpy as np
import pytest

from adaptive_leg.dynamics import inverse_dynamics
from adaptive_leg.regressor import regressor_raw, regressor_scaled, theta_nominal, true_theta_scales
from conftest import random_state


def test_raw_regressor_reproduces_inverse_dynamics(params, rng):
    for _ in range(200):
        q, qd, qdd = random_state(rng)
        np.testing.assert_allclose(regressor_raw(q, qd, qdd, params) @ theta_nominal(params),
                                   inverse_dynamics(q, qd, qdd, params), atol=1e-9)


def test_rest_at_upright_gives_zero_torque(params):
    z = np.zeros(4)
    np.testing.assert_allclose(regressor_raw(z, z, z, params) @ theta_nominal(params), 0, atol=1e-15)


def test_raw_regressor_ignores_com(params, rng):
    q, qd, qdd = random_state(rng)
    other = replace(params, com_upper=0.13, com_lower=0.31)
    np.testing.assert_array_equal(regressor_raw(q, qd, qdd, params), regressor_raw(q, qd, qdd, other))


def test_scaled_regressor_ones_and_zero(params, rng):
    q, qd, qdd = random_state(rng)
    phi = regressor_scaled(q, qd, qdd, params)
    assert phi.shape == (4, 5)
    np.testing.assert_allclose(phi @ np.ones(5), inverse_dynamics(q, qd, qdd, params), atol=1e-9)
    np.testing.assert_array_equal(phi @ np.zeros(5), 0)


@pytest.mark.parametrize("su,sl", [(1.2, 1.2), (0.8, 1.2), (1.2, 0.8), (0.8, 0.8)])
def test_cross_model_exact(params, rng, su, sl):
    actual = replace(params, com_upper=su * params.com_upper, com_lower=sl * params.com_lower)
    theta = true_theta_scales(params, actual)
    for _ in range(50):
        q, qd, qdd = random_state(rng)
        np.testing.assert_allclose(regressor_scaled(q, qd, qdd, params) @ theta,
                                   inverse_dynamics(q, qd, qdd, actual), atol=1e-9)


def test_true_theta_scales(params):
    np.testing.assert_array_equal(true_theta_scales(params, params), np.ones(5))
    actual = replace(params, com_upper=1.2 * params.com_upper)
    np.testing.assert_allclose(true_theta_scales(params, actual), [1.44, 1.2, 1, 1, 1], rtol=1e-15)
    with pytest.raises(ValueError, match="mass_upper"):
        true_theta_scales(params, replace(params, mass_upper=2.0))
