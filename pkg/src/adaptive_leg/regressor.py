"""Linear-in-parameters form of the inverse dynamics.

The torque is a polynomial in the two CoM distances with no cross terms, so

    tau = Phi(q, qd, qdd) @ (cu**2, cu, cl**2, cl, 1)

where Phi depends only on masses, link lengths, gravity and the rotor
inertia. Folding the nominal CoM values into the columns gives the scaled
regressor ``Phi' = Phi @ diag(theta_nominal)``, for which the all-ones vector
reproduces the nominal model. A plant whose CoM distances differ by factors
``su`` and ``sl`` is reproduced exactly by ``(su**2, su, sl**2, sl, 1)``.
"""

import numpy as np

from . import _closed_form as cf

THETA_NAMES = ("a", "b", "c", "d", "e")
N_THETA = 5


def theta_nominal(params):
    cu, cl = params.com_upper, params.com_lower
    return np.array([cu * cu, cu, cl * cl, cl, 1.0])


def regressor_raw(q, qd, qdd, params):
    """The 4x5 matrix Phi. Never reads ``com_upper`` or ``com_lower``."""
    entries = cf.regressor(
        [float(v) for v in q],
        [float(v) for v in qd],
        [float(v) for v in qdd],
        params.mass_upper,
        params.mass_lower,
        params.len_upper,
        params.gravity,
        params.rotor_inertia,
    )
    return np.array(entries, dtype=float).reshape(4, N_THETA)


def regressor_scaled(q, qd, qdd, params):
    """The 4x5 matrix Phi' with ``Phi' @ ones(5) == inverse_dynamics``."""
    return regressor_raw(q, qd, qdd, params) * theta_nominal(params)


def true_theta_scales(nominal, actual):
    """Scale vector that makes the nominal regressor reproduce ``actual``.

    Only the CoM distances may differ between the two parameter sets.
    """
    for name in ("len_upper", "len_lower", "mass_upper", "mass_lower",
                 "gravity", "rotor_inertia"):
        if getattr(nominal, name) != getattr(actual, name):
            raise ValueError(
                f"{name} differs ({getattr(nominal, name)} vs {getattr(actual, name)}); "
                "only com_upper and com_lower can be expressed by theta"
            )
    su = actual.com_upper / nominal.com_upper
    sl = actual.com_lower / nominal.com_lower
    return np.array([su * su, su, sl * sl, sl, 1.0])
