"""Finite-difference reference computations.

Everything here is built from the forward-kinematics positions alone, never
from the closed-form Jacobians or mass matrix, so it can check them.

The Euler-Lagrange oracle nests two levels of central differences. At a
1e-6 step that costs about twelve digits, so the Lagrangian is evaluated in
``np.longdouble`` (64-bit mantissa on x86).
"""

import numpy as np

from .kincore import fk, fk_com_lower, fk_com_upper

FD_STEP = 1e-6
WIDE = np.longdouble


def fd_jacobian(body, q, params, step=FD_STEP):
    """Central-difference Jacobian of a forward-kinematics point, shape (3, 4)."""
    q = np.asarray(q, dtype=float)
    cols = []
    for e in np.eye(4):
        cols.append((fk(body, q + step * e, params) - fk(body, q - step * e, params)) / (2 * step))
    return np.column_stack(cols)


def potential(q, params):
    return params.gravity * (params.mass_upper * fk_com_upper(q, params)[2]
                             + params.mass_lower * fk_com_lower(q, params)[2])


def lagrangian(q, qd, params, step=FD_STEP):
    """L = K - P with point velocities from central differences along qd."""
    q = np.asarray(q)
    qd = np.asarray(qd)
    kin = 0.5 * params.rotor_inertia * (qd @ qd)
    for mass, pos in ((params.mass_upper, fk_com_upper), (params.mass_lower, fk_com_lower)):
        vel = (pos(q + step * qd, params) - pos(q - step * qd, params)) / (2 * step)
        kin = kin + 0.5 * mass * (vel @ vel)
    return kin - potential(q, params)


def _momentum(q, qd, params, step):
    # L is quadratic in qd, so a unit central step differentiates it exactly
    out = np.empty(4, dtype=WIDE)
    for j, e in enumerate(np.eye(4, dtype=WIDE)):
        out[j] = (lagrangian(q, qd + e, params, step) - lagrangian(q, qd - e, params, step)) / 2
    return out


def euler_lagrange_torque(q, qd, qdd, params, step=FD_STEP):
    """tau = d/dt (dL/dqd) - dL/dq, by finite differences of L.

    The time derivative is taken along q(s) = q + s qd + s^2/2 qdd.
    """
    q, qd, qdd = (np.asarray(v, dtype=WIDE) for v in (q, qd, qdd))
    h = WIDE(step)
    p_plus = _momentum(q + h * qd + 0.5 * h * h * qdd, qd + h * qdd, params, step)
    p_minus = _momentum(q - h * qd + 0.5 * h * h * qdd, qd - h * qdd, params, step)
    dp_dt = (p_plus - p_minus) / (2 * h)
    dl_dq = np.empty(4, dtype=WIDE)
    for j, e in enumerate(np.eye(4, dtype=WIDE)):
        dl_dq[j] = (lagrangian(q + h * e, qd, params, step)
                    - lagrangian(q - h * e, qd, params, step)) / (2 * h)
    return (dp_dt - dl_dq).astype(float)


def potential_gradient_fd(q, params, step=FD_STEP):
    q = np.asarray(q, dtype=float)
    return np.array([(potential(q + step * e, params) - potential(q - step * e, params)) / (2 * step)
                     for e in np.eye(4)])


def mass_matrix_rate_fd(mass_matrix, q, qd, params, step=FD_STEP):
    """dM/dt along q(t) = q + t qd, by central differences."""
    q = np.asarray(q, dtype=float)
    qd = np.asarray(qd, dtype=float)
    return (mass_matrix(q + step * qd, params) - mass_matrix(q - step * qd, params)) / (2 * step)
