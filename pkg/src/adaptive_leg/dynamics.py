"""Point-mass Lagrangian dynamics of the leg.

    M(q) qdd + C(q, qd) qd + G(q) = tau

Each link is a point mass at its CoM; the only rotational inertia is the
``rotor_inertia`` term added to the diagonal of M. Without it M is singular at
the upright pose, where both masses sit on the z-hip axis.
"""

from dataclasses import dataclass
from math import sqrt

import numpy as np

from . import _closed_form as cf
from .kincore import fk_com_lower, fk_com_upper

_UPPER = [(i, j) for i in range(4) for j in range(i, 4)]
_ROWS = np.array([i for i, _ in _UPPER])
_COLS = np.array([j for _, j in _UPPER])


class SingularMassMatrixError(np.linalg.LinAlgError):
    """Raised when M(q) is not numerically positive definite."""


@dataclass(frozen=True)
class DynTerms:
    m_matrix: np.ndarray
    coriolis_vec: np.ndarray
    gravity_vec: np.ndarray


def _floats(v):
    return [float(x) for x in v]


def _sym_from_upper(entries):
    m = np.empty((4, 4))
    m[_ROWS, _COLS] = entries
    m[_COLS, _ROWS] = entries
    return m


def _inertial(params):
    return (params.mass_upper, params.mass_lower, params.len_upper,
            params.com_upper, params.com_lower)


def mass_matrix(q, params):
    return _sym_from_upper(cf.mass_matrix(_floats(q), *_inertial(params), params.rotor_inertia))


def mass_matrix_partials(q, params):
    """Array ``dm`` with ``dm[k] = dM/dq_k``."""
    flat = cf.mass_matrix_partials(_floats(q), *_inertial(params))
    dm = np.zeros((4, 4, 4))
    for k in range(3):
        dm[k + 1] = _sym_from_upper(flat[10 * k:10 * (k + 1)])
    return dm


def christoffel(q, params):
    """Christoffel symbols of the first kind, ``c[i, j, k]``.

    c_ijk = (dM_kj/dq_i + dM_ki/dq_j - dM_ij/dq_k) / 2
    """
    dm = mass_matrix_partials(q, params)
    # dm[a, b, c] = dM_bc / dq_a
    return 0.5 * (dm.transpose(0, 2, 1) + dm.transpose(2, 0, 1) - dm.transpose(1, 2, 0))


def coriolis_matrix(q, qd, params):
    """C with C[k, j] = sum_i c_ijk qd_i, so that qd^T (dM/dt - 2C) qd = 0."""
    return np.einsum("ijk,i->kj", christoffel(q, params), np.asarray(qd, dtype=float))


def gravity_vector(q, params):
    return np.array(cf.gravity(_floats(q), *_inertial(params), params.gravity))


def dyn_terms(q, qd, params):
    return DynTerms(
        mass_matrix(q, params),
        coriolis_matrix(q, qd, params) @ np.asarray(qd, dtype=float),
        gravity_vector(q, params),
    )


def inverse_dynamics(q, qd, qdd, params):
    """Joint torques tau = M qdd + C qd + G."""
    qd = np.asarray(qd, dtype=float)
    qdd = np.asarray(qdd, dtype=float)
    return (mass_matrix(q, params) @ qdd
            + coriolis_matrix(q, qd, params) @ qd
            + gravity_vector(q, params))


def bias_torque(q, qd, params):
    """C(q, qd) qd + G(q), evaluated without forming C."""
    return np.array(_bias(_floats(q), _floats(qd), params))


def _bias(q, qd, params):
    return cf.bias(q, qd, *_inertial(params), params.gravity)


def _solve_spd(m, b):
    """Solve m x = b for a 4x4 SPD ``m`` given as its upper-triangle tuple.

    Plain-float Cholesky; the integrator calls this four times per substep
    and numpy's per-call overhead dominates at this size.
    """
    a00, a01, a02, a03, a11, a12, a13, a22, a23, a33 = m
    tol = 1e-13 * max(abs(a00), abs(a11), abs(a22), abs(a33), 1e-300)
    if a00 <= tol:
        raise SingularMassMatrixError("mass matrix is singular (pivot 0)")
    l00 = sqrt(a00)
    l10 = a01 / l00
    l20 = a02 / l00
    l30 = a03 / l00
    d = a11 - l10 * l10
    if d <= tol:
        raise SingularMassMatrixError("mass matrix is singular (pivot 1)")
    l11 = sqrt(d)
    l21 = (a12 - l20 * l10) / l11
    l31 = (a13 - l30 * l10) / l11
    d = a22 - l20 * l20 - l21 * l21
    if d <= tol:
        raise SingularMassMatrixError("mass matrix is singular (pivot 2)")
    l22 = sqrt(d)
    l32 = (a23 - l30 * l20 - l31 * l21) / l22
    d = a33 - l30 * l30 - l31 * l31 - l32 * l32
    if d <= tol:
        raise SingularMassMatrixError("mass matrix is singular (pivot 3)")
    l33 = sqrt(d)
    b0, b1, b2, b3 = b
    y0 = b0 / l00
    y1 = (b1 - l10 * y0) / l11
    y2 = (b2 - l20 * y0 - l21 * y1) / l22
    y3 = (b3 - l30 * y0 - l31 * y1 - l32 * y2) / l33
    x3 = y3 / l33
    x2 = (y2 - l32 * x3) / l22
    x1 = (y1 - l21 * x2 - l31 * x3) / l11
    x0 = (y0 - l10 * x1 - l20 * x2 - l30 * x3) / l00
    return x0, x1, x2, x3


def _accel(q, qd, tau, params):
    """Forward dynamics on plain float sequences; returns a tuple."""
    m = cf.mass_matrix(q, *_inertial(params), params.rotor_inertia)
    h = _bias(q, qd, params)
    return _solve_spd(m, [t - b for t, b in zip(tau, h)])


def forward_dynamics(q, qd, tau, params):
    """Joint accelerations from M qdd = tau - C qd - G.

    Raises SingularMassMatrixError if M is not positive definite, which can
    only happen with ``rotor_inertia == 0``.
    """
    return np.array(_accel(_floats(q), _floats(qd), _floats(tau), params))


def potential_energy(q, params):
    return params.gravity * (params.mass_upper * fk_com_upper(q, params)[2]
                             + params.mass_lower * fk_com_lower(q, params)[2])


def kinetic_energy(q, qd, params):
    qd = np.asarray(qd, dtype=float)
    return 0.5 * qd @ mass_matrix(q, params) @ qd


def total_energy(q, qd, params):
    return kinetic_energy(q, qd, params) + potential_energy(q, params)
