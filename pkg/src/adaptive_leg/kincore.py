"""Kinematics of the 4-DoF leg: a z-y-x spherical hip with zero-length links
followed by a single knee pitch joint.

Positions are point masses on the link axes. With every angle at zero the leg
points straight up the world z axis. Joint order everywhere is
``(q_z_hip, q_y_hip, q_x_hip, q_y_knee)``.
"""

from dataclasses import dataclass, fields

import numpy as np

from . import _closed_form as cf

JOINT_NAMES = ("z_hip", "y_hip", "x_hip", "y_knee")
BODIES = ("upper", "lower", "tip")


@dataclass(frozen=True)
class RobotParams:
    """Physical description of the leg.

    Lengths in metres, masses in kilograms. ``com_upper`` is measured from the
    hip and ``com_lower`` from the knee, both along the link axis.
    ``rotor_inertia`` is added to every diagonal entry of the mass matrix.
    """

    len_upper: float = 0.4
    len_lower: float = 0.4
    com_upper: float = 0.2
    com_lower: float = 0.2
    mass_upper: float = 1.0
    mass_lower: float = 1.0
    gravity: float = 9.81
    rotor_inertia: float = 1e-3

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not np.isfinite(value):
                raise ValueError(f"{f.name} must be finite, got {value!r}")
            object.__setattr__(self, f.name, float(value))
        for name in ("len_upper", "len_lower", "mass_upper", "mass_lower"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")
        if not 0 < self.com_upper <= self.len_upper:
            raise ValueError(f"com_upper must lie in (0, len_upper], got {self.com_upper}")
        if not 0 < self.com_lower <= self.len_lower:
            raise ValueError(f"com_lower must lie in (0, len_lower], got {self.com_lower}")
        if self.gravity < 0:
            raise ValueError(f"gravity must be >= 0, got {self.gravity}")
        if self.rotor_inertia < 0:
            raise ValueError(f"rotor_inertia must be >= 0, got {self.rotor_inertia}")


@dataclass(frozen=True)
class JointState:
    q: np.ndarray
    qd: np.ndarray
    qdd: np.ndarray

    def __post_init__(self):
        for name in ("q", "qd", "qdd"):
            value = np.asarray(getattr(self, name), dtype=float)
            if value.shape != (4,):
                raise ValueError(f"{name} must have shape (4,), got {value.shape}")
            if not np.all(np.isfinite(value)):
                raise ValueError(f"{name} has non-finite entries")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class DHRow:
    """One row of the nominal DH table. Kept for reference only; the
    kinematics below are written out explicitly and do not use it."""

    theta: float
    d: float
    a: float
    alpha: float


def dh_table(params):
    return (
        DHRow(0.0, 0.0, 0.0, np.pi / 2),
        DHRow(0.0, 0.0, 0.0, np.pi / 2),
        DHRow(0.0, 0.0, params.len_upper, np.pi / 2),
        DHRow(0.0, 0.0, params.len_lower, np.pi / 2),
    )


def rot_axis(axis, angle):
    """Right-handed rotation matrix about ``axis`` ('x', 'y' or 'z')."""
    c, s = np.cos(angle), np.sin(angle)
    one, zero = np.ones_like(c), np.zeros_like(c)
    if axis == "x":
        rows = [[one, zero, zero], [zero, c, -s], [zero, s, c]]
    elif axis == "y":
        rows = [[c, zero, s], [zero, one, zero], [-s, zero, c]]
    elif axis == "z":
        rows = [[c, -s, zero], [s, c, zero], [zero, zero, one]]
    else:
        raise ValueError(f"axis must be 'x', 'y' or 'z', got {axis!r}")
    return np.array(rows)


def _hip_rotation(q):
    return rot_axis("z", q[0]) @ rot_axis("y", -q[1]) @ rot_axis("x", q[2])


def _along_z(length):
    return np.array([0.0, 0.0, length])


def _shank_point(q, upper_len, offset):
    return _along_z(upper_len) + rot_axis("y", q[3]) @ _along_z(offset)


def fk_com_upper(q, params):
    q = np.asarray(q)
    return _hip_rotation(q) @ _along_z(params.com_upper)


def fk_com_lower(q, params):
    q = np.asarray(q)
    return _hip_rotation(q) @ _shank_point(q, params.len_upper, params.com_lower)


def fk_tip(q, params):
    q = np.asarray(q)
    return _hip_rotation(q) @ _shank_point(q, params.len_upper, params.len_lower)


def fk(body, q, params):
    if body == "upper":
        return fk_com_upper(q, params)
    if body == "lower":
        return fk_com_lower(q, params)
    if body == "tip":
        return fk_tip(q, params)
    raise ValueError(f"body must be one of {BODIES}, got {body!r}")


def direction_jacobians(q):
    """Jacobians of the unit thigh direction and unit shank direction.

    Every point of the leg is ``a * thigh(q) + b * shank(q)``, so these two
    3x4 matrices determine all the point Jacobians.
    """
    q = [float(v) for v in q]
    ja = np.array(cf.direction_upper(q)[3:]).reshape(3, 4)
    jb = np.array(cf.direction_lower(q)[3:]).reshape(3, 4)
    return ja, jb


def jacobian_com(body, q, params):
    """Closed-form position Jacobian d r_body / d q, shape (3, 4)."""
    ja, jb = direction_jacobians(q)
    if body == "upper":
        return params.com_upper * ja
    if body == "lower":
        return params.len_upper * ja + params.com_lower * jb
    if body == "tip":
        return params.len_upper * ja + params.len_lower * jb
    raise ValueError(f"body must be one of {BODIES}, got {body!r}")
