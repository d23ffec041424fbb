"""Joint-space reference trajectories and the adaptive computed-torque law."""

from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .estimator import EstimatorSingularError, RlsState, rls_update
from .kincore import RobotParams
from .regressor import regressor_scaled


class ControlLawMode(str, Enum):
    """Where the PD correction enters the regressor.

    ``STANDARD`` adds ``Kp e + Kd de`` to the reference acceleration.
    ``PAPER_LITERAL`` adds ``Kp e`` to the measured position and ``Kd de`` to
    the measured velocity, keeping the reference acceleration; with this
    reading the gains act as dimensionless error weights.
    """

    STANDARD = "standard"
    PAPER_LITERAL = "paper_literal"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        return cls(str(value).strip().lower().replace("-", "_"))


@dataclass(frozen=True)
class Gains:
    kp: np.ndarray
    kd: np.ndarray

    def __post_init__(self):
        for name in ("kp", "kd"):
            m = np.array(getattr(self, name), dtype=float)
            if m.shape != (4, 4):
                raise ValueError(f"{name} must be 4x4, got shape {m.shape}")
            if np.any(m - np.diag(np.diag(m))):
                raise ValueError(f"{name} must be diagonal")
            if np.any(np.diag(m) < 0) or not np.all(np.isfinite(m)):
                raise ValueError(f"{name} diagonal must be finite and >= 0")
            object.__setattr__(self, name, m)

    @classmethod
    def diagonal(cls, kp=100.0, kd=20.0):
        """Gains from scalars or 4-vectors of diagonal entries."""
        return cls(np.diag(np.broadcast_to(np.asarray(kp, float), (4,))),
                   np.diag(np.broadcast_to(np.asarray(kd, float), (4,))))


@dataclass(frozen=True)
class TrajectoryPoint:
    q_ref: np.ndarray
    qd_ref: np.ndarray
    qdd_ref: np.ndarray


def _hold(q):
    return TrajectoryPoint(np.array(q, dtype=float), np.zeros(4), np.zeros(4))


def quintic_trajectory(q_start, q_end, duration, t):
    """Rest-to-rest quintic from ``q_start`` to ``q_end``.

    Times outside ``[0, duration]`` hold the nearer endpoint.
    """
    if duration <= 0:
        raise ValueError(f"duration must be > 0, got {duration}")
    q_start = np.asarray(q_start, dtype=float)
    q_end = np.asarray(q_end, dtype=float)
    if t <= 0:
        return _hold(q_start)
    if t >= duration:
        return _hold(q_end)
    s = t / duration
    delta = q_end - q_start
    pos = s**3 * (10 - 15 * s + 6 * s**2)
    vel = 30 * s**2 * (1 - s) ** 2 / duration
    acc = 60 * s * (1 - 3 * s + 2 * s**2) / duration**2
    return TrajectoryPoint(q_start + pos * delta, vel * delta, acc * delta)


def linear_trajectory(q_start, q_end, duration, t):
    """Constant-velocity interpolation. Velocity jumps at both ends."""
    if duration <= 0:
        raise ValueError(f"duration must be > 0, got {duration}")
    q_start = np.asarray(q_start, dtype=float)
    q_end = np.asarray(q_end, dtype=float)
    if t < 0:
        return _hold(q_start)
    if t > duration:
        return _hold(q_end)
    delta = q_end - q_start
    return TrajectoryPoint(q_start + (t / duration) * delta, delta / duration, np.zeros(4))


INTERPOLATORS = {"quintic": quintic_trajectory, "linear": linear_trajectory}


class PiecewiseTrajectory:
    """Consecutive rest-to-rest segments through a list of joint-space knots,
    each lasting ``segment_time``. Holds the last knot afterwards."""

    def __init__(self, knots, segment_time, interpolation="quintic"):
        self.knots = [np.asarray(k, dtype=float) for k in knots]
        if len(self.knots) < 2:
            raise ValueError("need at least two knots")
        if segment_time <= 0:
            raise ValueError(f"segment_time must be > 0, got {segment_time}")
        if interpolation not in INTERPOLATORS:
            raise ValueError(f"interpolation must be one of {sorted(INTERPOLATORS)}")
        self.segment_time = float(segment_time)
        self.interpolate = INTERPOLATORS[interpolation]

    @property
    def duration(self):
        return self.segment_time * (len(self.knots) - 1)

    def __call__(self, t):
        idx = int(np.clip(np.floor(t / self.segment_time), 0, len(self.knots) - 2))
        local = t - idx * self.segment_time
        return self.interpolate(self.knots[idx], self.knots[idx + 1], self.segment_time, local)


def excitation_waypoints(seed, count=4, amplitude=0.8, center=None):
    """Random joint-space waypoints, uniform within ``amplitude`` of ``center``."""
    rng = np.random.default_rng(seed)
    center = np.zeros(4) if center is None else np.asarray(center, dtype=float)
    return [center + rng.uniform(-amplitude, amplitude, size=4) for _ in range(count)]


def computed_torque(meas, ref, theta_hat, params, gains, mode=ControlLawMode.STANDARD):
    """Computed-torque law on the scaled regressor evaluated with ``params``."""
    e = ref.q_ref - meas.q
    ed = ref.qd_ref - meas.qd
    if ControlLawMode(mode) is ControlLawMode.STANDARD:
        phi = regressor_scaled(meas.q, meas.qd, ref.qdd_ref + gains.kp @ e + gains.kd @ ed, params)
    else:
        phi = regressor_scaled(meas.q + gains.kp @ e, meas.qd + gains.kd @ ed, ref.qdd_ref, params)
    return phi @ np.asarray(theta_hat, dtype=float)


@dataclass(frozen=True)
class ControllerSetup:
    params: RobotParams
    gains: Gains
    mode: ControlLawMode
    trajectory: Callable[[float], TrajectoryPoint]


@dataclass(frozen=True)
class LoopState:
    """Controller memory carried from one tick to the next.

    ``last_tau`` is the torque applied over the previous control period; it
    is paired with the current observation for the estimator update.
    ``frozen`` flags that the estimator update of the latest tick failed.
    """

    setup: ControllerSetup
    rls: RlsState
    last_tau: Optional[np.ndarray] = None
    frozen: bool = False


def control_tick(clock, loop_state, observation, adaptation_on=True):
    """Run one controller tick. Returns ``(tau, new_loop_state)``.

    The returned torque is meant to be held until the next tick.
    """
    setup = loop_state.setup
    rls = loop_state.rls
    frozen = False
    if adaptation_on and loop_state.last_tau is not None:
        phi = regressor_scaled(observation.q, observation.qd, observation.qdd, setup.params)
        try:
            rls = rls_update(rls, phi, loop_state.last_tau)
        except EstimatorSingularError:
            frozen = True
    ref = setup.trajectory(clock)
    tau = computed_torque(observation, ref, rls.theta_hat, setup.params, setup.gains, setup.mode)
    return tau, replace(loop_state, rls=rls, last_tau=tau, frozen=frozen)

