"""Ground-truth plant integration and closed-loop experiments.

The plant is the same point-mass model as the controller's, evaluated with
``true_params`` and integrated by fixed-step RK4. Torque from each control tick
is held constant over all plant substeps until the next tick.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .control import (INTERPOLATORS, ControllerSetup, ControlLawMode, Gains, LoopState,
                      PiecewiseTrajectory, control_tick)
from .dynamics import _accel
from .estimator import RlsConfig, rls_init
from .kincore import JointState, RobotParams
from .regressor import true_theta_scales

log = logging.getLogger(__name__)

ACCEL_SOURCES = ("plant_exact", "finite_difference")

# knee bent, thigh tilted: away from the upright pose where hip spin has only rotor inertia
DEFAULT_Q_START = np.array([0.0, 0.5, 0.0, 1.6])
DEFAULT_Q_END = np.array([0.15, 0.65, -0.15, 1.75])


class InstabilityError(RuntimeError):
    """The simulated state became non-finite."""

    def __init__(self, message, records=None):
        super().__init__(message)
        self.records = records or []


def _vec4(value, name):
    v = np.asarray(value, dtype=float)
    if v.shape != (4,) or not np.all(np.isfinite(v)):
        raise ValueError(f"{name} must be 4 finite values")
    return v


@dataclass(frozen=True)
class ExperimentConfig:
    nominal_params: RobotParams = field(default_factory=RobotParams)
    true_params: Optional[RobotParams] = None
    gains: Gains = field(default_factory=Gains.diagonal)
    mode: ControlLawMode = ControlLawMode.STANDARD
    rls: RlsConfig = field(default_factory=RlsConfig)
    adaptation_on: bool = True
    q_start: np.ndarray = field(default_factory=lambda: DEFAULT_Q_START.copy())
    q_end: np.ndarray = field(default_factory=lambda: DEFAULT_Q_END.copy())
    waypoints: tuple = ()
    interpolation: str = "quintic"
    duration: float = 2.0
    control_period: float = 0.01
    plant_substep: float = 1e-4
    accel_source: str = "plant_exact"
    noise_std: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.true_params is None:
            object.__setattr__(self, "true_params", self.nominal_params)
        object.__setattr__(self, "mode", ControlLawMode.parse(self.mode))
        object.__setattr__(self, "q_start", _vec4(self.q_start, "q_start"))
        object.__setattr__(self, "q_end", _vec4(self.q_end, "q_end"))
        object.__setattr__(self, "waypoints",
                           tuple(_vec4(w, f"waypoints[{i}]") for i, w in enumerate(self.waypoints)))
        if not self.duration > 0:
            raise ValueError(f"duration must be > 0, got {self.duration}")
        if not self.control_period > 0:
            raise ValueError(f"control_period must be > 0, got {self.control_period}")
        if not self.plant_substep > 0:
            raise ValueError(f"plant_substep must be > 0, got {self.plant_substep}")
        n = round(self.control_period / self.plant_substep)
        if n < 1 or abs(n * self.plant_substep - self.control_period) > 1e-9 * self.control_period:
            raise ValueError(
                f"plant_substep {self.plant_substep} does not divide control_period {self.control_period}"
            )
        if self.interpolation not in INTERPOLATORS:
            raise ValueError(f"interpolation must be one of {sorted(INTERPOLATORS)}, got {self.interpolation!r}")
        if self.accel_source not in ACCEL_SOURCES:
            raise ValueError(f"accel_source must be one of {ACCEL_SOURCES}, got {self.accel_source!r}")
        if not self.noise_std >= 0:
            raise ValueError(f"noise_std must be >= 0, got {self.noise_std}")

    @property
    def substeps(self):
        return round(self.control_period / self.plant_substep)

    @property
    def n_ticks(self):
        return math.floor(self.duration / self.control_period + 1e-9) + 1

    def trajectory(self):
        knots = [self.q_start, *self.waypoints, self.q_end]
        return PiecewiseTrajectory(knots, self.duration / (len(knots) - 1), self.interpolation)

    def theta_star(self):
        """Ground-truth scale vector, or None if the mismatch is not CoM-only."""
        try:
            return true_theta_scales(self.nominal_params, self.true_params)
        except ValueError:
            return None


@dataclass(frozen=True)
class LogRecord:
    t: float
    q: np.ndarray
    qd: np.ndarray
    qdd: np.ndarray
    q_ref: np.ndarray
    qd_ref: np.ndarray
    qdd_ref: np.ndarray
    tau: np.ndarray
    theta_hat: np.ndarray
    theta_error_sq: float
    estimator_frozen: bool


def _rk4(q, qd, tau, dt, params):
    """RK4 on plain float lists. The state is (q, qd)."""
    h2 = 0.5 * dt
    a1 = _accel(q, qd, tau, params)
    v1 = qd
    q2 = [x + h2 * v for x, v in zip(q, v1)]
    v2 = [v + h2 * a for v, a in zip(qd, a1)]
    a2 = _accel(q2, v2, tau, params)
    q3 = [x + h2 * v for x, v in zip(q, v2)]
    v3 = [v + h2 * a for v, a in zip(qd, a2)]
    a3 = _accel(q3, v3, tau, params)
    q4 = [x + dt * v for x, v in zip(q, v3)]
    v4 = [v + dt * a for v, a in zip(qd, a3)]
    a4 = _accel(q4, v4, tau, params)
    s = dt / 6.0
    q_new = [x + s * (k1 + 2 * k2 + 2 * k3 + k4) for x, k1, k2, k3, k4 in zip(q, v1, v2, v3, v4)]
    qd_new = [v + s * (k1 + 2 * k2 + 2 * k3 + k4) for v, k1, k2, k3, k4 in zip(qd, a1, a2, a3, a4)]
    return q_new, qd_new


def rk4_step(q, qd, tau, dt, params):
    """One classical RK4 step of the plant with ``tau`` held constant."""
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    q_new, qd_new = _rk4([float(v) for v in q], [float(v) for v in qd],
                         [float(v) for v in tau], dt, params)
    return np.array(q_new), np.array(qd_new)


def simulate_open_loop(q, qd, tau, dt, steps, params):
    """Integrate ``steps`` RK4 steps with constant torque; returns the final state."""
    q, qd, tau = ([float(v) for v in x] for x in (q, qd, tau))
    for _ in range(steps):
        q, qd = _rk4(q, qd, tau, dt, params)
    return np.array(q), np.array(qd)


def _all_finite(values):
    return all(math.isfinite(v) for v in values)


def run_experiment(config, on_substep=None):
    """Simulate the closed loop and return one LogRecord per control tick.

    ``on_substep(t, tau)`` is called before every plant substep with the
    torque being applied. Raises InstabilityError (carrying the records
    produced so far) if the plant state becomes non-finite.
    """
    rng = np.random.default_rng(config.seed)
    true_params = config.true_params
    theta_star = config.theta_star()
    setup = ControllerSetup(config.nominal_params, config.gains, config.mode, config.trajectory())
    state = LoopState(setup, rls_init(config.rls))

    q = [float(v) for v in config.q_start]
    qd = [0.0] * 4
    qdd_obs = np.zeros(4)
    qd_obs_prev = None
    records = []
    period = config.control_period
    dt = config.plant_substep

    for k in range(config.n_ticks):
        t = k * period
        q_obs = np.array(q)
        qd_obs = np.array(qd)
        if config.noise_std > 0:
            q_obs = q_obs + rng.normal(0.0, config.noise_std, 4)
            qd_obs = qd_obs + rng.normal(0.0, config.noise_std, 4)
        if config.accel_source == "finite_difference" and k > 0:
            qdd_obs = (qd_obs - qd_obs_prev) / period
        qd_obs_prev = qd_obs

        obs = JointState(q_obs, qd_obs, qdd_obs)
        tau, state = control_tick(t, state, obs, config.adaptation_on)
        if not np.all(np.isfinite(tau)):
            raise InstabilityError(f"non-finite torque at t={t:.4f}", records)
        ref = setup.trajectory(t)
        theta = state.rls.theta_hat
        err_sq = float(np.sum((theta - theta_star) ** 2)) if theta_star is not None else math.nan
        records.append(LogRecord(t, obs.q, obs.qd, obs.qdd, ref.q_ref, ref.qd_ref, ref.qdd_ref,
                                 tau, theta.copy(), err_sq, state.frozen))
        if k == config.n_ticks - 1:
            break

        tau_f = [float(v) for v in tau]
        for j in range(config.substeps):
            if on_substep is not None:
                on_substep(t + j * dt, tau)
            q, qd = _rk4(q, qd, tau_f, dt, true_params)
        if not (_all_finite(q) and _all_finite(qd)):
            raise InstabilityError(f"plant state became non-finite before t={t + period:.4f}", records)
        if config.accel_source == "plant_exact":
            qdd_obs = np.array(_accel(q, qd, tau_f, true_params))

    log.debug("experiment finished: %d ticks", len(records))
    return records


def tracking_errors(records):
    """Per-tick max-abs joint tracking error."""
    return np.array([np.max(np.abs(r.q - r.q_ref)) for r in records])
