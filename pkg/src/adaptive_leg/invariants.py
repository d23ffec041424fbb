"""Numerical invariant checks over the whole model.

``run_invariant_suite`` evaluates every property on random states and
reports what it measured against each bound. A failed property is a report
entry, never an exception.
"""

from dataclasses import dataclass, replace

import numpy as np

from . import dynamics as dyn
from .control import (ControlLawMode, Gains, TrajectoryPoint, computed_torque,
                      quintic_trajectory)
from .estimator import RlsConfig, rls_batch_oracle, rls_init, rls_update
from .kincore import BODIES, JointState, fk_com_lower, fk_com_upper, fk_tip, jacobian_com, rot_axis
from .oracles import euler_lagrange_torque, fd_jacobian
from .regressor import regressor_raw, regressor_scaled, theta_nominal, true_theta_scales
from .simrunner import ExperimentConfig, run_experiment, simulate_open_loop


@dataclass(frozen=True)
class CheckResult:
    name: str
    module: str
    passed: bool
    measured: float
    bound: float
    detail: str = ""
    at_least: bool = False

    @property
    def relation(self):
        return ">=" if self.at_least else "<="


@dataclass(frozen=True)
class SuiteReport:
    results: tuple

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def failed(self):
        return [r for r in self.results if not r.passed]

    def format_table(self):
        width = max(len(r.name) for r in self.results)
        lines = [f"{'check':<{width}}  {'module':<9}  {'measured':>12}     {'bound':>12}  result"]
        for r in self.results:
            line = (f"{r.name:<{width}}  {r.module:<9}  {r.measured:>12.3e}  {r.relation} {r.bound:>12.3e}  "
                    f"{'PASS' if r.passed else 'FAIL'}")
            if r.detail:
                line += f"  ({r.detail})"
            lines.append(line)
        n_fail = len(self.failed())
        lines.append(f"{len(self.results) - n_fail}/{len(self.results)} checks passed")
        return "\n".join(lines)


def random_state(rng):
    return (rng.uniform(-np.pi, np.pi, 4), rng.uniform(-2.0, 2.0, 4), rng.uniform(-5.0, 5.0, 4))


def _le(measured, bound):
    return bool(np.isfinite(measured) and measured <= bound)


def _ge(measured, bound):
    return bool(np.isfinite(measured) and measured >= bound)


# -- kincore ---------------------------------------------------------------

def check_rotation_orthonormality(params, rng, n=1000):
    worst = 0.0
    for axis in "xyz":
        for angle in rng.uniform(-4 * np.pi, 4 * np.pi, n):
            r = rot_axis(axis, angle)
            worst = max(worst, np.abs(r.T @ r - np.eye(3)).max(), abs(np.linalg.det(r) - 1))
    return worst, 1e-12, ""


def check_length_preservation(params, rng, n=1000):
    worst = max(abs(np.linalg.norm(fk_com_upper(rng.uniform(-np.pi, np.pi, 4), params))
                    - params.com_upper) for _ in range(n))
    return worst, 1e-12, ""


def check_jacobian_fd(params, rng, n=100):
    worst = 0.0
    for _ in range(n):
        q = rng.uniform(-np.pi, np.pi, 4)
        for body in BODIES:
            worst = max(worst, np.abs(jacobian_com(body, q, params) - fd_jacobian(body, q, params)).max())
    return worst, 1e-6, "central differences, step 1e-6"


def check_lower_tip_consistency(params, rng, n=100):
    stretched = replace(params, com_lower=params.len_lower)
    worst = 0.0
    for _ in range(n):
        q = rng.uniform(-np.pi, np.pi, 4)
        worst = max(worst, np.abs(fk_com_lower(q, stretched) - fk_tip(q, params)).max())
    return worst, 0.0, "exact equality"


# -- dynamics --------------------------------------------------------------

def check_mass_symmetry(params, rng, n=1000):
    worst = 0.0
    for _ in range(n):
        m = dyn.mass_matrix(rng.uniform(-np.pi, np.pi, 4), params)
        worst = max(worst, np.abs(m - m.T).max())
    return worst, 1e-12, ""


def check_mass_positive_definite(params, rng, n=1000):
    floor = max(params.rotor_inertia - 1e-12, 1e-12)
    upright = np.linalg.eigvalsh(dyn.mass_matrix(np.zeros(4), params))[0]
    lowest = min(np.linalg.eigvalsh(dyn.mass_matrix(rng.uniform(-np.pi, np.pi, 4), params))[0]
                 for _ in range(n))
    lowest = min(lowest, upright)
    return lowest, floor, f"upright configuration {upright:.3e}", True


def mass_rate_fd(q, qd, params, step=1e-4):
    """dM/dt along q + t qd, fourth-order central differences."""
    def m(s):
        return dyn.mass_matrix(q + s * qd, params)
    return (-m(2 * step) + 8 * m(step) - 8 * m(-step) + m(-2 * step)) / (12 * step)


def check_skew_symmetry(params, rng, n=100):
    worst = 0.0
    for _ in range(n):
        q, qd, _ = random_state(rng)
        worst = max(worst, abs(qd @ (mass_rate_fd(q, qd, params)
                                     - 2 * dyn.coriolis_matrix(q, qd, params)) @ qd))
    return worst, 1e-9, "dM/dt by finite differences"


def check_euler_lagrange(params, rng, n=100):
    worst = 0.0
    for _ in range(n):
        q, qd, qdd = random_state(rng)
        ref = euler_lagrange_torque(q, qd, qdd, params)
        err = np.abs(dyn.inverse_dynamics(q, qd, qdd, params) - ref).max()
        worst = max(worst, err / max(np.abs(ref).max(), 1e-12))
    return worst, 1e-5, "relative to finite-difference Lagrangian"


def check_energy_conservation(params, rng, seconds=10.0, dt=1e-4):
    # resample until |E0| is not near zero so the relative drift is meaningful
    while True:
        q = rng.uniform(-np.pi, np.pi, 4)
        qd = rng.uniform(-1.0, 1.0, 4)
        e0 = dyn.total_energy(q, qd, params)
        if abs(e0) > 0.1:
            break
    steps = int(round(seconds / dt))
    worst = 0.0
    chunk = steps // 10
    for _ in range(10):
        q, qd = simulate_open_loop(q, qd, np.zeros(4), dt, chunk, params)
        worst = max(worst, abs(dyn.total_energy(q, qd, params) - e0) / abs(e0))
    return worst, 1e-6, f"RK4 dt={dt:g}, {seconds:g} s free fall"


def check_roundtrip(params, rng, n=1000):
    worst = 0.0
    for _ in range(n):
        q, qd, qdd = random_state(rng)
        tau = dyn.inverse_dynamics(q, qd, qdd, params)
        worst = max(worst, np.abs(dyn.forward_dynamics(q, qd, tau, params) - qdd).max())
    return worst, 1e-9, ""


# -- regressor -------------------------------------------------------------

def check_reconstruction(params, rng, n=1000, regressor=regressor_scaled):
    worst = 0.0
    for _ in range(n):
        q, qd, qdd = random_state(rng)
        w = dyn.inverse_dynamics(q, qd, qdd, params)
        worst = max(worst, np.abs(regressor(q, qd, qdd, params) @ np.ones(5) - w).max())
    return worst, 1e-9, ""


def check_parameter_independence(params, rng, n=100):
    worst = 0.0
    for _ in range(n):
        q, qd, qdd = random_state(rng)
        other = replace(params,
                        com_upper=params.com_upper * rng.uniform(0.5, 1.0),
                        com_lower=params.com_lower * rng.uniform(0.5, 1.0))
        worst = max(worst, np.abs(regressor_raw(q, qd, qdd, params)
                                  - regressor_raw(q, qd, qdd, other)).max())
    return worst, 1e-12, ""


def check_linearity(params, rng, n=100, regressor=regressor_scaled):
    worst = 0.0
    for _ in range(n):
        phi = regressor(*random_state(rng), params)
        t1, t2 = rng.normal(size=5), rng.normal(size=5)
        a, b = rng.normal(size=2)
        lhs = phi @ (a * t1 + b * t2)
        rhs = a * (phi @ t1) + b * (phi @ t2)
        scale = np.abs(phi).max() * (np.abs(a * t1).max() + np.abs(b * t2).max()) + 1.0
        worst = max(worst, np.abs(lhs - rhs).max() / scale)
    return worst, 1e-14, "relative to magnitude"


def check_cross_model(params, rng, n=200, regressor=regressor_scaled):
    worst = 0.0
    for _ in range(n):
        su, sl = rng.choice([0.8, 1.2], size=2)
        actual = replace(params,
                         com_upper=min(params.com_upper * su, params.len_upper),
                         com_lower=min(params.com_lower * sl, params.len_lower))
        theta_star = true_theta_scales(params, actual)
        q, qd, qdd = random_state(rng)
        w_actual = dyn.inverse_dynamics(q, qd, qdd, actual)
        worst = max(worst, np.abs(regressor(q, qd, qdd, params) @ theta_star - w_actual).max())
    return worst, 1e-9, "+/-20% CoM perturbations"


# -- estimator -------------------------------------------------------------

def _synthetic_samples(rng, n, theta_star):
    samples = []
    for _ in range(n):
        a = rng.normal(size=(4, 5))
        samples.append((a, a @ theta_star))
    return samples


def check_rls_batch(params, rng, n=500):
    config = RlsConfig()
    theta_star = rng.uniform(0.5, 1.5, 5)
    samples = [(a, y + 0.1 * rng.normal(size=4)) for a, y in _synthetic_samples(rng, n, theta_star)]
    state = rls_init(config)
    for a, y in samples:
        state = rls_update(state, a, y)
    return np.abs(state.theta_hat - rls_batch_oracle(samples, config)).max(), 1e-8, f"{n} samples"


def check_covariance_spd(params, rng, n=10_000):
    state = rls_init()
    asym = 0.0
    lowest = np.inf
    for a, y in _synthetic_samples(rng, n, np.ones(5)):
        state = rls_update(state, a, y)
        asym = max(asym, np.abs(state.cov - state.cov.T).max())
        lowest = min(lowest, np.linalg.eigvalsh(state.cov)[0])
    passed_eig = lowest > 0
    return (asym if passed_eig else np.inf), 1e-9, f"min eigenvalue {lowest:.3e}"


def check_covariance_monotone(params, rng, n=500):
    state = rls_init()
    probes = rng.normal(size=(10, 5))
    prev = np.einsum("ij,jk,ik->i", probes, state.cov, probes)
    worst = -np.inf
    for a, y in _synthetic_samples(rng, n, np.ones(5)):
        state = rls_update(state, a, y)
        cur = np.einsum("ij,jk,ik->i", probes, state.cov, probes)
        worst = max(worst, (cur - prev).max())
        prev = cur
    return worst, 1e-12, "largest increase of x^T P x"


def check_noise_free_convergence(params, rng, ticks=500):
    theta_star = rng.uniform(0.5, 1.5, 5)
    state = rls_init()
    for a, y in _synthetic_samples(rng, ticks, theta_star):
        state = rls_update(state, a, y)
    return np.abs(state.theta_hat - theta_star).max(), 1e-6, f"after {ticks} ticks"


# -- control ---------------------------------------------------------------

def check_zero_error_collapse(params, rng, n=100):
    gains = Gains.diagonal()
    worst = 0.0
    for _ in range(n):
        q, qd, qdd = random_state(rng)
        meas = JointState(q, qd, np.zeros(4))
        ref = TrajectoryPoint(q, qd, qdd)
        theta = rng.uniform(0.5, 1.5, 5)
        a = computed_torque(meas, ref, theta, params, gains, ControlLawMode.STANDARD)
        b = computed_torque(meas, ref, theta, params, gains, ControlLawMode.PAPER_LITERAL)
        worst = max(worst, np.abs(a - b).max())
    return worst, 1e-12, ""


def check_zoh(params, rng):
    config = ExperimentConfig(nominal_params=params, duration=0.2, plant_substep=1e-3)
    applied = []
    run_experiment(config, on_substep=lambda t, tau: applied.append((t, tau.copy())))
    worst = 0.0
    breaks_off_grid = 0
    period = config.control_period
    for (t0, a), (t1, b) in zip(applied, applied[1:]):
        jump = np.abs(a - b).max()
        on_grid = abs(t1 / period - round(t1 / period)) < 1e-9
        if not on_grid:
            worst = max(worst, jump)
            breaks_off_grid += jump > 0
    return worst, 0.0, f"{len(applied)} substeps, {breaks_off_grid} off-grid changes"


def check_trajectory_smoothness(params, rng, n=200):
    q0, q1 = rng.uniform(-1, 1, 4), rng.uniform(-1, 1, 4)
    duration = 2.0
    h = 1e-6
    worst = 0.0
    for t in rng.uniform(0.01, duration - 0.01, n):
        p = quintic_trajectory(q0, q1, duration, t)
        plus = quintic_trajectory(q0, q1, duration, t + h)
        minus = quintic_trajectory(q0, q1, duration, t - h)
        for deriv, fd in ((p.qd_ref, (plus.q_ref - minus.q_ref) / (2 * h)),
                          (p.qdd_ref, (plus.qd_ref - minus.qd_ref) / (2 * h))):
            worst = max(worst, np.abs(deriv - fd).max() / max(np.abs(deriv).max(), 1e-3))
    return worst, 1e-5, "relative, central differences"


def regulation_error(params, kp, kd, seconds=3.0):
    """Final position error holding a fixed target with a +20% CoM plant."""
    actual = replace(params,
                     com_upper=min(1.2 * params.com_upper, params.len_upper),
                     com_lower=min(1.2 * params.com_lower, params.len_lower))
    target = np.array([0.0, 0.5, 0.0, 1.6])
    config = ExperimentConfig(nominal_params=params, true_params=actual,
                              gains=Gains.diagonal(kp, kd), adaptation_on=False,
                              q_start=target, q_end=target, duration=seconds, plant_substep=1e-3)
    last = run_experiment(config)[-1]
    return np.abs(last.q - last.q_ref).max()


def check_gain_monotonicity(params, rng):
    base = regulation_error(params, 100.0, 20.0)
    doubled = regulation_error(params, 200.0, 20.0 * np.sqrt(2.0))
    return doubled - base, 0.0, f"error Kp=100: {base:.3e}, Kp=200: {doubled:.3e}"


CHECKS = (
    ("rotation_orthonormality", "kincore", check_rotation_orthonormality),
    ("fk_length_preservation", "kincore", check_length_preservation),
    ("jacobian_finite_difference", "kincore", check_jacobian_fd),
    ("lower_tip_consistency", "kincore", check_lower_tip_consistency),
    ("mass_matrix_symmetry", "dynamics", check_mass_symmetry),
    ("mass_matrix_positive_definite", "dynamics", check_mass_positive_definite),
    ("coriolis_skew_symmetry", "dynamics", check_skew_symmetry),
    ("euler_lagrange_equivalence", "dynamics", check_euler_lagrange),
    ("energy_conservation", "dynamics", check_energy_conservation),
    ("inverse_forward_roundtrip", "dynamics", check_roundtrip),
    ("regressor_reconstruction", "regressor", check_reconstruction),
    ("regressor_parameter_independence", "regressor", check_parameter_independence),
    ("regressor_linearity", "regressor", check_linearity),
    ("regressor_cross_model", "regressor", check_cross_model),
    ("rls_batch_equivalence", "estimator", check_rls_batch),
    ("rls_covariance_spd", "estimator", check_covariance_spd),
    ("rls_covariance_monotone", "estimator", check_covariance_monotone),
    ("rls_noise_free_convergence", "estimator", check_noise_free_convergence),
    ("control_zero_error_collapse", "control", check_zero_error_collapse),
    ("control_zoh_exactness", "control", check_zoh),
    ("trajectory_smoothness", "control", check_trajectory_smoothness),
    ("gain_monotonicity", "control", check_gain_monotonicity),
)

CHECK_NAMES = tuple(name for name, _, _ in CHECKS)
_USES_REGRESSOR = {"regressor_reconstruction", "regressor_linearity", "regressor_cross_model"}


def run_invariant_suite(params, seed=0, only=None, regressor=None):
    """Run the invariant checks and return a SuiteReport.

    ``only`` restricts the run to the named checks. ``regressor`` replaces
    the scaled regressor in the checks that use it (for fault injection).
    """
    if only is not None:
        unknown = set(only) - set(CHECK_NAMES)
        if unknown:
            raise ValueError(f"unknown checks: {sorted(unknown)}")
    results = []
    for i, (name, module, fn) in enumerate(CHECKS):
        if only is not None and name not in only:
            continue
        rng = np.random.default_rng([seed, i])
        kwargs = {"regressor": regressor} if regressor is not None and name in _USES_REGRESSOR else {}
        at_least = False
        try:
            measured, bound, detail, *rest = fn(params, rng, **kwargs)
            at_least = bool(rest and rest[0])
            measured = float(measured)
            passed = _ge(measured, bound) if at_least else _le(measured, bound)
        except Exception as exc:  # a crashing check is a failed check
            measured, bound, detail, passed = float("nan"), float("nan"), f"{type(exc).__name__}: {exc}", False
        results.append(CheckResult(name, module, passed, measured, bound, detail, at_least))
    return SuiteReport(tuple(results))
