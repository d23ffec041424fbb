"""Adaptive computed-torque control of a 4-DoF leg with online identification
of the link centre-of-mass positions."""

from .config import ConfigError, load_config, parse_config
from .control import (ControlLawMode, Gains, PiecewiseTrajectory, TrajectoryPoint, computed_torque,
                      control_tick, excitation_waypoints, linear_trajectory, quintic_trajectory)
from .dynamics import (SingularMassMatrixError, coriolis_matrix, forward_dynamics, gravity_vector,
                       inverse_dynamics, mass_matrix, total_energy)
from .estimator import EstimatorSingularError, RlsConfig, RlsState, rls_batch_oracle, rls_init, rls_update
from .invariants import run_invariant_suite
from .kincore import JointState, RobotParams, fk_com_lower, fk_com_upper, fk_tip, jacobian_com
from .logio import load_log, save_log
from .regressor import regressor_raw, regressor_scaled, theta_nominal, true_theta_scales
from .simrunner import (ExperimentConfig, InstabilityError, LogRecord, rk4_step, run_experiment,
                        tracking_errors)

__version__ = "0.1.0"
