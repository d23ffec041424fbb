"""Multi-output recursive least squares for the five theta scales.

Each control tick contributes one 4x5 regressor ``A`` and one measured torque
vector. The update is the matrix-inversion-lemma form::

    S = lam*I + A P A^T
    K = P A^T S^-1
    theta <- theta + K (tau - A theta)
    P <- (P - K A P) / lam

States are immutable; ``rls_update`` returns a new one.
"""

from dataclasses import dataclass, field

import numpy as np

from .regressor import N_THETA

MAX_CONDITION = 1e12


class EstimatorSingularError(np.linalg.LinAlgError):
    """The innovation covariance S is numerically singular."""


@dataclass(frozen=True)
class RlsConfig:
    initial_theta: np.ndarray = field(default_factory=lambda: np.ones(N_THETA))
    initial_cov_scale: float = 1e3
    forgetting: float = 1.0

    def __post_init__(self):
        theta = np.asarray(self.initial_theta, dtype=float)
        if theta.shape != (N_THETA,) or not np.all(np.isfinite(theta)):
            raise ValueError(f"initial_theta must be {N_THETA} finite values")
        object.__setattr__(self, "initial_theta", theta)
        if not (np.isfinite(self.initial_cov_scale) and self.initial_cov_scale > 0):
            raise ValueError(f"initial_cov_scale must be > 0, got {self.initial_cov_scale}")
        if not 0 < self.forgetting <= 1:
            raise ValueError(f"forgetting must lie in (0, 1], got {self.forgetting}")


@dataclass(frozen=True)
class RlsState:
    theta_hat: np.ndarray
    cov: np.ndarray
    gain: np.ndarray
    tick: int = 0
    forgetting: float = 1.0


def rls_init(config=None):
    config = config or RlsConfig()
    return RlsState(
        theta_hat=config.initial_theta.copy(),
        cov=config.initial_cov_scale * np.eye(N_THETA),
        gain=np.zeros((N_THETA, 4)),
        tick=0,
        forgetting=config.forgetting,
    )


def rls_update(state, phi, tau):
    """One RLS step on a (regressor, torque) pair. Returns the new state."""
    a = np.asarray(phi, dtype=float)
    y = np.asarray(tau, dtype=float)
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(y))):
        raise ValueError("regressor and torque must be finite")
    lam = state.forgetting
    p = state.cov
    pat = p @ a.T
    s = lam * np.eye(a.shape[0]) + a @ pat
    if np.linalg.cond(s) > MAX_CONDITION:
        raise EstimatorSingularError(f"innovation covariance condition number exceeds {MAX_CONDITION:g}")
    gain = np.linalg.solve(s, pat.T).T
    theta = state.theta_hat + gain @ (y - a @ state.theta_hat)
    cov = (p - gain @ pat.T) / lam
    cov = 0.5 * (cov + cov.T)
    return RlsState(theta, cov, gain, state.tick + 1, lam)


def rls_batch_oracle(samples, config=None):
    """Regularized batch least squares equal to RLS with ``forgetting == 1``.

    Solves ``(sum A^T A + P0^-1) theta = sum A^T tau + P0^-1 theta0``.
    """
    config = config or RlsConfig()
    if len(samples) == 0:
        raise ValueError("need at least one sample")
    prior = 1.0 / config.initial_cov_scale
    normal = prior * np.eye(N_THETA)
    rhs = prior * config.initial_theta
    for a, y in samples:
        a = np.asarray(a, dtype=float)
        normal += a.T @ a
        rhs += a.T @ np.asarray(y, dtype=float)
    try:
        return np.linalg.solve(normal, rhs)
    except np.linalg.LinAlgError as exc:
        raise np.linalg.LinAlgError(f"normal equations are singular: {exc}") from exc
