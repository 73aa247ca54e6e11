"""Phase optimization each player runs against its own selection weights.

A player cannot see the opponent's weights, so it minimizes the bunching
objective |sum_n p_n e^{i omega_n}|^2 computed from its own vector, starting
from an evenly wound spiral.  The halved solutions become physical phases
with opposite signs per player, so the realized phase differences are the
average of the two players' solutions.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels


@dataclass(frozen=True)
class OptimizerSettings:
    tol_grad: float = 1e-8
    tol_f: float = 1e-12
    max_iter: int = 500
    warm_start: bool = False


@dataclass(frozen=True)
class PhaseSolution:
    """Result of one phase optimization."""

    omega_hat: np.ndarray
    objective_value: float
    iterations: int
    converged: bool


def initial_phases(n_arms: int) -> np.ndarray:
    """Spiral start 2*(n-1)*pi/N; already optimal for uniform weights."""
    return _kernels.spiral_phases(n_arms)


def objective(p_hat: np.ndarray, omega: np.ndarray) -> tuple[float, np.ndarray]:
    """Bunching objective and its analytic gradient.

    Value is |sum_n p_n e^{i omega_n}|^2; the gradient in omega_n is
    2 p_n Im(e^{-i omega_n} sum_k p_k e^{i omega_k}).
    """
    p_hat = np.asarray(p_hat, dtype=float)
    omega = np.asarray(omega, dtype=float)
    if p_hat.shape != omega.shape:
        raise ValueError("weights and phases must have matching shapes")
    grad = np.empty_like(omega)
    value = _kernels.phase_objective_grad(p_hat, omega, grad)
    return value, grad


def optimize(
    p_hat: np.ndarray,
    settings: OptimizerSettings | None = None,
    start: np.ndarray | None = None,
) -> PhaseSolution:
    """Minimize the bunching objective from the spiral start.

    BFGS with backtracking line search; the uniform-shift direction of the
    objective is flat but has exactly zero gradient, so no gauge fixing is
    needed.  Local minima reached from the fixed start are accepted.
    """
    settings = settings or OptimizerSettings()
    p_hat = np.asarray(p_hat, dtype=float)
    omega0 = initial_phases(p_hat.size) if start is None else np.asarray(start, float)
    omega, value, iters, converged = _kernels.minimize_phases(
        p_hat, omega0, settings.tol_grad, settings.tol_f, settings.max_iter
    )
    if not np.isfinite(value):
        raise FloatingPointError("phase objective became non-finite")
    omega.setflags(write=False)
    return PhaseSolution(
        omega_hat=omega,
        objective_value=value,
        iterations=iters,
        converged=converged,
    )


def assign_phases(player_index: int, omega_hat: np.ndarray) -> np.ndarray:
    """Convert a solution into physical phases: -omega/2 or +omega/2.

    Player 1 takes the negative half, player 2 the positive half, so the
    realized per-arm phase difference is the average of the two solutions.
    The raw solution is halved without any modular reduction: when the two
    players' near-identical solutions straddle a wrap boundary, reduction
    would push their halves about pi apart and collapse the separation
    probability.
    """
    if player_index not in (1, 2):
        raise ValueError("player_index must be 1 or 2")
    sign = -1.0 if player_index == 1 else 1.0
    return sign * 0.5 * np.asarray(omega_hat, dtype=float)
