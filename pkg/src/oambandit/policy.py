"""Per-player observation history and top-two softmax selection weights."""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels


@dataclass
class PlayerState:
    """Win/loss counters a player has accumulated per arm."""

    wins: np.ndarray
    losses: np.ndarray
    player_index: int = 1

    @classmethod
    def fresh(cls, n_arms: int, player_index: int = 1) -> "PlayerState":
        return cls(
            wins=np.zeros(n_arms, dtype=np.int64),
            losses=np.zeros(n_arms, dtype=np.int64),
            player_index=player_index,
        )

    @property
    def pulls(self) -> np.ndarray:
        return self.wins + self.losses

    def record(self, arm: int, reward: float) -> None:
        """Update counters for a 1-based arm; any positive reward is a win."""
        if reward > 0.0:
            self.wins[arm - 1] += 1
        else:
            self.losses[arm - 1] += 1


@dataclass(frozen=True)
class BetaSchedule:
    """Linearly growing inverse temperature beta(t) = lam * t."""

    lam: float

    def __post_init__(self):
        if self.lam <= 0.0:
            raise ValueError("the schedule slope must be positive")


def empirical_means(state: PlayerState) -> np.ndarray:
    """Per-arm win rate; arms never pulled report 0.

    The zero placeholder is inert: the schedule stays at beta = 0 until every
    arm has been pulled, and at beta = 0 the selection weights are uniform.
    """
    means, _ = _kernels.win_rates(state.wins, state.losses)
    return means


def effective_beta(state: PlayerState, schedule: BetaSchedule, t: int) -> float:
    """Inverse temperature at step t; forced to 0 while any arm is unexplored."""
    if t < 1:
        raise ValueError("time steps are 1-based")
    if np.any(state.pulls == 0):
        return 0.0
    return schedule.lam * t


def desired_probabilities(mu_hat: np.ndarray, beta: float) -> np.ndarray:
    """Probability that each arm ranks among the player's top two.

    Softmax weights over the estimated means, extended so that an arm counts
    when it is either the best or the runner-up; entries never exceed 1/2 and
    the vector sums to 1.  Safe for arbitrarily large beta.
    """
    mu_hat = np.asarray(mu_hat, dtype=float)
    if beta < 0.0:
        raise ValueError("beta must be nonnegative")
    if not np.all(np.isfinite(mu_hat)):
        raise ValueError("estimated means must be finite")
    return _kernels.top_two_softmax(mu_hat, float(beta))
