"""Bandit reward environments and the shared-reward drawing rule."""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError

# Base vectors follow mu_n = 1 - n/(N+1); the permuted variants rearrange
# selected entries to probe sensitivity to arm-index assignment.
_NAMED_SWAPS = {
    "Env1-1": (5, ()),
    "Env1-2": (5, ((2, 3),)),
    "Env2-1": (10, ()),
    "Env2-2": (10, ((3, 6),)),
    "Env2-3": (10, ((2, 3), (3, 6))),
}


@dataclass(frozen=True)
class Environment:
    """A fixed set of Bernoulli arms shared by both players."""

    reward_probs: np.ndarray
    name: str | None = None

    def __post_init__(self):
        probs = np.asarray(self.reward_probs, dtype=float)
        if probs.ndim != 1 or probs.size < 2:
            raise ValueError("an environment needs at least two arms")
        if np.any(probs < 0.0) or np.any(probs > 1.0):
            raise ValueError("reward probabilities must lie in [0, 1]")
        probs.setflags(write=False)
        object.__setattr__(self, "reward_probs", probs)

    @property
    def n_arms(self) -> int:
        return self.reward_probs.size


@dataclass(frozen=True)
class RewardOutcome:
    """One player's reward for a step, with conflict bookkeeping."""

    reward: float
    conflict: bool
    gamma: int = field(default=1)


def make_named_env(name: str) -> Environment:
    """Build one of the five standard environments by name.

    The five-arm and ten-arm bases use mu_n = 1 - n/(N+1); the permuted
    variants apply the listed 1-based index swaps in order.
    """
    if name not in _NAMED_SWAPS:
        known = ", ".join(sorted(_NAMED_SWAPS))
        raise ConfigError(f"unknown environment {name!r}; expected one of {known}")
    n_arms, swaps = _NAMED_SWAPS[name]
    probs = 1.0 - np.arange(1, n_arms + 1) / (n_arms + 1)
    for a, b in swaps:
        probs[[a - 1, b - 1]] = probs[[b - 1, a - 1]]
    return Environment(reward_probs=probs, name=name)


def draw_rewards(
    env: Environment, arm1: int, arm2: int, rng: np.random.Generator
) -> tuple[RewardOutcome, RewardOutcome]:
    """Draw both players' rewards for the chosen arms (1-based indices).

    A shared arm uses a single Bernoulli draw whose unit reward is split
    between the two players; distinct arms draw independently.
    """
    n = env.n_arms
    if not (1 <= arm1 <= n and 1 <= arm2 <= n):
        raise ValueError(f"arm indices must be in 1..{n}, got ({arm1}, {arm2})")
    mu = env.reward_probs
    if arm1 == arm2:
        success = rng.random() < mu[arm1 - 1]
        r = 0.5 if success else 0.0
        return (
            RewardOutcome(reward=r, conflict=True, gamma=2),
            RewardOutcome(reward=r, conflict=True, gamma=2),
        )
    r1 = 1.0 if rng.random() < mu[arm1 - 1] else 0.0
    r2 = 1.0 if rng.random() < mu[arm2 - 1] else 0.0
    return (
        RewardOutcome(reward=r1, conflict=False, gamma=1),
        RewardOutcome(reward=r2, conflict=False, gamma=1),
    )
