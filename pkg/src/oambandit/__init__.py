"""Conflict-free two-player bandit decision making via photon interference.

Two players repeatedly pick arms of a shared Bernoulli bandit without
communicating.  Each encodes its softmax selection weights into the mode
amplitudes of one photon of a pair and tunes the mode phases to keep the pair
anti-bunched; the post-selected joint measurement then never assigns both
players the same arm.  The package simulates this protocol exactly through
its closed-form outcome distribution and benchmarks it against the older
attenuator-based selection rule.
"""

from .baseline import BaselineJoint, baseline_joint, baseline_sample
from .env import Environment, RewardOutcome, draw_rewards, make_named_env
from .errors import ConfigError, DegenerateStateError, OamBanditError
from .harness import (
    RunConfig,
    RunSummary,
    SweepRow,
    TrialRecord,
    regret_curve,
    rmse_curve,
    run_batch,
    run_trial,
    sweep_lambda,
    trial_rng,
)
from .phaseopt import (
    OptimizerSettings,
    PhaseSolution,
    assign_phases,
    initial_phases,
    objective,
    optimize,
)
from .policy import (
    BetaSchedule,
    PlayerState,
    desired_probabilities,
    effective_beta,
    empirical_means,
)
from .quantum import (
    JointOutcome,
    OamState,
    fidelity,
    joint_distribution,
    make_state,
    output_probabilities,
    sample_selection,
    separation_probability,
)

__version__ = "0.1.0"

__all__ = [
    "BaselineJoint",
    "BetaSchedule",
    "ConfigError",
    "DegenerateStateError",
    "Environment",
    "JointOutcome",
    "OamBanditError",
    "OamState",
    "OptimizerSettings",
    "PhaseSolution",
    "PlayerState",
    "RewardOutcome",
    "RunConfig",
    "RunSummary",
    "SweepRow",
    "TrialRecord",
    "assign_phases",
    "baseline_joint",
    "baseline_sample",
    "desired_probabilities",
    "draw_rewards",
    "effective_beta",
    "empirical_means",
    "fidelity",
    "initial_phases",
    "joint_distribution",
    "make_named_env",
    "make_state",
    "objective",
    "optimize",
    "output_probabilities",
    "regret_curve",
    "rmse_curve",
    "run_batch",
    "run_trial",
    "sample_selection",
    "separation_probability",
    "sweep_lambda",
    "trial_rng",
    "__version__",
]
