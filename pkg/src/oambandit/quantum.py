"""Encoded photon states and the post-selected joint measurement statistics.

The interferometer is never simulated element by element: the closed-form
joint outcome matrix (a 2x2 determinant of state coefficients per arm pair)
captures the full apparatus, is manifestly zero on the diagonal, and its
total mass is the separation probability.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DegenerateStateError

# Below this separation probability the post-selection loop would stall;
# treat the configuration as a system shutdown.
SHUTDOWN_EPS = 1e-9


@dataclass(frozen=True)
class OamState:
    """One player's encoded photon: amplitude and phase per arm mode."""

    amplitudes: np.ndarray
    phases: np.ndarray

    @property
    def n_arms(self) -> int:
        return self.amplitudes.size


@dataclass(frozen=True)
class JointOutcome:
    """Joint arm-pair probabilities and their separation mass.

    probs[i, j] is the unconditional probability that player 1 reads arm i+1
    while player 2 reads arm j+1; p_sep is the total matrix mass, i.e. the
    probability that the photons exit different ports at all.
    """

    probs: np.ndarray
    p_sep: float


def make_state(p_hat: np.ndarray, phases: np.ndarray) -> OamState:
    """Encode selection probabilities as amplitudes sqrt(p) with given phases."""
    p_hat = np.asarray(p_hat, dtype=float)
    phases = np.asarray(phases, dtype=float)
    if p_hat.shape != phases.shape or p_hat.ndim != 1:
        raise ValueError("probabilities and phases must be equal-length vectors")
    if np.any(p_hat < 0.0):
        raise ValueError("probabilities must be nonnegative")
    if not np.all(np.isfinite(phases)):
        raise ValueError("phases must be finite")
    total = p_hat.sum()
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"probabilities must sum to 1, got {total!r}")
    amps = np.sqrt(p_hat / total)
    amps.setflags(write=False)
    ph = phases.copy()
    ph.setflags(write=False)
    return OamState(amplitudes=amps, phases=ph)


def _check_pair(s1: OamState, s2: OamState) -> None:
    if s1.n_arms != s2.n_arms:
        raise ValueError(
            f"states must share the arm count, got {s1.n_arms} and {s2.n_arms}"
        )


def joint_distribution(s1: OamState, s2: OamState) -> JointOutcome:
    """Exact joint outcome matrix for the two encoded states."""
    _check_pair(s1, s2)
    probs = _kernels.joint_pair_probs(
        s1.amplitudes, s1.phases, s2.amplitudes, s2.phases
    )
    # the matrix mass is analytically at most 1/2; summation rounding can
    # overshoot by a few ulp
    p_sep = min(_kernels.matrix_total(probs), 0.5)
    probs.setflags(write=False)
    return JointOutcome(probs=probs, p_sep=p_sep)


def fidelity(s1: OamState, s2: OamState) -> float:
    """Squared overlap of the two encoded states after reflection.

    Only the per-arm phase differences enter, so a global phase on either
    state is irrelevant.  High fidelity means photon bunching.
    """
    _check_pair(s1, s2)
    return _kernels.state_overlap_sq(s1.amplitudes, s1.phases, s2.amplitudes, s2.phases)


def separation_probability(s1: OamState, s2: OamState) -> float:
    """Probability the photons exit different ports: (1 - fidelity) / 2."""
    return 0.5 - 0.5 * fidelity(s1, s2)


def output_probabilities(joint: JointOutcome) -> np.ndarray:
    """Conditional per-arm selection probabilities after post-selection.

    Both players share the same vector because the joint matrix is symmetric.
    """
    if joint.p_sep <= SHUTDOWN_EPS:
        raise DegenerateStateError(joint.p_sep)
    return _kernels.row_marginals(joint.probs) / joint.p_sep


def sample_selection(
    joint: JointOutcome, rng: np.random.Generator
) -> tuple[int, int, int]:
    """Draw one post-selected outcome: (arm1, arm2, attempts), arms 1-based.

    The attempts count is how many photon pairs the source would have fired
    before one pair separated; it is sampled from the matching geometric law
    rather than looped, since the conditional outcome draw is already exact.
    """
    if joint.p_sep <= SHUTDOWN_EPS:
        raise DegenerateStateError(joint.p_sep)
    i, j = _kernels.sample_pair(joint.probs, rng.random())
    attempts = _kernels.geometric_draw(rng.random(), joint.p_sep)
    return i + 1, j + 1, attempts
