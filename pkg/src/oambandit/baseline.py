"""Attenuator-based selection rule used as the comparison method.

The prior hardware post-selects photons through per-arm attenuators, which
fixes the separation probability at 1/2 and couples the pair distribution to
the arm-index distance through a sin^2 law.  Only the uniform-weights case of
that law is documented; the product-of-weights modulation used here
(entry ~ p1_i * p2_j * sin^2((j - i) pi / N)) is a reconstruction chosen as
the minimal reading of "absorption proportional to the desired ratios", and
only affects baseline curves, never the interference method.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DegenerateStateError

BASELINE_P_SEP = 0.5


@dataclass(frozen=True)
class BaselineJoint:
    """Normalized pair-selection matrix; separation probability is fixed."""

    probs: np.ndarray
    p_sep: float = BASELINE_P_SEP


def baseline_joint(p1_hat: np.ndarray, p2_hat: np.ndarray) -> BaselineJoint:
    """Pair-selection distribution of the attenuator method."""
    p1 = np.asarray(p1_hat, dtype=float)
    p2 = np.asarray(p2_hat, dtype=float)
    if p1.shape != p2.shape or p1.ndim != 1:
        raise ValueError("the two weight vectors must be equal-length")
    probs, total = _kernels.attenuator_pair_probs(p1, p2)
    if total <= 0.0:
        raise DegenerateStateError(0.0)
    probs.setflags(write=False)
    return BaselineJoint(probs=probs)


def baseline_sample(
    joint: BaselineJoint, rng: np.random.Generator
) -> tuple[int, int, int]:
    """Draw (arm1, arm2, attempts) from the attenuator distribution, 1-based."""
    i, j = _kernels.sample_pair(joint.probs, rng.random())
    attempts = _kernels.geometric_draw(rng.random(), joint.p_sep)
    return i + 1, j + 1, attempts
