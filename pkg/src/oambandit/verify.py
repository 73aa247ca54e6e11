"""Randomized self-checks of the package's core identities.

Each check draws many random state pairs and reports its worst residual;
`run_all` prints one line per property and returns whether all passed.  The
cli exposes this as the `verify` subcommand.
"""

from dataclasses import dataclass

import numpy as np

from . import phaseopt, quantum


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    bound: float

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return f"{status}  {self.name}: worst residual {self.worst:.3e} (bound {self.bound:.1e})"


def random_state_pair(rng: np.random.Generator, n: int) -> tuple:
    p1 = rng.dirichlet(np.ones(n))
    p2 = rng.dirichlet(np.ones(n))
    th1 = rng.uniform(0.0, 2.0 * np.pi, n)
    th2 = rng.uniform(0.0, 2.0 * np.pi, n)
    return (
        quantum.make_state(p1, th1),
        quantum.make_state(p2, th2),
    )


def check_conflict_freedom(rng: np.random.Generator, samples: int = 1000) -> CheckResult:
    """Same-arm outcomes must carry no probability mass."""
    worst = 0.0
    for _ in range(samples):
        n = int(rng.integers(2, 11))
        s1, s2 = random_state_pair(rng, n)
        joint = quantum.joint_distribution(s1, s2)
        worst = max(worst, float(np.abs(np.diag(joint.probs)).max()))
    return CheckResult("conflict-freedom (diagonal mass)", worst < 1e-12, worst, 1e-12)


def check_separation_consistency(rng: np.random.Generator, samples: int = 1000) -> CheckResult:
    """Matrix mass must equal the closed-form separation probability."""
    worst = 0.0
    for _ in range(samples):
        n = int(rng.integers(2, 11))
        s1, s2 = random_state_pair(rng, n)
        joint = quantum.joint_distribution(s1, s2)
        closed = quantum.separation_probability(s1, s2)
        worst = max(worst, abs(joint.p_sep - closed))
    return CheckResult("separation probability consistency", worst < 1e-10, worst, 1e-10)


def check_fidelity_bound(rng: np.random.Generator, samples: int = 1000) -> CheckResult:
    """Fidelity never exceeds the squared cosine similarity of the amplitudes."""
    worst = -np.inf
    for _ in range(samples):
        n = int(rng.integers(2, 11))
        s1, s2 = random_state_pair(rng, n)
        fid = quantum.fidelity(s1, s2)
        a1, a2 = s1.amplitudes, s2.amplitudes
        cos_sim = np.dot(a1, a2) / (np.linalg.norm(a1) * np.linalg.norm(a2))
        worst = max(worst, fid - cos_sim**2)
    return CheckResult("fidelity cosine-similarity bound", worst < 1e-12, worst, 1e-12)


def check_gradient(rng: np.random.Generator, samples: int = 200) -> CheckResult:
    """Analytic gradient must match central finite differences."""
    worst = 0.0
    for _ in range(samples):
        n = int(rng.integers(2, 11))
        p = rng.dirichlet(np.ones(n))
        omega = rng.uniform(0.0, 2.0 * np.pi, n)
        _, grad = phaseopt.objective(p, omega)
        step = 1e-6
        for k in range(n):
            up = omega.copy()
            up[k] += step
            down = omega.copy()
            down[k] -= step
            fd = (phaseopt.objective(p, up)[0] - phaseopt.objective(p, down)[0]) / (
                2 * step
            )
            worst = max(worst, abs(grad[k] - fd))
    return CheckResult("phase objective gradient vs finite differences", worst < 1e-5, worst, 1e-5)


def check_output_probabilities(rng: np.random.Generator, samples: int = 1000) -> CheckResult:
    """Row marginals must match the closed-form conditional selection law."""
    worst = 0.0
    for _ in range(samples):
        n = int(rng.integers(2, 11))
        s1, s2 = random_state_pair(rng, n)
        joint = quantum.joint_distribution(s1, s2)
        if joint.p_sep <= quantum.SHUTDOWN_EPS:
            continue
        q = quantum.output_probabilities(joint)
        p1 = s1.amplitudes**2
        p2 = s2.amplitudes**2
        omega = s2.phases - s1.phases
        root = np.sqrt(p1 * p2)
        closed = np.empty(n)
        for k in range(n):
            cross = np.sum(root * np.cos(omega - omega[k]))
            closed[k] = (p1[k] + p2[k] - 2.0 * root[k] * cross) / (4.0 * joint.p_sep)
        worst = max(worst, float(np.abs(q - closed).max()))
    return CheckResult("output probabilities vs closed form", worst < 1e-10, worst, 1e-10)


def run_all(seed: int = 1234, samples: int = 1000) -> tuple[bool, list[CheckResult]]:
    rng = np.random.default_rng(seed)
    results = [
        check_conflict_freedom(rng, samples),
        check_separation_consistency(rng, samples),
        check_fidelity_bound(rng, samples),
        check_gradient(rng, max(samples // 5, 50)),
        check_output_probabilities(rng, samples),
    ]
    return all(r.passed for r in results), results
