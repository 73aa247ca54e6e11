import numpy as np
import pytest

from oambandit import DegenerateStateError, baseline_joint, baseline_sample


def test_uniform_ratio_follows_sine_law():
    n = 5
    joint = baseline_joint(np.ones(n) / n, np.ones(n) / n)
    ratio = joint.probs[0, 1] / joint.probs[0, 2]
    want = np.sin(np.pi / 5) ** 2 / np.sin(2 * np.pi / 5) ** 2
    assert ratio == pytest.approx(want, abs=1e-12)


def test_zero_diagonal_always():
    rng = np.random.default_rng(0)
    for _ in range(100):
        n = int(rng.integers(2, 11))
        joint = baseline_joint(rng.dirichlet(np.ones(n)), rng.dirichlet(np.ones(n)))
        assert np.abs(np.diag(joint.probs)).max() == 0.0
        assert joint.probs.sum() == pytest.approx(1.0, abs=1e-12)
        assert np.all(joint.probs >= 0.0)


def test_uniform_four_arm_pattern():
    # oracle: build the sine-squared matrix directly and normalize
    n = 4
    expected = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i != j:
                expected[i, j] = np.sin((j - i) * np.pi / n) ** 2 / n**2
    expected /= expected.sum()
    joint = baseline_joint(np.ones(n) / n, np.ones(n) / n)
    np.testing.assert_allclose(joint.probs, expected, rtol=0, atol=1e-12)


def test_uniform_entries_depend_only_on_index_distance():
    n = 7
    joint = baseline_joint(np.ones(n) / n, np.ones(n) / n)
    by_distance = {}
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            d = (j - i) % n
            by_distance.setdefault(d, []).append(joint.probs[i, j])
    for d, vals in by_distance.items():
        assert np.ptp(vals) < 1e-15
    # mass peaks at the distance closest to n/2
    means = {d: np.mean(v) for d, v in by_distance.items()}
    best = max(means, key=means.get)
    assert abs(best - n / 2) <= 0.5


def test_fixed_separation_probability():
    joint = baseline_joint(np.ones(3) / 3, np.ones(3) / 3)
    assert joint.p_sep == 0.5


def test_degenerate_point_masses():
    with pytest.raises(DegenerateStateError):
        baseline_joint(np.array([1.0, 0.0]), np.array([1.0, 0.0]))


def test_shape_mismatch():
    with pytest.raises(ValueError):
        baseline_joint(np.ones(3) / 3, np.ones(4) / 4)


def test_single_entry_sampling_deterministic():
    joint = baseline_joint(np.array([1.0, 0.0]), np.array([0.0, 1.0]))
    rng = np.random.default_rng(1)
    for _ in range(100):
        a1, a2, _ = baseline_sample(joint, rng)
        assert (a1, a2) == (1, 2)


def test_sampling_frequencies_match_matrix():
    # oracle: exact multinomial cell probabilities with 3-sigma bounds
    n = 4
    joint = baseline_joint(np.ones(n) / n, np.ones(n) / n)
    rng = np.random.default_rng(2)
    n_draws = 100_000
    counts = np.zeros((n, n))
    for _ in range(n_draws):
        a1, a2, _ = baseline_sample(joint, rng)
        assert a1 != a2
        counts[a1 - 1, a2 - 1] += 1
    freq = counts / n_draws
    sigma = np.sqrt(joint.probs * (1 - joint.probs) / n_draws)
    assert np.all(np.abs(freq - joint.probs) <= 3 * sigma + 1e-12)


def test_attempts_geometric_half():
    joint = baseline_joint(np.ones(3) / 3, np.ones(3) / 3)
    rng = np.random.default_rng(3)
    attempts = np.array([baseline_sample(joint, rng)[2] for _ in range(50_000)])
    assert attempts.min() >= 1
    assert abs(attempts.mean() - 2.0) < 4 * np.sqrt(2.0 / attempts.size)
