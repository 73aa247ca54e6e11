import mpmath as mp
import numpy as np
import pytest

from oambandit import (
    BetaSchedule,
    PlayerState,
    desired_probabilities,
    effective_beta,
    empirical_means,
)


def oracle_top_two(mu_hat, beta, dps=60):
    """Direct high-precision evaluation of the top-two softmax."""
    mp.mp.dps = dps
    e = [mp.e ** (mp.mpf(beta) * mp.mpf(m)) for m in mu_hat]
    total = mp.fsum(e)
    out = []
    for n in range(len(mu_hat)):
        bracket = mp.mpf(1)
        for j in range(len(mu_hat)):
            if j != n:
                bracket += e[j] / (total - e[j])
        out.append(mp.mpf(1) / 2 * e[n] / total * bracket)
    return np.array([float(x) for x in out])


def state_with(wins, losses):
    return PlayerState(
        wins=np.asarray(wins, dtype=np.int64),
        losses=np.asarray(losses, dtype=np.int64),
    )


def test_empirical_means_examples():
    np.testing.assert_allclose(empirical_means(state_with([3], [1])), [0.75])
    np.testing.assert_allclose(empirical_means(state_with([0], [0])), [0.0])
    np.testing.assert_allclose(
        empirical_means(state_with([1, 0], [0, 2])), [1.0, 0.0]
    )


def test_effective_beta():
    sched = BetaSchedule(lam=0.11)
    full = state_with([1, 1, 1, 1, 1], [1, 0, 0, 2, 1])
    assert effective_beta(full, sched, 100) == pytest.approx(11.0)
    hole = state_with([1, 0, 1], [0, 0, 1])
    assert effective_beta(hole, sched, 50) == 0.0
    assert effective_beta(
        state_with([1, 1], [0, 1]), BetaSchedule(lam=0.1), 1
    ) == pytest.approx(0.1)
    with pytest.raises(ValueError):
        effective_beta(full, sched, 0)
    with pytest.raises(ValueError):
        BetaSchedule(lam=0.0)


def test_record_counts_shared_reward_as_win():
    st = PlayerState.fresh(3)
    st.record(2, 1.0)
    st.record(2, 0.5)
    st.record(2, 0.0)
    assert st.wins[1] == 2 and st.losses[1] == 1
    assert st.pulls[1] == 3


def test_zero_beta_is_exactly_uniform():
    p = desired_probabilities(np.array([0.1, 0.9, 0.3, 0.5, 0.7]), 0.0)
    np.testing.assert_allclose(p, np.full(5, 0.2), rtol=0, atol=1e-15)


def test_two_arms_always_half_half():
    p = desired_probabilities(np.array([0.9, 0.2]), 7.3)
    np.testing.assert_allclose(p, [0.5, 0.5], rtol=0, atol=1e-12)


def test_huge_beta_concentrates_on_top_two():
    # frozen from the high-precision oracle: values are (1/2, 1/2, ~2.6e-131)
    p = desired_probabilities(np.array([0.9, 0.6, 0.3]), 1000.0)
    np.testing.assert_allclose(p, [0.5, 0.5, 0.0], rtol=0, atol=1e-9)
    assert np.all(np.isfinite(p))


def test_matches_high_precision_oracle():
    rng = np.random.default_rng(42)
    for _ in range(40):
        n = int(rng.integers(2, 9))
        mu = rng.uniform(0.0, 1.0, n)
        beta = float(rng.uniform(0.0, 50.0))
        got = desired_probabilities(mu, beta)
        want = oracle_top_two(mu, beta)
        np.testing.assert_allclose(got, want, rtol=0, atol=1e-12)


def test_randomized_invariants():
    rng = np.random.default_rng(7)
    for _ in range(300):
        n = int(rng.integers(2, 12))
        mu = rng.uniform(0.0, 1.0, n)
        beta = float(rng.choice([0.0, 0.5, 3.0, 30.0, 300.0, 1100.0]))
        p = desired_probabilities(mu, beta)
        assert abs(p.sum() - 1.0) < 1e-12
        assert np.all(p >= 0.0)
        assert p.max() <= 0.5 + 1e-12
        # permutation equivariance
        perm = rng.permutation(n)
        np.testing.assert_allclose(
            desired_probabilities(mu[perm], beta), p[perm], rtol=0, atol=1e-12
        )
        # monotonicity in the estimated means
        order = np.argsort(mu)
        assert np.all(np.diff(p[order]) >= -1e-12)


def test_overflow_safety_extreme_beta():
    p = desired_probabilities(np.array([1.0, 0.0, 0.5, 0.25]), 1e6)
    assert np.all(np.isfinite(p))
    assert abs(p.sum() - 1.0) < 1e-12


def test_invalid_inputs():
    with pytest.raises(ValueError):
        desired_probabilities(np.array([np.nan, 0.5]), 1.0)
    with pytest.raises(ValueError):
        desired_probabilities(np.array([0.5, 0.5]), -1.0)
