import numpy as np
import pytest

from oambandit import (
    Environment,
    RunConfig,
    TrialRecord,
    make_named_env,
    regret_curve,
    rmse_curve,
    run_batch,
    run_trial,
    sweep_lambda,
)
from oambandit.harness import recorded_step_indices


def tiny_config(**kwargs):
    defaults = dict(
        env=make_named_env("Env1-1"),
        horizon=200,
        trials=3,
        lam=0.11,
        seed=99,
        threads=1,
        record_stride=10,
        dense_until=50,
    )
    defaults.update(kwargs)
    return RunConfig(**defaults)


def synthetic_record(arms, env, p_hat=None, q=None):
    """Build a record with the given (T, 2) arm choices and optional traces."""
    arms = np.asarray(arms, dtype=np.int32)
    T = arms.shape[0]
    n = env.n_arms
    steps = np.arange(1, T + 1, dtype=np.int32)
    if p_hat is None:
        p_hat = np.full((T, 2, n), 1.0 / n)
    if q is None:
        q = np.full((T, 2, n), 1.0 / n)
    return TrialRecord(
        trial_index=0,
        master_seed=0,
        arms=arms,
        rewards=np.zeros((T, 2)),
        p_sep=np.full(T, 0.5),
        attempts=np.ones(T, dtype=np.int64),
        objectives=np.zeros((T, 2)),
        recorded_steps=steps,
        p_hat=np.asarray(p_hat, dtype=float),
        q=np.asarray(q, dtype=float),
    )


class TestRunTrial:
    def test_first_step_regime(self):
        cfg = tiny_config(horizon=1, env=Environment(reward_probs=np.array([0.5, 0.5])))
        rec = run_trial(cfg, 0)
        # fresh players explore uniformly and never conflict
        np.testing.assert_allclose(rec.p_hat[0], 0.5)
        assert rec.arms[0, 0] != rec.arms[0, 1]
        assert rec.p_sep[0] == pytest.approx(0.5, abs=1e-12)

    def test_fixed_seed_reproducible(self):
        cfg = tiny_config()
        a = run_trial(cfg, 1)
        b = run_trial(cfg, 1)
        for field in ("arms", "rewards", "p_sep", "attempts", "p_hat", "q"):
            np.testing.assert_array_equal(getattr(a, field), getattr(b, field))

    def test_trials_differ(self):
        cfg = tiny_config()
        a = run_trial(cfg, 0)
        b = run_trial(cfg, 1)
        assert not np.array_equal(a.arms, b.arms)

    def test_no_conflicts_either_method(self):
        for method in ("proposed", "baseline"):
            cfg = tiny_config(method=method)
            rec = run_trial(cfg, 0)
            assert int((rec.arms[:, 0] == rec.arms[:, 1]).sum()) == 0

    def test_deterministic_top_arms_drive_regret_increments_to_zero(self):
        env = Environment(reward_probs=np.array([1.0, 1.0, 0.0, 0.0]))
        cfg = tiny_config(env=env, horizon=400, trials=2, dense_until=400)
        recs = [run_trial(cfg, e) for e in range(2)]
        curve = regret_curve(recs, env)
        late = curve[-1] - curve[-101]
        assert late / 100 < 0.05

    def test_baseline_has_fixed_psep_and_nan_objectives(self):
        cfg = tiny_config(method="baseline")
        rec = run_trial(cfg, 0)
        assert np.all(rec.p_sep == 0.5)
        assert np.all(np.isnan(rec.objectives))

    def test_warm_start_runs_conflict_free(self):
        from oambandit import OptimizerSettings

        cfg = tiny_config(optimizer=OptimizerSettings(warm_start=True))
        rec = run_trial(cfg, 0)
        assert int((rec.arms[:, 0] == rec.arms[:, 1]).sum()) == 0
        assert np.all(rec.p_sep > 0.0)


class TestRecordedSteps:
    def test_dense_then_strided(self):
        cfg = tiny_config(horizon=130, dense_until=100, record_stride=10)
        steps = recorded_step_indices(cfg)
        expected = list(range(1, 101)) + [110, 120, 130]
        assert steps.tolist() == expected

    def test_stride_one_records_everything(self):
        cfg = tiny_config(horizon=75, dense_until=0, record_stride=1)
        assert recorded_step_indices(cfg).tolist() == list(range(1, 76))


class TestRegretCurve:
    def test_forced_shared_top_arm(self):
        # always picking arm 1 jointly in Env1-1 wastes (3/2 - 5/6) per step
        env = make_named_env("Env1-1")
        T = 50
        rec = synthetic_record(np.ones((T, 2)), env)
        curve = regret_curve([rec], env)
        t = np.arange(T + 1)
        np.testing.assert_allclose(curve, (2.0 / 3.0) * t, atol=1e-12)

    def test_perfect_play_zero_regret(self):
        env = make_named_env("Env1-1")
        arms = np.tile([1, 2], (30, 1))
        curve = regret_curve([synthetic_record(arms, env)], env)
        np.testing.assert_allclose(curve, 0.0, atol=1e-12)

    def test_zero_at_t_zero(self):
        env = make_named_env("Env1-1")
        curve = regret_curve([synthetic_record(np.ones((5, 2)), env)], env)
        assert curve[0] == 0.0

    def test_mismatched_records_rejected(self):
        env = make_named_env("Env1-1")
        a = synthetic_record(np.ones((5, 2)), env)
        b = synthetic_record(np.ones((6, 2)), env)
        with pytest.raises(ValueError):
            regret_curve([a, b], env)
        with pytest.raises(ValueError):
            regret_curve([], env)


class TestRmseCurve:
    def test_identical_traces_zero(self):
        env = make_named_env("Env1-1")
        rec = synthetic_record(np.ones((10, 2)), env)
        assert rmse_curve([rec], t=5, n=1) == 0.0

    def test_constant_gap_recovers_gap(self):
        env = make_named_env("Env1-1")
        n = env.n_arms
        p_hat = np.full((10, 2, n), 0.3)
        q = np.full((10, 2, n), 0.2)
        rec = synthetic_record(np.ones((10, 2)), env, p_hat=p_hat, q=q)
        assert rmse_curve([rec], t=3, n=2) == pytest.approx(0.1, abs=1e-12)

    def test_unrecorded_step_rejected(self):
        cfg = tiny_config(horizon=100, dense_until=0, record_stride=10)
        rec = run_trial(cfg, 0)
        with pytest.raises(ValueError):
            rmse_curve([rec], t=5, n=1)


class TestRunBatch:
    def test_summary_matches_direct_curves(self):
        cfg = tiny_config(horizon=120, trials=4, dense_until=120)
        records = [run_trial(cfg, e) for e in range(cfg.trials)]
        summary = run_batch(cfg)
        np.testing.assert_allclose(
            summary.regret, regret_curve(records, cfg.env), atol=1e-12
        )
        np.testing.assert_allclose(
            summary.rmse[2, 0], rmse_curve(records, t=3, n=1), atol=1e-12
        )
        psep = np.stack([r.p_sep for r in records])
        np.testing.assert_allclose(summary.psep_mean, psep.mean(axis=0), atol=1e-15)
        np.testing.assert_allclose(summary.psep_min, psep.min(axis=0), atol=0)
        np.testing.assert_allclose(summary.psep_max, psep.max(axis=0), atol=0)
        assert summary.conflict_count == 0

    def test_parallel_equals_serial(self):
        serial = run_batch(tiny_config(horizon=80, trials=4, threads=1))
        parallel = run_batch(tiny_config(horizon=80, trials=4, threads=2))
        np.testing.assert_array_equal(serial.regret, parallel.regret)
        np.testing.assert_array_equal(serial.rmse, parallel.rmse)
        np.testing.assert_array_equal(serial.psep_min, parallel.psep_min)
        assert serial.final_regret_se == parallel.final_regret_se

    def test_config_validation(self):
        with pytest.raises(ValueError):
            tiny_config(method="quantum")
        with pytest.raises(ValueError):
            tiny_config(horizon=0)
        with pytest.raises(ValueError):
            tiny_config(lam=0.0)


class TestSweep:
    def test_singleton_grid_matches_single_run(self):
        cfg = tiny_config(horizon=100, trials=3)
        rows = sweep_lambda(cfg, [0.11])
        single = run_batch(cfg)
        assert len(rows) == 1
        assert rows[0].final_regret == pytest.approx(single.final_regret, abs=1e-12)
        assert rows[0].method == "proposed"

    def test_grid_size(self):
        cfg = tiny_config(horizon=50, trials=2)
        rows = sweep_lambda(cfg, [0.05, 0.10, 0.15])
        assert [r.lam for r in rows] == [0.05, 0.10, 0.15]

    def test_rejects_bad_lambda(self):
        with pytest.raises(ValueError):
            sweep_lambda(tiny_config(), [0.1, -0.2])
