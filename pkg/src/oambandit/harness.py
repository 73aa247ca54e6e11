"""Trial execution, metric aggregation, and hyperparameter sweeps.

A run is E independent trials of T steps.  Trial e draws every random number
from a child stream spawned as SeedSequence(master_seed, spawn_key=(e,)), so
results are reproducible bit for bit and independent of execution order;
trials can therefore run in worker processes and be reduced in index order.
"""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels
from .baseline import BASELINE_P_SEP
from .env import Environment, draw_rewards
from .errors import DegenerateStateError
from .phaseopt import OptimizerSettings
from .quantum import SHUTDOWN_EPS

METHODS = ("proposed", "baseline")


@dataclass(frozen=True)
class RunConfig:
    """Everything one run depends on; defaults follow the headline setup."""

    env: Environment
    method: str = "proposed"
    horizon: int = 10_000
    trials: int = 100
    lam: float = 0.11
    seed: int = 1
    optimizer: OptimizerSettings = field(default_factory=OptimizerSettings)
    record_stride: int = 10
    dense_until: int = 1_000
    threads: int | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}")
        if self.horizon < 1 or self.trials < 1:
            raise ValueError("horizon and trials must be at least 1")
        if self.lam <= 0.0:
            raise ValueError("lambda must be positive")
        if self.record_stride < 1:
            raise ValueError("record_stride must be at least 1")


@dataclass
class TrialRecord:
    """Per-step traces of one trial.

    Heavy probability traces are kept only at the recorded steps (dense early
    prefix, then strided); everything needed for exact regret is full length.
    """

    trial_index: int
    master_seed: int
    arms: np.ndarray  # (T, 2) int32, 1-based
    rewards: np.ndarray  # (T, 2)
    p_sep: np.ndarray  # (T,)
    attempts: np.ndarray  # (T,) int64
    objectives: np.ndarray  # (T, 2); NaN for the baseline method
    recorded_steps: np.ndarray  # (R,) int32, 1-based
    p_hat: np.ndarray  # (R, 2, N)
    q: np.ndarray  # (R, 2, N)

    @property
    def horizon(self) -> int:
        return self.arms.shape[0]


@dataclass
class RunSummary:
    """Cross-trial aggregates of one run."""

    method: str
    lam: float
    horizon: int
    trials: int
    regret: np.ndarray  # (T + 1,), index t, regret[0] = 0
    final_regret: float
    final_regret_se: float
    psep_mean: np.ndarray  # (T,), index t - 1
    psep_min: np.ndarray
    psep_max: np.ndarray
    recorded_steps: np.ndarray  # (R,)
    rmse: np.ndarray  # (R, N)
    conflict_count: int
    attempts_mean: float


def trial_rng(master_seed: int, trial_index: int) -> np.random.Generator:
    """The documented child-stream scheme: spawn key is the trial index."""
    ss = np.random.SeedSequence(entropy=master_seed, spawn_key=(trial_index,))
    return np.random.Generator(np.random.PCG64(ss))


def recorded_step_indices(config: RunConfig) -> np.ndarray:
    """1-based steps whose probability traces are kept."""
    t = np.arange(1, config.horizon + 1)
    keep = (t <= config.dense_until) | (t % config.record_stride == 0)
    return t[keep].astype(np.int32)


def run_trial(config: RunConfig, trial_index: int) -> TrialRecord:
    """Play one full episode and return its traces.

    Each step: both players turn their win/loss history into selection
    weights, optimize their phases against their own weights, and encode the
    resulting state; the joint interference outcome is sampled post-selected
    on separation, rewards are drawn, and the histories are updated.  The
    baseline method swaps the interference step for the attenuator rule but
    shares every other part of the loop.
    """
    env = config.env
    n = env.n_arms
    T = config.horizon
    proposed = config.method == "proposed"
    opt = config.optimizer
    rng = trial_rng(config.seed, trial_index)

    wins = [np.zeros(n, dtype=np.int64), np.zeros(n, dtype=np.int64)]
    losses = [np.zeros(n, dtype=np.int64), np.zeros(n, dtype=np.int64)]

    arms = np.zeros((T, 2), dtype=np.int32)
    rewards = np.zeros((T, 2))
    p_sep_trace = np.zeros(T)
    attempts_trace = np.zeros(T, dtype=np.int64)
    objectives = np.full((T, 2), np.nan)
    rec_steps = recorded_step_indices(config)
    p_hat_rec = np.zeros((rec_steps.size, 2, n))
    q_rec = np.zeros((rec_steps.size, 2, n))
    rec_pos = {int(t): k for k, t in enumerate(rec_steps)}

    spiral = _kernels.spiral_phases(n)
    warm = [spiral, spiral]
    p_hats = [np.empty(n), np.empty(n)]
    thetas = [np.empty(n), np.empty(n)]

    for step in range(1, T + 1):
        for m in (0, 1):
            mu_hat, all_seen = _kernels.win_rates(wins[m], losses[m])
            beta = config.lam * step if all_seen else 0.0
            p_hats[m] = _kernels.top_two_softmax(mu_hat, beta)
            if proposed:
                start = warm[m] if opt.warm_start else spiral
                omega, fval, _, _ = _kernels.minimize_phases(
                    p_hats[m], start, opt.tol_grad, opt.tol_f, opt.max_iter
                )
                warm[m] = omega
                objectives[step - 1, m] = fval
                sign = -1.0 if m == 0 else 1.0
                thetas[m] = sign * 0.5 * omega

        if proposed:
            probs = _kernels.joint_pair_probs(
                np.sqrt(p_hats[0]), thetas[0], np.sqrt(p_hats[1]), thetas[1]
            )
            p_sep = min(_kernels.matrix_total(probs), 0.5)
            if p_sep <= SHUTDOWN_EPS:
                raise DegenerateStateError(p_sep, step=step)
            q1 = _kernels.row_marginals(probs) / p_sep
            q2 = q1
        else:
            probs, total = _kernels.attenuator_pair_probs(p_hats[0], p_hats[1])
            if total <= 0.0:
                raise DegenerateStateError(0.0, step=step)
            p_sep = BASELINE_P_SEP
            q1 = _kernels.row_marginals(probs)
            q2 = _kernels.row_marginals(probs.T.copy())

        i, j = _kernels.sample_pair(probs, rng.random())
        attempts = _kernels.geometric_draw(rng.random(), p_sep)
        arm1, arm2 = i + 1, j + 1

        out1, out2 = draw_rewards(env, arm1, arm2, rng)
        for m, arm, out in ((0, arm1, out1), (1, arm2, out2)):
            if out.reward > 0.0:
                wins[m][arm - 1] += 1
            else:
                losses[m][arm - 1] += 1

        arms[step - 1, 0] = arm1
        arms[step - 1, 1] = arm2
        rewards[step - 1, 0] = out1.reward
        rewards[step - 1, 1] = out2.reward
        p_sep_trace[step - 1] = p_sep
        attempts_trace[step - 1] = attempts
        k = rec_pos.get(step)
        if k is not None:
            p_hat_rec[k, 0] = p_hats[0]
            p_hat_rec[k, 1] = p_hats[1]
            q_rec[k, 0] = q1
            q_rec[k, 1] = q2

    return TrialRecord(
        trial_index=trial_index,
        master_seed=config.seed,
        arms=arms,
        rewards=rewards,
        p_sep=p_sep_trace,
        attempts=attempts_trace,
        objectives=objectives,
        recorded_steps=rec_steps,
        p_hat=p_hat_rec,
        q=q_rec,
    )


def _expected_reward_sums(record: TrialRecord, env: Environment) -> np.ndarray:
    """Per-step expected collected reward (1 - delta/2) * (mu_a + mu_b)."""
    mu = env.reward_probs
    a = record.arms[:, 0] - 1
    b = record.arms[:, 1] - 1
    weight = np.where(a == b, 0.5, 1.0)
    return weight * (mu[a] + mu[b])


def regret_curve(records: list[TrialRecord], env: Environment) -> np.ndarray:
    """Mean regret trace over trials, indexed by t with regret[0] = 0.

    Uses the true arm means, not realized rewards: the subtracted term is the
    empirical mean over trials of the cumulative expected reward sum.
    """
    if not records:
        raise ValueError("no trial records given")
    T = records[0].horizon
    if any(r.horizon != T for r in records):
        raise ValueError("records disagree on the horizon")
    top_two = np.sort(env.reward_probs)[-2:].sum()
    mean_contrib = np.zeros(T)
    for r in records:
        mean_contrib += _expected_reward_sums(r, env)
    mean_contrib /= len(records)
    out = np.zeros(T + 1)
    out[1:] = top_two * np.arange(1, T + 1) - np.cumsum(mean_contrib)
    return out


def rmse_curve(records: list[TrialRecord], t: int, n: int) -> float:
    """Root-mean-square gap between desired and output probability.

    Per-player RMS over trials at recorded step t for 1-based arm n, averaged
    over the two players.
    """
    if not records:
        raise ValueError("no trial records given")
    steps = records[0].recorded_steps
    pos = np.searchsorted(steps, t)
    if pos >= steps.size or steps[pos] != t:
        raise ValueError(f"step {t} is not a recorded step")
    total = 0.0
    for m in (0, 1):
        sq = [
            (r.p_hat[pos, m, n - 1] - r.q[pos, m, n - 1]) ** 2 for r in records
        ]
        total += 0.5 * np.sqrt(np.mean(sq))
    return total


class _Accumulator:
    """Streaming reduction of trial records into a RunSummary."""

    def __init__(self, config: RunConfig):
        self.config = config
        T = config.horizon
        rec = recorded_step_indices(config)
        n = config.env.n_arms
        self.contrib_sum = np.zeros(T)
        self.final_sums: list[float] = []
        self.psep_sum = np.zeros(T)
        self.psep_min = np.full(T, np.inf)
        self.psep_max = np.full(T, -np.inf)
        self.sq_err_sum = np.zeros((rec.size, 2, n))
        self.recorded_steps = rec
        self.conflicts = 0
        self.attempts_total = 0.0
        self.count = 0

    def add(self, record: TrialRecord) -> None:
        contrib = _expected_reward_sums(record, self.config.env)
        self.contrib_sum += contrib
        self.final_sums.append(float(contrib.sum()))
        self.psep_sum += record.p_sep
        np.minimum(self.psep_min, record.p_sep, out=self.psep_min)
        np.maximum(self.psep_max, record.p_sep, out=self.psep_max)
        self.sq_err_sum += (record.p_hat - record.q) ** 2
        self.conflicts += int(np.sum(record.arms[:, 0] == record.arms[:, 1]))
        self.attempts_total += float(record.attempts.sum())
        self.count += 1

    def finalize(self) -> RunSummary:
        cfg = self.config
        E = self.count
        T = cfg.horizon
        top_two = np.sort(cfg.env.reward_probs)[-2:].sum()
        regret = np.zeros(T + 1)
        regret[1:] = top_two * np.arange(1, T + 1) - np.cumsum(self.contrib_sum / E)
        finals = top_two * T - np.asarray(self.final_sums)
        se = float(np.std(finals, ddof=1) / np.sqrt(E)) if E > 1 else 0.0
        rmse = 0.5 * (
            np.sqrt(self.sq_err_sum[:, 0, :] / E) + np.sqrt(self.sq_err_sum[:, 1, :] / E)
        )
        return RunSummary(
            method=cfg.method,
            lam=cfg.lam,
            horizon=T,
            trials=E,
            regret=regret,
            final_regret=float(regret[-1]),
            final_regret_se=se,
            psep_mean=self.psep_sum / E,
            psep_min=self.psep_min,
            psep_max=self.psep_max,
            recorded_steps=self.recorded_steps,
            rmse=rmse,
            conflict_count=self.conflicts,
            attempts_mean=self.attempts_total / (E * T),
        )


def _run_trial_args(args: tuple[RunConfig, int]) -> TrialRecord:
    return run_trial(*args)


def run_batch(config: RunConfig) -> RunSummary:
    """Run all trials of a config and reduce them in trial order."""
    acc = _Accumulator(config)
    workers = config.threads or min(os.cpu_count() or 1, config.trials)
    jobs = ((config, e) for e in range(config.trials))
    if workers <= 1:
        for job in jobs:
            acc.add(_run_trial_args(job))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for record in pool.map(_run_trial_args, jobs, chunksize=1):
                acc.add(record)
    return acc.finalize()


@dataclass(frozen=True)
class SweepRow:
    lam: float
    method: str
    final_regret: float
    std_error: float


def sweep_lambda(base: RunConfig, lambdas) -> list[SweepRow]:
    """Rerun the base config across a lambda grid.

    Every lambda reuses the same master seed, hence the same per-trial child
    streams, which removes seed noise from the cross-lambda comparison.
    """
    rows = []
    for lam in lambdas:
        if lam <= 0.0:
            raise ValueError("lambda values must be positive")
        summary = run_batch(replace(base, lam=float(lam)))
        rows.append(
            SweepRow(
                lam=float(lam),
                method=base.method,
                final_regret=summary.final_regret,
                std_error=summary.final_regret_se,
            )
        )
    return rows
