"""Command-line entry point: run, sweep, and verify.

A run config is a single JSON document; unknown keys anywhere in it are
rejected so that configs stay portable across implementations.  All output
files are derived deterministically from (config, seed): floats are printed
with 17 significant digits, and aggregation happens in trial order
regardless of how many worker processes computed the trials.

Config schema (all fields optional, defaults in parentheses):

    {
      "env":           {"name": "Env1-1"} or {"probs": [..]}   (Env1-1)
      "method":        "proposed" | "baseline"                 (proposed)
      "T":             horizon steps                           (10000)
      "E":             trials                                  (100)
      "lambda":        inverse-temperature slope               (0.11)
      "lambda_grid":   list of slopes, sweep only              (0.01..0.15)
      "seed":          master seed, uint64                     (1)
      "optimizer":     {"tol_grad", "tol_f", "max_iter", "warm_start"}
      "record_stride": keep probability traces every k-th step (10)
      "out_dir":       output directory                        ("out")
    }
"""

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import verify
from .env import Environment, make_named_env
from .errors import ConfigError, OamBanditError
from .harness import METHODS, RunConfig, run_batch, sweep_lambda
from .phaseopt import OptimizerSettings

DEFAULT_GRID = [round(0.01 * k, 2) for k in range(1, 16)]

_TOP_KEYS = {
    "env", "method", "T", "E", "lambda", "lambda_grid", "seed",
    "optimizer", "record_stride", "out_dir",
}
_ENV_KEYS = {"name", "probs"}
_OPT_KEYS = {"tol_grad", "tol_f", "max_iter", "warm_start"}


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _reject_unknown(doc: dict, allowed: set, where: str) -> None:
    unknown = set(doc) - allowed
    if unknown:
        name = sorted(unknown)[0]
        raise ConfigError(f"unknown field {name!r} in {where}")


def _parse_env(doc) -> Environment:
    if not isinstance(doc, dict):
        raise ConfigError("'env' must be an object")
    _reject_unknown(doc, _ENV_KEYS, "env")
    if "name" in doc and "probs" in doc:
        raise ConfigError("'env' takes either 'name' or 'probs', not both")
    if "name" in doc:
        return make_named_env(doc["name"])
    if "probs" in doc:
        try:
            return Environment(reward_probs=np.asarray(doc["probs"], dtype=float))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad 'env.probs': {exc}") from exc
    raise ConfigError("'env' needs a 'name' or a 'probs' list")


def load_config(doc: dict) -> tuple[RunConfig, list[float], Path]:
    """Validate a config document into (RunConfig, lambda grid, out_dir)."""
    if not isinstance(doc, dict):
        raise ConfigError("config root must be a JSON object")
    _reject_unknown(doc, _TOP_KEYS, "config")
    opt_doc = doc.get("optimizer", {})
    if not isinstance(opt_doc, dict):
        raise ConfigError("'optimizer' must be an object")
    _reject_unknown(opt_doc, _OPT_KEYS, "optimizer")
    grid = doc.get("lambda_grid", DEFAULT_GRID)
    if not isinstance(grid, list) or not grid:
        raise ConfigError("'lambda_grid' must be a nonempty list")
    try:
        config = RunConfig(
            env=_parse_env(doc.get("env", {"name": "Env1-1"})),
            method=doc.get("method", "proposed"),
            horizon=int(doc.get("T", 10_000)),
            trials=int(doc.get("E", 100)),
            lam=float(doc.get("lambda", 0.11)),
            seed=int(doc.get("seed", 1)),
            optimizer=OptimizerSettings(
                tol_grad=float(opt_doc.get("tol_grad", 1e-8)),
                tol_f=float(opt_doc.get("tol_f", 1e-12)),
                max_iter=int(opt_doc.get("max_iter", 500)),
                warm_start=bool(opt_doc.get("warm_start", False)),
            ),
            record_stride=int(doc.get("record_stride", 10)),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    return config, [float(x) for x in grid], Path(doc.get("out_dir", "out"))


def _read_config_file(path: str | None) -> dict:
    if path is None:
        return {}
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}") from exc


def _apply_overrides(doc: dict, args: argparse.Namespace) -> dict:
    doc = dict(doc)
    if args.seed is not None:
        doc["seed"] = args.seed
    if args.out is not None:
        doc["out_dir"] = args.out
    if getattr(args, "method", None) is not None and args.method != "both":
        doc["method"] = args.method
    if getattr(args, "lam", None) is not None:
        doc["lambda"] = args.lam
    if args.trials is not None:
        doc["E"] = args.trials
    if args.horizon is not None:
        doc["T"] = args.horizon
    return doc


def write_curves(path: Path, summary) -> None:
    n = summary.rmse.shape[1]
    header = "t,regret,psep_mean,psep_min,psep_max," + ",".join(
        f"rmse_arm{k + 1}" for k in range(n)
    )
    lines = [header]
    for row, t in enumerate(summary.recorded_steps):
        cells = [
            str(int(t)),
            _fmt(summary.regret[t]),
            _fmt(summary.psep_mean[t - 1]),
            _fmt(summary.psep_min[t - 1]),
            _fmt(summary.psep_max[t - 1]),
        ]
        cells.extend(_fmt(v) for v in summary.rmse[row])
        lines.append(",".join(cells))
    path.write_text("\n".join(lines) + "\n")


def write_summary(path: Path, config: RunConfig, summary) -> None:
    doc = {
        "env": {
            "name": config.env.name,
            "probs": [float(x) for x in config.env.reward_probs],
        },
        "method": summary.method,
        "T": summary.horizon,
        "E": summary.trials,
        "lambda": summary.lam,
        "seed": config.seed,
        "final_regret": summary.final_regret,
        "final_regret_se": summary.final_regret_se,
        "conflict_count": summary.conflict_count,
        "psep_final_mean": float(summary.psep_mean[-1]),
        "psep_overall_min": float(summary.psep_min.min()),
        "attempts_mean": summary.attempts_mean,
    }
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def write_sweep(path: Path, rows) -> None:
    lines = ["lambda,method,final_regret,std_error"]
    for r in rows:
        lines.append(
            f"{_fmt(r.lam)},{r.method},{_fmt(r.final_regret)},{_fmt(r.std_error)}"
        )
    path.write_text("\n".join(lines) + "\n")


def cmd_run(args: argparse.Namespace) -> int:
    doc = _apply_overrides(_read_config_file(args.config), args)
    config, _, out_dir = load_config(doc)
    if args.threads is not None:
        config = replace(config, threads=args.threads)
    out_dir.mkdir(parents=True, exist_ok=True)
    summary = run_batch(config)
    write_summary(out_dir / "summary.json", config, summary)
    write_curves(out_dir / "curves.csv", summary)
    print(
        f"{config.method} on {config.env.name or 'custom env'}: "
        f"final regret {summary.final_regret:.4f} "
        f"(se {summary.final_regret_se:.4f}), conflicts {summary.conflict_count}"
    )
    print(f"wrote {out_dir / 'summary.json'} and {out_dir / 'curves.csv'}")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    doc = _apply_overrides(_read_config_file(args.config), args)
    config, grid, out_dir = load_config(doc)
    if args.threads is not None:
        config = replace(config, threads=args.threads)
    if args.lam is not None:
        grid = [args.lam]
    methods = list(METHODS) if args.method == "both" else [config.method]
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for method in methods:
        base = replace(config, method=method)
        rows.extend(sweep_lambda(base, grid))
    write_sweep(out_dir / "sweep.csv", rows)
    for r in rows:
        print(
            f"lambda={r.lam:.2f} {r.method}: final regret "
            f"{r.final_regret:.4f} (se {r.std_error:.4f})"
        )
    print(f"wrote {out_dir / 'sweep.csv'}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    ok, results = verify.run_all(seed=args.seed if args.seed is not None else 1234)
    for r in results:
        print(r.line())
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oambandit",
        description="Conflict-free two-player bandit simulation and benchmarks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_method_both=False):
        p.add_argument("--config", help="path to a JSON config file")
        p.add_argument("--seed", type=int, help="master seed (overrides config)")
        p.add_argument("--out", help="output directory (overrides config)")
        choices = [*METHODS, "both"] if with_method_both else list(METHODS)
        p.add_argument("--method", choices=choices, help="selection method")
        p.add_argument("--lambda", dest="lam", type=float, help="schedule slope")
        p.add_argument("--trials", type=int, help="number of trials E")
        p.add_argument("--horizon", type=int, help="steps per trial T")
        p.add_argument("--threads", type=int, help="worker processes")

    p_run = sub.add_parser("run", help="run one configuration and write curves")
    common(p_run)
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="rerun a configuration across lambdas")
    common(p_sweep, with_method_both=True)
    p_sweep.set_defaults(func=cmd_sweep)

    p_verify = sub.add_parser("verify", help="run randomized core-identity checks")
    p_verify.add_argument("--seed", type=int, help="seed for the random instances")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OamBanditError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
