"""Command-line entry point: simulate, generate, serve, report."""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .bandit import FULL_INFORMATION, PARTIAL_FEEDBACK, PolicyConfig, parse_policy
from .evaluate import render_table, summary_from_dict, summary_to_dict
from .fixtures import load_fixture, save_fixture, table6_dataset, table6_models
from .simulate import run_experiment, write_steps_csv
from .synth import generate_dataset, generate_model_set

DEFAULT_MODEL_SETS: list[list[float]] = [
    [0.59, 0.70, 0.77, 0.80],
    [0.70, 0.78, 0.82, 0.88],
    [0.50, 0.53, 0.54, 0.59],
]
DEFAULT_POLICIES = ["epsilon=0", "epsilon=0.1", "ucb", "ts"]
DEFAULT_SEED = 7


@dataclass
class ExperimentConfig:
    n_modules: int = 100
    n_faulty: int = 15
    model_sets: list[list[float]] = field(default_factory=lambda: [list(s) for s in DEFAULT_MODEL_SETS])
    policies: list[str] = field(default_factory=lambda: list(DEFAULT_POLICIES))
    iterations: int = 10
    base_seed: int = DEFAULT_SEED
    feedback: str = FULL_INFORMATION
    output_dir: str = "out"
    workers: int = 1
    write_steps: bool = True

    def validate(self) -> None:
        if self.n_modules < 1:
            raise ValueError(f"n_modules must be positive, got {self.n_modules}")
        if not 0 < self.n_faulty <= self.n_modules:
            raise ValueError(
                f"n_faulty must be in [1, n_modules={self.n_modules}], got {self.n_faulty}"
            )
        if self.n_faulty == self.n_modules:
            raise ValueError("all-faulty datasets have undefined AUC")
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if not self.model_sets or any(not s for s in self.model_sets):
            raise ValueError("model_sets must contain at least one non-empty target list")
        if self.feedback not in (FULL_INFORMATION, PARTIAL_FEEDBACK):
            raise ValueError(f"feedback must be 'full' or 'partial', got {self.feedback!r}")
        for spec in self.policies:
            parse_policy(spec)

    def policy_configs(self) -> list[PolicyConfig]:
        return [parse_policy(spec, feedback=self.feedback) for spec in self.policies]

    def to_dict(self) -> dict:
        return {
            "n_modules": self.n_modules,
            "n_faulty": self.n_faulty,
            "model_sets": self.model_sets,
            "policies": self.policies,
            "iterations": self.iterations,
            "base_seed": self.base_seed,
            "feedback": self.feedback,
        }


def _config_from_file(path: str) -> ExperimentConfig:
    with open(path, encoding="utf-8") as handle:
        data = json.load(handle)
    config = ExperimentConfig()
    if "n_modules" in data:
        config.n_modules = int(data["n_modules"])
    if "n_faulty" in data:
        config.n_faulty = int(data["n_faulty"])
    targets = data.get("model_target_aucs", data.get("model_sets"))
    if targets is not None:
        if targets and isinstance(targets[0], (int, float)):
            config.model_sets = [[float(t) for t in targets]]
        else:
            config.model_sets = [[float(t) for t in group] for group in targets]
    if "policies" in data:
        config.policies = [str(p) for p in data["policies"]]
    if "iterations" in data:
        config.iterations = int(data["iterations"])
    if "base_seed" in data:
        config.base_seed = int(data["base_seed"])
    if "feedback" in data:
        config.feedback = str(data["feedback"])
    if "output_dir" in data:
        config.output_dir = str(data["output_dir"])
    return config


def _parse_model_sets(text: str) -> list[list[float]]:
    # "0.59,0.7,0.77,0.8;0.7,0.78,0.82,0.88" -> two sets
    return [
        [float(value) for value in group.split(",") if value.strip()]
        for group in text.split(";")
        if group.strip()
    ]


def set_label(index: int) -> str:
    return f"set{index + 1}"


def cmd_simulate(config: ExperimentConfig) -> int:
    config.validate()
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    policies = config.policy_configs()

    sets_payload = []
    tables = []
    for index, targets in enumerate(config.model_sets):
        result = run_experiment(
            config.n_modules,
            config.n_faulty,
            targets,
            policies,
            config.iterations,
            config.base_seed,
            log_steps=config.write_steps,
            workers=config.workers,
        )
        label = set_label(index)
        if config.write_steps and result.runs is not None:
            model_ids = [f"Model{i + 1}" for i in range(len(targets))]
            write_steps_csv(out_dir / f"steps_{label}.csv", result.runs, model_ids)
        sets_payload.append(
            {
                "label": label,
                "targets": targets,
                "summary": summary_to_dict(result.summary),
            }
        )
        title = f"{label}: model targets {', '.join(f'{t:g}' for t in targets)}"
        tables.append(render_table(result.summary, title))

    payload = {"config": config.to_dict(), "sets": sets_payload}
    (out_dir / "summary.json").write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    text = "\n".join(tables)
    (out_dir / "tables.txt").write_text(text, encoding="utf-8")
    print(text, end="")
    return 0


def cmd_generate(args: argparse.Namespace) -> int:
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    if args.fixture == "table6":
        save_fixture(out, table6_dataset(), table6_models())
        print(f"wrote six-module worked-example fixture to {out}")
        return 0
    if not 0 < args.n_faulty < args.n_modules:
        raise ValueError(
            f"n_faulty must be in [1, n_modules-1], got {args.n_faulty} of {args.n_modules}"
        )
    targets = [float(t) for t in args.target_aucs.split(",") if t.strip()]
    if not targets:
        raise ValueError("need at least one target AUC")
    master = random.Random(args.seed)
    dataset = generate_dataset(args.n_modules, args.n_faulty, master.randrange(2**32))
    models = generate_model_set(dataset, targets, master.randrange(2**32))
    save_fixture(out, dataset, models)
    achieved = ", ".join(f"{m.model_id}={m.achieved_auc:.4f}" for m in models)
    print(f"wrote {args.n_modules}-module fixture to {out} ({achieved})")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    _, models = load_fixture(args.fixture)
    policy = parse_policy(args.policy)
    app = create_app(default_models=models, default_policy=policy)
    if args.ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=args.ui_dir, html=True), name="ui")
    host, _, port = args.bind.rpartition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    with open(args.summary, encoding="utf-8") as handle:
        payload = json.load(handle)
    for entry in payload["sets"]:
        summary = summary_from_dict(entry["summary"])
        targets = ", ".join(f"{t:g}" for t in entry["targets"])
        print(render_table(summary, f"{entry['label']}: model targets {targets}"))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="faultbandit",
        description="Bandit-driven selection among fault-prediction models",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run the synthetic experiment")
    p_sim.add_argument("--config", help="JSON file with experiment settings")
    p_sim.add_argument("--n-modules", type=int)
    p_sim.add_argument("--n-faulty", type=int)
    p_sim.add_argument("--model-sets", help="semicolon-separated target lists, e.g. '0.59,0.7;0.8,0.9'")
    p_sim.add_argument("--policies", help="comma-separated, e.g. 'epsilon=0,epsilon=0.1,ucb,ts'")
    p_sim.add_argument("--iterations", type=int)
    p_sim.add_argument("--seed", type=int)
    p_sim.add_argument("--feedback", choices=[FULL_INFORMATION, PARTIAL_FEEDBACK])
    p_sim.add_argument("--out-dir")
    p_sim.add_argument("--workers", type=int, default=1)
    p_sim.add_argument("--no-steps", action="store_true", help="skip the per-step CSV logs")

    p_gen = sub.add_parser("generate", help="write a dataset+models fixture")
    p_gen.add_argument("--fixture", choices=["table6"], help="write a named fixture instead")
    p_gen.add_argument("--n-modules", type=int, default=100)
    p_gen.add_argument("--n-faulty", type=int, default=15)
    p_gen.add_argument("--target-aucs", default="0.59,0.70,0.77,0.80")
    p_gen.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_gen.add_argument("--out", required=True)

    p_serve = sub.add_parser("serve", help="run the advisor HTTP service")
    p_serve.add_argument("--fixture", required=True, help="models fixture JSON")
    p_serve.add_argument("--policy", default="epsilon=0")
    p_serve.add_argument("--bind", default="127.0.0.1:8000")
    p_serve.add_argument("--ui-dir", help="directory of built web-client assets to serve at /ui")

    p_rep = sub.add_parser("report", help="render tables from a summary.json")
    p_rep.add_argument("--summary", required=True)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "simulate":
            config = _config_from_file(args.config) if args.config else ExperimentConfig()
            if args.n_modules is not None:
                config.n_modules = args.n_modules
            if args.n_faulty is not None:
                config.n_faulty = args.n_faulty
            if args.model_sets is not None:
                config.model_sets = _parse_model_sets(args.model_sets)
            if args.policies is not None:
                config.policies = [p.strip() for p in args.policies.split(",") if p.strip()]
            if args.iterations is not None:
                config.iterations = args.iterations
            if args.seed is not None:
                config.base_seed = args.seed
            if args.feedback is not None:
                config.feedback = args.feedback
            if args.out_dir is not None:
                config.output_dir = args.out_dir
            config.workers = args.workers
            config.write_steps = not args.no_steps
            return cmd_simulate(config)
        if args.command == "generate":
            return cmd_generate(args)
        if args.command == "serve":
            return cmd_serve(args)
        if args.command == "report":
            return cmd_report(args)
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
