"""Sequential test-execution engine.

Each step selects an arm, tests that arm's highest-priority untested
module, reveals the module's true faultiness, and hands out rewards (to
every arm under full information, to the chosen arm only under partial
feedback).  The run's output classifier is the composite prediction
vector: for every module, the label assigned by whichever arm was chosen
at the step the module was tested.
"""

from __future__ import annotations

import csv
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .bandit import (
    FP,
    FULL_INFORMATION,
    ArmState,
    PolicyConfig,
    PolicyState,
    reward_of,
    update_full,
    update_partial,
)
from .evaluate import ExperimentSummary, auc_mann_whitney, build_summary
from .synth import Dataset, PredictionModel, binary_auc, generate_dataset, generate_model_set


@dataclass(slots=True)
class TrialStep:
    """One row of the trial log.

    ``rewards`` holds one entry per arm; in partial-feedback mode the
    unplayed arms' entries are None.
    """

    t: int
    chosen_arm: str
    tested_module: str
    used_prediction: str
    actual_faulty: bool
    rewards: tuple[int | None, ...]
    post_averages: tuple[float, ...]


@dataclass
class RunResult:
    policy: str
    seed: int
    model_ids: tuple[str, ...]
    steps: list[TrialStep]
    composite: dict[str, str]
    composite_auc: float
    final_arms: list[ArmState]


def next_untested_module(model: PredictionModel, tested: set[str]) -> str | None:
    """First module in the model's priority order not yet tested."""
    for module_id in model.priority_order:
        if module_id not in tested:
            return module_id
    return None


@dataclass
class _PreparedInputs:
    """Dataset/model tables shared by every policy run of one iteration."""

    ids: list[str]
    truth: list[bool]
    priority_positions: list[list[int]]
    reward_matrix: list[tuple[int, ...]]


def _prepare(dataset: Dataset, models: Sequence[PredictionModel]) -> _PreparedInputs:
    if not models:
        raise ValueError("need at least one prediction model")
    ids = dataset.module_ids()
    id_set = set(ids)
    for model in models:
        if set(model.predictions) != id_set:
            raise ValueError(
                f"model {model.model_id!r} does not cover the dataset's modules"
            )
    position = {module_id: pos for pos, module_id in enumerate(ids)}
    truth = [m.actual_faulty for m in dataset.modules]
    priority_positions = [
        [position[module_id] for module_id in model.priority_order] for model in models
    ]
    reward_matrix = [
        tuple(reward_of(model.predictions[ids[pos]], truth[pos]) for model in models)
        for pos in range(len(ids))
    ]
    return _PreparedInputs(ids, truth, priority_positions, reward_matrix)


def run_simulation(
    dataset: Dataset,
    models: Sequence[PredictionModel],
    policy: PolicyConfig,
    seed: int,
    log_steps: bool = True,
    prepared: _PreparedInputs | None = None,
) -> RunResult:
    """Run the selection loop over every module of the dataset.

    Deterministic for a given (dataset, models, policy, seed); the random
    source is consumed by arm selection only, so ``log_steps`` does not
    change the outcome.  ``prepared`` lets callers running several policies
    on the same inputs reuse the precomputed reward tables.
    """
    if prepared is None:
        prepared = _prepare(dataset, models)
    ids = prepared.ids
    truth = prepared.truth
    priority_positions = prepared.priority_positions
    reward_matrix = prepared.reward_matrix

    n = len(ids)
    n_arms = len(models)
    full_info = policy.feedback == FULL_INFORMATION
    arms = [ArmState() for _ in models]
    selector = PolicyState(policy)
    rng = random.Random(seed)
    cursors = [0] * n_arms
    tested = [False] * n
    chosen_by_pos = [0] * n
    steps: list[TrialStep] = []

    for t in range(1, n + 1):
        chosen = selector.select(arms, t, rng)
        order = priority_positions[chosen]
        cursor = cursors[chosen]
        while tested[order[cursor]]:
            cursor += 1
        cursors[chosen] = cursor
        pos = order[cursor]
        tested[pos] = True
        chosen_by_pos[pos] = chosen

        rewards = reward_matrix[pos]
        if full_info:
            # inlined update_full: rewards are +-1 by construction
            for arm, reward in zip(arms, rewards):
                if reward == 1:
                    arm.ts_successes += 1
                else:
                    arm.ts_failures += 1
                arm.pulls += 1
                arm.cumulative_reward += reward
            logged_rewards: tuple[int | None, ...] = rewards
        else:
            update_partial(arms, chosen, rewards[chosen])
            logged_rewards = tuple(
                rewards[i] if i == chosen else None for i in range(n_arms)
            )

        if log_steps:
            steps.append(
                TrialStep(
                    t=t,
                    chosen_arm=models[chosen].model_id,
                    tested_module=ids[pos],
                    used_prediction=models[chosen].predictions[ids[pos]],
                    actual_faulty=truth[pos],
                    rewards=logged_rewards,
                    post_averages=tuple(arm.average_reward() for arm in arms),
                )
            )

    composite = {
        ids[pos]: models[chosen_by_pos[pos]].predictions[ids[pos]] for pos in range(n)
    }
    scores = [1.0 if composite[ids[pos]] == FP else 0.0 for pos in range(n)]
    composite_auc = auc_mann_whitney(scores, truth)
    return RunResult(
        policy=policy.label,
        seed=seed,
        model_ids=tuple(model.model_id for model in models),
        steps=steps,
        composite=composite,
        composite_auc=composite_auc,
        final_arms=arms,
    )


@dataclass
class ExperimentResult:
    summary: ExperimentSummary
    model_targets: list[float]
    policies: list[PolicyConfig]
    base_seed: int
    runs: dict[str, list[RunResult]] | None = None


def _iteration_task(
    args: tuple[int, int, tuple[float, ...], tuple[PolicyConfig, ...], int, bool],
) -> tuple[list[float], list[float], list[RunResult] | None]:
    """One experiment iteration; module-level so it can cross process boundaries."""
    n_modules, n_faulty, targets, policies, seed, log_steps = args
    master = random.Random(seed)
    dataset = generate_dataset(n_modules, n_faulty, master.randrange(2**32))
    models = generate_model_set(dataset, list(targets), master.randrange(2**32))
    policy_seeds = [master.randrange(2**32) for _ in policies]
    baseline_aucs = [binary_auc(model, dataset) for model in models]
    prepared = _prepare(dataset, models)
    runs = [
        run_simulation(dataset, models, policy, run_seed, log_steps=log_steps, prepared=prepared)
        for policy, run_seed in zip(policies, policy_seeds)
    ]
    policy_aucs = [run.composite_auc for run in runs]
    return policy_aucs, baseline_aucs, (runs if log_steps else None)


def run_experiment(
    n_modules: int,
    n_faulty: int,
    model_targets: Sequence[float],
    policies: Sequence[PolicyConfig],
    iterations: int,
    base_seed: int,
    log_steps: bool = False,
    workers: int | None = None,
) -> ExperimentResult:
    """Repeat the dataset/model generation and run every policy on each copy.

    Iteration i (1-based) is seeded with base_seed + i; dataset, model,
    and per-policy run seeds are then drawn from that iteration seed, so
    results are reproducible and independent of execution order (serial
    and parallel execution produce identical summaries).
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    if not policies:
        raise ValueError("need at least one policy")
    labels = [policy.label for policy in policies]
    if len(set(labels)) != len(labels):
        raise ValueError(f"duplicate policy labels: {labels}")

    tasks = [
        (n_modules, n_faulty, tuple(model_targets), tuple(policies), base_seed + i, log_steps)
        for i in range(1, iterations + 1)
    ]
    if workers is not None and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunk = max(1, iterations // (workers * 4))
            outcomes = list(pool.map(_iteration_task, tasks, chunksize=chunk))
    else:
        outcomes = [_iteration_task(task) for task in tasks]

    policy_runs: dict[str, list[float]] = {label: [] for label in labels}
    baseline_runs: dict[str, list[float]] = {
        f"Model{i + 1}": [] for i in range(len(model_targets))
    }
    runs_by_policy: dict[str, list[RunResult]] | None = (
        {label: [] for label in labels} if log_steps else None
    )
    for policy_aucs, baseline_aucs, runs in outcomes:
        for label, auc in zip(labels, policy_aucs):
            policy_runs[label].append(auc)
        for name, auc in zip(baseline_runs, baseline_aucs):
            baseline_runs[name].append(auc)
        if runs_by_policy is not None and runs is not None:
            for label, run in zip(labels, runs):
                runs_by_policy[label].append(run)

    summary = build_summary(policy_runs, baseline_runs)
    return ExperimentResult(
        summary=summary,
        model_targets=list(model_targets),
        policies=list(policies),
        base_seed=base_seed,
        runs=runs_by_policy,
    )


def write_steps_csv(
    path: str | Path,
    runs_by_policy: dict[str, list[RunResult]],
    model_ids: Iterable[str],
) -> None:
    """Trial logs as CSV: one row per (iteration, policy, step)."""
    model_ids = list(model_ids)
    header = (
        ["iteration", "step", "policy", "chosen_arm", "module_id", "prediction", "actual"]
        + [f"reward_{mid}" for mid in model_ids]
        + [f"avg_{mid}" for mid in model_ids]
    )
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for policy_label, runs in runs_by_policy.items():
            for iteration, run in enumerate(runs, start=1):
                for step in run.steps:
                    writer.writerow(
                        [
                            iteration,
                            step.t,
                            policy_label,
                            step.chosen_arm,
                            step.tested_module,
                            step.used_prediction,
                            "faulty" if step.actual_faulty else "clean",
                        ]
                        + ["" if r is None else r for r in step.rewards]
                        + [repr(avg) for avg in step.post_averages]
                    )
