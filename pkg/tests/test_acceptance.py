"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines as they
complete.  The experiment-scale checks (criterion 4) assert the ordinal
claims and the +-0.06 point windows on 1000-iteration stability runs and
require the whole block to finish within the 10-second budget.
"""

import json
import random
import time

import pytest

from faultbandit.bandit import (
    ArmState,
    epsilon_greedy,
    select_epsilon_greedy,
    select_ucb,
    thompson,
    ucb,
    update_partial,
)
from faultbandit.cli import DEFAULT_SEED, main
from faultbandit.evaluate import auc_mann_whitney
from faultbandit.fixtures import table6_dataset, table6_models
from faultbandit.simulate import run_experiment, run_simulation
from faultbandit.synth import generate_dataset, generate_model_set

from test_synth import pairwise_auc

POLICIES = [epsilon_greedy(0.0), epsilon_greedy(0.1), ucb(), thompson()]
MODEL_SETS = {
    "various": ([0.59, 0.70, 0.77, 0.80], 0.81),
    "high": ([0.70, 0.78, 0.82, 0.88], 0.91),
    "low": ([0.50, 0.53, 0.54, 0.59], 0.56),
}


def report(number: int, name: str, failures: list[str]) -> None:
    status = "FAIL" if failures else "PASS"
    print(f"ACCEPTANCE {number} ({name}): {status}")
    assert not failures, f"criterion {number}: " + "; ".join(failures)


def test_criterion_1_partial_feedback_trace():
    failures = []
    arms = [ArmState(), ArmState()]
    expected = [((0, -1), (-1.0, 0.0)), ((1, 1), (-1.0, 1.0)), ((1, 1), (-1.0, 1.0))]
    for trial, ((chosen, reward), row) in enumerate(expected, start=1):
        update_partial(arms, chosen, reward)
        got = tuple(round(a.average_reward(), 2) for a in arms)
        if got != row:
            failures.append(f"trial {trial}: averages {got} != {row}")
    report(1, "two-arm partial-feedback trace", failures)


def test_criterion_2_greedy_trace_and_exploration_variant():
    failures = []

    # pure-greedy path: scripted rewards, selections must be A,A,A,B,A,A
    arms = [ArmState(), ArmState()]
    rng = random.Random(0)
    rewards = [1, -1, -1, -1, -1, -1]
    expected_arms = [0, 0, 0, 1, 0, 0]
    expected_rows = [
        (1.0, 0.0), (0.0, 0.0), (-0.33, 0.0), (-0.33, -1.0), (-0.5, -1.0), (-0.6, -1.0),
    ]
    for trial, (reward, arm_index, row) in enumerate(
        zip(rewards, expected_arms, expected_rows), start=1
    ):
        chosen = select_epsilon_greedy(arms, 0.0, rng)
        if chosen != arm_index:
            failures.append(f"trial {trial}: selected {chosen} != {arm_index}")
        update_partial(arms, chosen, reward)
        got = tuple(round(a.average_reward(), 2) for a in arms)
        if got != row:
            failures.append(f"trial {trial}: averages {got} != {row}")
    cumulative = sum(a.cumulative_reward for a in arms)
    if cumulative != -4:
        failures.append(f"cumulative reward {cumulative} != -4")

    # exploration variant: B is forced at trials 5-6 and pays +1 twice
    arms = [ArmState(), ArmState()]
    rng = random.Random(0)
    for reward in (1, -1, -1):
        update_partial(arms, select_epsilon_greedy(arms, 0.0, rng), reward)
    update_partial(arms, 1, -1)
    update_partial(arms, 1, 1)
    update_partial(arms, 1, 1)
    got = tuple(round(a.average_reward(), 2) for a in arms)
    if got != (-0.33, 0.33):
        failures.append(f"exploration variant averages {got} != (-0.33, 0.33)")
    cumulative = sum(a.cumulative_reward for a in arms)
    if cumulative != 0:
        failures.append(f"exploration variant cumulative {cumulative} != 0")

    report(2, "greedy failure trace and exploration variant", failures)


def test_criterion_3_worked_example_full_information():
    failures = []
    result = run_simulation(table6_dataset(), table6_models(), epsilon_greedy(0.0), seed=0)
    checks = [
        ("step 1 arm", result.steps[0].chosen_arm, "A"),
        ("step 1 module", result.steps[0].tested_module, "Test1.java"),
        ("step 1 rewards", result.steps[0].rewards, (1, 1)),
        ("step 1 averages", result.steps[0].post_averages, (1.0, 1.0)),
        ("step 2 arm", result.steps[1].chosen_arm, "A"),
        ("step 2 module", result.steps[1].tested_module, "Test5.java"),
        ("step 2 averages", result.steps[1].post_averages, (0.0, 1.0)),
        ("step 3 arm", result.steps[2].chosen_arm, "B"),
        ("step 3 module", result.steps[2].tested_module, "Test2.java"),
    ]
    for label, got, expected in checks:
        if got != expected:
            failures.append(f"{label}: {got!r} != {expected!r}")
    report(3, "six-module worked example, steps 1-3", failures)


def test_criterion_4_experiment_scale_ordinals():
    failures = []
    started = time.time()

    stability = {}
    for label, (targets, _) in MODEL_SETS.items():
        stability[label] = run_experiment(
            100, 15, targets, POLICIES, iterations=1000, base_seed=DEFAULT_SEED,
            log_steps=False, workers=2,
        ).summary
    ten_iteration = {
        label: run_experiment(
            100, 15, targets, POLICIES, iterations=10, base_seed=DEFAULT_SEED
        ).summary
        for label, (targets, _) in MODEL_SETS.items()
    }
    elapsed = time.time() - started

    for label, summary in stability.items():
        ts_mean = summary.policy_auc["TS"]
        paper_value = MODEL_SETS[label][1]

        if summary.ts_rank is None or summary.ts_rank > 2:
            failures.append(f"{label}: TS rank {summary.ts_rank} not first or second")
        if label in ("high", "low"):
            for name, mean in summary.policy_auc.items():
                if name != "TS" and ts_mean < mean:
                    failures.append(f"{label}: TS {ts_mean:.4f} < {name} {mean:.4f}")
        if abs(ts_mean - paper_value) > 0.06:
            failures.append(
                f"{label}: TS {ts_mean:.4f} outside {paper_value}+-0.06 soft window"
            )

    for label, summary in ten_iteration.items():
        if summary.iterations != 10 or len(summary.policy_auc) != 4:
            failures.append(f"{label}: ten-iteration summary malformed")
        print(
            f"  [info] 10-iteration {label}: "
            + " ".join(f"{k}={v:.3f}" for k, v in summary.policy_auc.items())
            + f" rank={summary.ts_rank}"
        )

    if elapsed >= 10.0:
        failures.append(f"runtime {elapsed:.2f}s exceeds 10s budget")
    print(f"  [info] criterion 4 runtime: {elapsed:.2f}s")
    report(4, "experiment-scale ordinal and window checks", failures)


def test_criterion_5_auc_oracle_equivalence():
    failures = []
    rng = random.Random(20260810)
    for case in range(200):
        n = rng.randint(2, 80)
        labels = [rng.random() < 0.3 for _ in range(n)]
        if not any(labels):
            labels[rng.randrange(n)] = True
        if all(labels):
            labels[rng.randrange(n)] = False
        binary = case % 2 == 0
        scores = [
            float(rng.choice([0.0, 1.0])) if binary else rng.uniform(0, 1)
            for _ in range(n)
        ]
        fast = auc_mann_whitney(scores, labels)
        slow = pairwise_auc(scores, labels)
        if abs(fast - slow) > 1e-12:
            failures.append(f"case {case}: fast {fast!r} != brute force {slow!r}")
            break
        if binary:
            k = sum(labels)
            tpr = sum(1 for s, l in zip(scores, labels) if l and s == 1.0) / k
            tnr = sum(1 for s, l in zip(scores, labels) if not l and s == 0.0) / (n - k)
            if abs(fast - (tpr + tnr) / 2) > 1e-12:
                failures.append(f"case {case}: binary AUC != balanced accuracy")
                break
    report(5, "Mann-Whitney vs pairwise brute force, 200 instances", failures)


def test_criterion_6_full_information_invariants_on_1000_runs():
    failures = []
    rng = random.Random(99)
    greedy_rng = random.Random(0)
    for case in range(1000):
        n = rng.randint(4, 30)
        k = rng.randint(1, n - 1)
        dataset = generate_dataset(n, k, rng.randrange(1 << 30))
        targets = [rng.uniform(0.5, 1.0) for _ in range(rng.randint(2, 4))]
        models = generate_model_set(dataset, targets, rng.randrange(1 << 30))
        policy = POLICIES[case % 4]
        result = run_simulation(dataset, models, policy, seed=rng.randrange(1 << 30))

        modules = [s.tested_module for s in result.steps]
        if sorted(modules) != sorted(dataset.module_ids()):
            failures.append(f"case {case}: modules not tested exactly once")
            break

        replayed = [ArmState() for _ in models]
        ok = True
        for step in result.steps:
            state_before = [
                ArmState(a.pulls, a.cumulative_reward, a.ts_successes, a.ts_failures)
                for a in replayed
            ]
            if select_ucb(state_before, step.t) != select_epsilon_greedy(
                state_before, 0.0, greedy_rng
            ):
                failures.append(f"case {case} t={step.t}: UCB != greedy on equal pulls")
                ok = False
                break
            for arm, reward in zip(replayed, step.rewards):
                arm.record(reward)
            if any(arm.pulls != step.t for arm in replayed):
                failures.append(f"case {case} t={step.t}: pulls != step index")
                ok = False
                break
        if not ok:
            break
        if replayed != result.final_arms:
            failures.append(f"case {case}: replayed arm states differ from run")
            break
    report(6, "full-information invariants on 1000 random runs", failures)


def test_criterion_7_byte_identical_outputs(tmp_path, capsys):
    failures = []
    args = [
        "simulate", "--n-modules", "40", "--n-faulty", "8",
        "--model-sets", "0.6,0.75,0.9", "--policies", "epsilon=0,epsilon=0.1,ucb,ts",
        "--iterations", "3", "--seed", "13",
    ]
    code_a = main(args + ["--out-dir", str(tmp_path / "a")])
    code_b = main(args + ["--out-dir", str(tmp_path / "b")])
    capsys.readouterr()
    if code_a != 0 or code_b != 0:
        failures.append(f"simulate exit codes {code_a}, {code_b}")
    for name in ("summary.json", "tables.txt", "steps_set1.csv"):
        if (tmp_path / "a" / name).read_bytes() != (tmp_path / "b" / name).read_bytes():
            failures.append(f"{name} differs between identical runs")
    payload = json.loads((tmp_path / "a" / "summary.json").read_text())
    if payload["config"]["base_seed"] != 13:
        failures.append("config echo lost the seed")

    serial = run_experiment(
        100, 15, [0.59, 0.70, 0.77, 0.80], POLICIES, iterations=40, base_seed=DEFAULT_SEED
    )
    parallel = run_experiment(
        100, 15, [0.59, 0.70, 0.77, 0.80], POLICIES, iterations=40, base_seed=DEFAULT_SEED,
        workers=2,
    )
    if serial.summary != parallel.summary:
        failures.append("parallel and serial summaries differ")
    report(7, "byte-identical artifacts; parallel == serial", failures)
