"""AUC computation, iteration aggregation, and summary tables."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

from .synth import Dataset, PredictionModel, binary_auc


def auc_mann_whitney(scores: Sequence[float], labels: Sequence[bool]) -> float:
    """Probability a random faulty module outscores a random clean one.

    Tied pairs count half.  Computed from tied rank sums in O(n log n):
    AUC = (R_faulty - k(k+1)/2) / (k * n_clean) where R_faulty is the sum
    of average ranks of the faulty modules.
    """
    if len(scores) != len(labels):
        raise ValueError("scores and labels must have the same length")
    n = len(scores)
    n_pos = sum(1 for flag in labels if flag)
    n_neg = n - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValueError("AUC undefined: need at least one faulty and one clean label")

    order = sorted(range(n), key=lambda i: scores[i])
    ranks = [0.0] * n
    i = 0
    while i < n:
        j = i
        while j + 1 < n and scores[order[j + 1]] == scores[order[i]]:
            j += 1
        tied_rank = (i + j) / 2 + 1
        for idx in order[i : j + 1]:
            ranks[idx] = tied_rank
        i = j + 1

    rank_sum = math.fsum(ranks[i] for i in range(n) if labels[i])
    return (rank_sum - n_pos * (n_pos + 1) / 2) / (n_pos * n_neg)


def aggregate_mean(values: Sequence[float]) -> float:
    if not values:
        raise ValueError("cannot average an empty list")
    return math.fsum(values) / len(values)


def baseline_single_model(model: PredictionModel, dataset: Dataset) -> float:
    """AUC of sticking with one model for the whole test run (Fig.-1 style use)."""
    return binary_auc(model, dataset)


@dataclass
class ExperimentSummary:
    """Per-policy mean AUCs over iterations plus fixed-model baselines."""

    iterations: int
    policy_auc: dict[str, float]
    baseline_auc: dict[str, float]
    per_iteration: dict[str, list[float]]
    policy_min: dict[str, float] = field(default_factory=dict)
    policy_max: dict[str, float] = field(default_factory=dict)
    ts_rank: int | None = None
    ts_first_or_second: bool | None = None


def build_summary(
    policy_runs: dict[str, list[float]],
    baseline_runs: dict[str, list[float]],
    ts_label: str = "TS",
) -> ExperimentSummary:
    """Aggregate per-iteration AUCs and rank Thompson sampling against the
    individual models' mean AUCs (rank 1 = best)."""
    if not policy_runs:
        raise ValueError("no policy results to summarize")
    lengths = {len(v) for v in policy_runs.values()} | {len(v) for v in baseline_runs.values()}
    if len(lengths) != 1:
        raise ValueError(f"inconsistent iteration counts: {sorted(lengths)}")
    iterations = lengths.pop()
    if iterations == 0:
        raise ValueError("need at least one iteration")

    policy_auc = {name: aggregate_mean(values) for name, values in policy_runs.items()}
    baseline_auc = {name: aggregate_mean(values) for name, values in baseline_runs.items()}

    ts_rank = None
    ts_first_or_second = None
    if ts_label in policy_auc and baseline_auc:
        ts_mean = policy_auc[ts_label]
        ts_rank = 1 + sum(1 for value in baseline_auc.values() if value > ts_mean)
        ts_first_or_second = ts_rank <= 2

    return ExperimentSummary(
        iterations=iterations,
        policy_auc=policy_auc,
        baseline_auc=baseline_auc,
        per_iteration={name: list(values) for name, values in policy_runs.items()},
        policy_min={name: min(values) for name, values in policy_runs.items()},
        policy_max={name: max(values) for name, values in policy_runs.items()},
        ts_rank=ts_rank,
        ts_first_or_second=ts_first_or_second,
    )


def summary_to_dict(summary: ExperimentSummary) -> dict:
    return {
        "iterations": summary.iterations,
        "policy_auc": summary.policy_auc,
        "baseline_auc": summary.baseline_auc,
        "policy_min": summary.policy_min,
        "policy_max": summary.policy_max,
        "per_iteration": summary.per_iteration,
        "ts_rank": summary.ts_rank,
        "ts_first_or_second": summary.ts_first_or_second,
    }


def summary_from_dict(data: dict) -> ExperimentSummary:
    return ExperimentSummary(
        iterations=data["iterations"],
        policy_auc=dict(data["policy_auc"]),
        baseline_auc=dict(data["baseline_auc"]),
        per_iteration={k: list(v) for k, v in data["per_iteration"].items()},
        policy_min=dict(data.get("policy_min", {})),
        policy_max=dict(data.get("policy_max", {})),
        ts_rank=data.get("ts_rank"),
        ts_first_or_second=data.get("ts_first_or_second"),
    )


def summary_to_json(summary: ExperimentSummary) -> str:
    return json.dumps(summary_to_dict(summary), indent=2, sort_keys=True)


def _row(cells: list[str], widths: list[int]) -> str:
    return "  ".join(cell.ljust(width) for cell, width in zip(cells, widths)).rstrip()


def render_table(summary: ExperimentSummary, title: str) -> str:
    """Aligned-text table: policy means (with min/max) and model baselines."""
    names = list(summary.policy_auc)
    header = ["policy"] + names
    mean_row = ["mean AUC"] + [f"{summary.policy_auc[n]:.3f}" for n in names]
    range_row = ["min..max"] + [
        f"{summary.policy_min.get(n, float('nan')):.3f}..{summary.policy_max.get(n, float('nan')):.3f}"
        for n in names
    ]
    baseline_names = list(summary.baseline_auc)
    b_header = ["model"] + baseline_names
    b_row = ["mean AUC"] + [f"{summary.baseline_auc[n]:.3f}" for n in baseline_names]

    widths = [max(len(a), len(b), len(c)) for a, b, c in zip(header, mean_row, range_row)]
    b_widths = [max(len(a), len(b)) for a, b in zip(b_header, b_row)]

    lines = [
        title,
        _row(header, widths),
        _row(mean_row, widths),
        _row(range_row, widths),
        "",
        _row(b_header, b_widths),
        _row(b_row, b_widths),
    ]
    if summary.ts_rank is not None:
        verdict = "yes" if summary.ts_first_or_second else "no"
        lines.append(f"TS rank vs models: {summary.ts_rank} (first or second: {verdict})")
    return "\n".join(lines) + "\n"
