import json
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from faultbandit.evaluate import (
    aggregate_mean,
    auc_mann_whitney,
    baseline_single_model,
    build_summary,
    render_table,
    summary_from_dict,
    summary_to_dict,
    summary_to_json,
)
from faultbandit.fixtures import table6_dataset, table6_models
from faultbandit.synth import generate_dataset, generate_model_predictions

from test_synth import pairwise_auc


class TestAucMannWhitney:
    def test_perfect_separation(self):
        assert auc_mann_whitney([1.0, 1.0, 0.0], [True, True, False]) == 1.0

    def test_all_ties(self):
        assert auc_mann_whitney([0.4] * 6, [True, False, True, False, False, False]) == 0.5

    def test_matches_bruteforce_on_random_instances(self):
        rng = random.Random(42)
        for case in range(200):
            n = rng.randint(2, 60)
            labels = [rng.random() < 0.4 for _ in range(n)]
            if not any(labels):
                labels[0] = True
            if all(labels):
                labels[-1] = False
            if case % 2 == 0:
                scores = [rng.choice([0.0, 1.0]) for _ in range(n)]  # tie-heavy binary
            else:
                scores = [rng.uniform(0, 1) for _ in range(n)]
            fast = auc_mann_whitney(scores, labels)
            slow = pairwise_auc(scores, labels)
            assert fast == pytest.approx(slow, abs=1e-12)

    def test_binary_scores_equal_balanced_accuracy(self):
        rng = random.Random(7)
        for _ in range(50):
            n = rng.randint(4, 50)
            labels = [rng.random() < 0.3 for _ in range(n)]
            if not any(labels):
                labels[0] = True
            if all(labels):
                labels[-1] = False
            scores = [rng.choice([0.0, 1.0]) for _ in range(n)]
            k = sum(labels)
            n_clean = n - k
            tpr = sum(1 for s, l in zip(scores, labels) if l and s == 1.0) / k
            tnr = sum(1 for s, l in zip(scores, labels) if not l and s == 0.0) / n_clean
            assert auc_mann_whitney(scores, labels) == pytest.approx((tpr + tnr) / 2, abs=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(
        st.lists(
            st.tuples(st.floats(-5, 5), st.booleans()), min_size=2, max_size=40
        ).filter(lambda rows: any(l for _, l in rows) and not all(l for _, l in rows))
    )
    def test_invariant_under_monotone_transform(self, rows):
        scores = [s for s, _ in rows]
        labels = [l for _, l in rows]
        raw = auc_mann_whitney(scores, labels)
        # rank-based remap keeps distinct scores distinct (saturating floats
        # like tanh could merge near-equal scores and genuinely change AUC)
        remap = {s: float(i) for i, s in enumerate(sorted(set(scores)))}
        squashed = auc_mann_whitney([math.exp(remap[s] / 8) for s in scores], labels)
        assert raw == pytest.approx(squashed, abs=1e-12)

    def test_degenerate_labels_rejected(self):
        with pytest.raises(ValueError):
            auc_mann_whitney([0.1, 0.2], [True, True])
        with pytest.raises(ValueError):
            auc_mann_whitney([0.1, 0.2], [False, False])

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError):
            auc_mann_whitney([0.1], [True, False])


class TestAggregateMean:
    def test_two_values(self):
        assert aggregate_mean([0.8, 0.9]) == pytest.approx(0.85)

    def test_single_value(self):
        assert aggregate_mean([0.42]) == 0.42

    def test_matches_manual_summation(self):
        rng = random.Random(3)
        values = [rng.uniform(0, 1) for _ in range(10)]
        total = 0.0
        for value in values:
            total += value
        assert aggregate_mean(values) == pytest.approx(total / 10, abs=1e-12)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            aggregate_mean([])


class TestBaseline:
    def test_worked_example_models(self):
        dataset = table6_dataset()
        model_a, model_b = table6_models()
        assert baseline_single_model(model_a, dataset) == pytest.approx(1 / 3)
        assert baseline_single_model(model_b, dataset) == 1.0

    def test_generated_model_matches_its_achieved_auc(self):
        dataset = generate_dataset(100, 15, 0)
        model = generate_model_predictions(dataset, 0.8, 0)
        assert baseline_single_model(model, dataset) == pytest.approx(model.achieved_auc)


class TestBuildSummary:
    def test_paper_shape(self):
        policy_runs = {
            "epsilon=0": [0.8] * 10,
            "epsilon=0.1": [0.81] * 10,
            "UCB": [0.8] * 10,
            "TS": [0.82] * 10,
        }
        baseline_runs = {f"Model{i}": [0.5 + i / 10] * 10 for i in range(1, 5)}
        summary = build_summary(policy_runs, baseline_runs)
        assert summary.iterations == 10
        assert len(summary.policy_auc) == 4
        assert len(summary.baseline_auc) == 4
        assert summary.ts_rank == 2  # only Model4 (0.9) beats 0.82
        assert summary.ts_first_or_second

    def test_identical_values_mean(self):
        summary = build_summary({"TS": [0.7, 0.7, 0.7]}, {"Model1": [0.6, 0.6, 0.6]})
        assert summary.policy_auc["TS"] == pytest.approx(0.7)
        assert summary.policy_min["TS"] == summary.policy_max["TS"] == 0.7

    def test_ranking_flag_false_when_ts_third(self):
        summary = build_summary(
            {"TS": [0.6]},
            {"Model1": [0.7], "Model2": [0.65], "Model3": [0.5]},
        )
        assert summary.ts_rank == 3
        assert summary.ts_first_or_second is False

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError):
            build_summary({"TS": [0.6, 0.7]}, {"Model1": [0.5]})

    def test_mean_is_permutation_invariant(self):
        values = [0.61, 0.72, 0.55, 0.9]
        forward = build_summary({"TS": values}, {})
        backward = build_summary({"TS": values[::-1]}, {})
        assert forward.policy_auc == backward.policy_auc

    def test_single_iteration_mean_is_that_value(self):
        summary = build_summary({"UCB": [0.77]}, {"Model1": [0.59]})
        assert summary.policy_auc["UCB"] == 0.77


class TestSerialization:
    def test_summary_json_round_trip(self):
        summary = build_summary(
            {"TS": [0.8, 0.9], "UCB": [0.7, 0.7]}, {"Model1": [0.6, 0.6]}
        )
        loaded = summary_from_dict(json.loads(summary_to_json(summary)))
        assert summary_to_dict(loaded) == summary_to_dict(summary)

    def test_render_contains_all_entries(self):
        summary = build_summary(
            {"TS": [0.8, 0.9], "UCB": [0.7, 0.7]}, {"Model1": [0.6, 0.6]}
        )
        text = render_table(summary, "demo")
        assert "demo" in text
        assert "TS" in text and "UCB" in text and "Model1" in text
        assert "0.850" in text and "0.800..0.900" in text
        assert "TS rank vs models: 1" in text
