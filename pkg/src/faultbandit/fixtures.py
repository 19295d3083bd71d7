"""Worked-example fixtures and JSON (de)serialization of datasets and models.

The six-module fixture is the hand-checkable example used across the test
suite and the advisor demo: modules Test1-Test3 are faulty, Test4-Test6
are clean, model A flags {Test1, Test5, Test6} and model B flags the three
actually faulty modules.
"""

from __future__ import annotations

import json
from pathlib import Path

from .bandit import FP, NFP
from .synth import Dataset, ModuleRecord, PredictionModel, priority_order_for


def table6_dataset() -> Dataset:
    return Dataset(
        modules=tuple(
            ModuleRecord(id=f"Test{i}.java", actual_faulty=i <= 3) for i in range(1, 7)
        )
    )


def model_from_fp_set(
    model_id: str,
    dataset: Dataset,
    fp_ids: set[str],
    target_auc: float | None = None,
) -> PredictionModel:
    """Build a model from an explicit FP set; accuracy fields computed from truth."""
    predictions = {m.id: (FP if m.id in fp_ids else NFP) for m in dataset.modules}
    k = dataset.k
    n_clean = dataset.n - k
    tp = sum(1 for m in dataset.modules if m.actual_faulty and m.id in fp_ids)
    tn = sum(1 for m in dataset.modules if not m.actual_faulty and m.id not in fp_ids)
    tpr = tp / k if k else 0.0
    tnr = tn / n_clean if n_clean else 0.0
    achieved = (tpr + tnr) / 2
    return PredictionModel(
        model_id=model_id,
        predictions=predictions,
        priority_order=priority_order_for(predictions, dataset.module_ids()),
        target_auc=target_auc if target_auc is not None else achieved,
        achieved_auc=achieved,
        tpr=tpr,
        tnr=tnr,
    )


def table6_models() -> list[PredictionModel]:
    dataset = table6_dataset()
    model_a = model_from_fp_set("A", dataset, {"Test1.java", "Test5.java", "Test6.java"})
    model_b = model_from_fp_set("B", dataset, {"Test1.java", "Test2.java", "Test3.java"})
    return [model_a, model_b]


def dataset_to_dict(dataset: Dataset) -> dict:
    return {
        "modules": [{"id": m.id, "actual_faulty": m.actual_faulty} for m in dataset.modules]
    }


def dataset_from_dict(data: dict) -> Dataset:
    return Dataset(
        modules=tuple(
            ModuleRecord(id=row["id"], actual_faulty=bool(row["actual_faulty"]))
            for row in data["modules"]
        )
    )


def model_to_dict(model: PredictionModel) -> dict:
    return {
        "model_id": model.model_id,
        "target_auc": model.target_auc,
        "achieved_auc": model.achieved_auc,
        "tpr": model.tpr,
        "tnr": model.tnr,
        "predictions": dict(model.predictions),
        "priority_order": list(model.priority_order),
    }


def model_from_dict(data: dict) -> PredictionModel:
    predictions = {m: str(label) for m, label in data["predictions"].items()}
    for label in predictions.values():
        if label not in (FP, NFP):
            raise ValueError(f"bad prediction label {label!r}")
    if "priority_order" in data:
        priority = tuple(data["priority_order"])
        if sorted(priority) != sorted(predictions):
            raise ValueError("priority_order must be a permutation of the module ids")
    else:
        priority = priority_order_for(predictions, list(predictions))
    return PredictionModel(
        model_id=data["model_id"],
        predictions=predictions,
        priority_order=priority,
        target_auc=data.get("target_auc"),
        achieved_auc=data.get("achieved_auc"),
        tpr=data.get("tpr"),
        tnr=data.get("tnr"),
    )


def fixture_to_dict(dataset: Dataset | None, models: list[PredictionModel]) -> dict:
    payload: dict = {"models": [model_to_dict(m) for m in models]}
    if dataset is not None:
        payload["dataset"] = dataset_to_dict(dataset)
    return payload


def fixture_from_dict(data: dict) -> tuple[Dataset | None, list[PredictionModel]]:
    dataset = dataset_from_dict(data["dataset"]) if "dataset" in data else None
    models = [model_from_dict(row) for row in data["models"]]
    if not models:
        raise ValueError("fixture contains no models")
    return dataset, models


def save_fixture(path: str | Path, dataset: Dataset | None, models: list[PredictionModel]) -> None:
    text = json.dumps(fixture_to_dict(dataset, models), indent=2, sort_keys=True)
    Path(path).write_text(text + "\n", encoding="utf-8")


def load_fixture(path: str | Path) -> tuple[Dataset | None, list[PredictionModel]]:
    with open(path, encoding="utf-8") as handle:
        return fixture_from_dict(json.load(handle))
