"""Artificial datasets and artificial prediction models with controlled accuracy.

A generated model is a plain table of FP/NFP labels over the dataset's
modules plus a testing order that puts all FP-predicted modules first
(original dataset order preserved inside each group).  Labels are sampled
with exact counts, so a model's accuracy is a deterministic function of
its (tpr, tnr) operating point, not of the seed.

The operating point for a target AUC is chosen on a fixed prediction
budget: every imperfect model flags exactly k+1 modules as fault-prone
(k of them for a perfect model), and the number of correctly flagged
modules is tuned so that balanced accuracy (tpr+tnr)/2 lands as close to
the target as the integer grid allows, preferring the higher true-positive
count on ties.  On the 100-module / 15-fault dataset used throughout, the
grid step is 0.0392, so the achieved AUC is always within 0.02 of the
target.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .bandit import FP, NFP


@dataclass(frozen=True)
class ModuleRecord:
    id: str
    actual_faulty: bool


@dataclass(frozen=True)
class Dataset:
    """Ordered modules with hidden ground-truth faultiness."""

    modules: tuple[ModuleRecord, ...]

    @property
    def n(self) -> int:
        return len(self.modules)

    @property
    def k(self) -> int:
        return sum(1 for m in self.modules if m.actual_faulty)

    def module_ids(self) -> list[str]:
        return [m.id for m in self.modules]

    def truth(self) -> dict[str, bool]:
        return {m.id: m.actual_faulty for m in self.modules}


@dataclass(frozen=True)
class PredictionModel:
    """One arm: fixed FP/NFP predictions plus an FP-first testing order.

    ``achieved_auc`` equals (tpr + tnr) / 2 exactly.  The accuracy fields
    are None for models supplied without ground truth (live advisor use).
    """

    model_id: str
    predictions: dict[str, str]
    priority_order: tuple[str, ...]
    target_auc: float | None = None
    achieved_auc: float | None = None
    tpr: float | None = None
    tnr: float | None = None

    def next_prediction(self, module_id: str) -> str:
        return self.predictions[module_id]


def priority_order_for(predictions: dict[str, str], module_ids: list[str]) -> tuple[str, ...]:
    """FP-predicted modules first, dataset order preserved in each group."""
    fp_ids = [m for m in module_ids if predictions[m] == FP]
    nfp_ids = [m for m in module_ids if predictions[m] == NFP]
    return tuple(fp_ids + nfp_ids)


def generate_dataset(n: int, k: int, seed: int) -> Dataset:
    """n modules named Test1.java..Testn.java, a seeded uniform k of them faulty."""
    if n < 1:
        raise ValueError(f"need at least one module, got n={n}")
    if not 0 <= k <= n:
        raise ValueError(f"faulty count k={k} must be within [0, {n}]")
    rng = random.Random(seed)
    faulty = set(rng.sample(range(n), k))
    modules = tuple(
        ModuleRecord(id=f"Test{i + 1}.java", actual_faulty=i in faulty) for i in range(n)
    )
    return Dataset(modules=modules)


@lru_cache(maxsize=None)
def _solve_counts(target_auc: float, k: int, n_clean: int) -> tuple[int, int]:
    """Integer (true positives, true negatives) realizing the target AUC.

    Search is over a fixed flag budget: a model flags ``k + 1`` modules
    (``k`` when the target is a perfect 1.0), ``a`` of them actually
    faulty, so tpr = a/k and tnr = (n_clean - (budget - a)) / n_clean.
    Minimizes |(tpr+tnr)/2 - target|, ties going to the larger ``a``.
    """
    budget = k if target_auc >= 1.0 else k + 1
    budget = min(budget, k + n_clean)
    best: tuple[tuple[float, int], int, int] | None = None
    for a in range(max(0, budget - n_clean), min(k, budget) + 1):
        b = n_clean - (budget - a)
        achieved = (a / k + b / n_clean) / 2
        crit = (abs(achieved - target_auc), -a)
        if best is None or crit < best[0]:
            best = (crit, a, b)
    assert best is not None
    return best[1], best[2]


def solve_rates(target_auc: float, k: int, n_clean: int) -> tuple[float, float]:
    """(tpr, tnr) whose balanced accuracy best approximates the target AUC."""
    if not 0.5 <= target_auc <= 1.0:
        raise ValueError(f"target_auc must be in [0.5, 1.0], got {target_auc}")
    if k < 1 or n_clean < 1:
        raise ValueError("need at least one faulty and one clean module")
    a, b = _solve_counts(target_auc, k, n_clean)
    return a / k, b / n_clean


def generate_model_predictions(
    dataset: Dataset,
    target_auc: float,
    seed: int,
    model_id: str | None = None,
) -> PredictionModel:
    """Seeded random predictions whose balanced accuracy hits the target AUC.

    Exactly a = tpr*k faulty modules and exactly (1-tnr)*n_clean clean
    modules are labeled FP, each a uniform sample, so the achieved AUC is
    the same for every seed.
    """
    k = dataset.k
    n_clean = dataset.n - k
    if k == 0 or n_clean == 0:
        raise ValueError("dataset must contain at least one faulty and one clean module")
    a, b = _solve_counts(target_auc, k, n_clean)
    rng = random.Random(seed)
    faulty_ids = [m.id for m in dataset.modules if m.actual_faulty]
    clean_ids = [m.id for m in dataset.modules if not m.actual_faulty]
    fp_ids = set(rng.sample(faulty_ids, a))
    fp_ids.update(rng.sample(clean_ids, n_clean - b))
    predictions = {m.id: (FP if m.id in fp_ids else NFP) for m in dataset.modules}
    tpr = a / k
    tnr = b / n_clean
    return PredictionModel(
        model_id=model_id if model_id is not None else f"auc{target_auc:g}",
        predictions=predictions,
        priority_order=priority_order_for(predictions, dataset.module_ids()),
        target_auc=target_auc,
        achieved_auc=(tpr + tnr) / 2,
        tpr=tpr,
        tnr=tnr,
    )


def generate_model_set(dataset: Dataset, target_aucs: list[float], seed: int) -> list[PredictionModel]:
    """One model per target, named Model1..ModelN, seeds derived from one master."""
    master = random.Random(seed)
    return [
        generate_model_predictions(dataset, target, master.randrange(2**32), f"Model{i + 1}")
        for i, target in enumerate(target_aucs)
    ]


def binary_auc(model: PredictionModel, dataset: Dataset) -> float:
    """Balanced accuracy (tpr + tnr) / 2 of the model's labels against truth.

    Equals the Mann-Whitney AUC of the 0/1 prediction scores with tied
    pairs counted half.
    """
    k = dataset.k
    n_clean = dataset.n - k
    if k == 0 or n_clean == 0:
        raise ValueError("AUC undefined: dataset needs faulty and clean modules")
    tp = sum(1 for m in dataset.modules if m.actual_faulty and model.predictions[m.id] == FP)
    tn = sum(1 for m in dataset.modules if not m.actual_faulty and model.predictions[m.id] == NFP)
    return (tp / k + tn / n_clean) / 2
