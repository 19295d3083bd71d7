"""Stateful advisor session: the selection loop driven by a human tester.

A session holds prediction models only, never ground truth; the tester
reveals each module's actual outcome one submission at a time.  Every
submission rewards every arm (full information), whether or not the
tester followed the recommendation.
"""

from __future__ import annotations

import random
import uuid
from dataclasses import dataclass
from typing import Sequence

from .bandit import (
    FULL_INFORMATION,
    ArmState,
    PolicyConfig,
    PolicyState,
    reward_of,
    update_full,
)
from .simulate import next_untested_module
from .synth import PredictionModel

ACTIVE = "active"
COMPLETED = "completed"


class SessionError(Exception):
    """Base class for advisor-session misuse."""


class SessionCompleted(SessionError):
    pass


class UnknownModule(SessionError):
    pass


class ModuleAlreadyTested(SessionError):
    pass


@dataclass
class SessionStep:
    step: int
    module_id: str
    actual_faulty: bool
    recommended_model: str | None
    used_prediction: str | None
    rewards: dict[str, int]
    averages: dict[str, float]


class AdvisorSession:
    """One live test run: recommend the next module, record its outcome.

    Mutations on a single session must be externally serialized; distinct
    sessions are independent.
    """

    def __init__(
        self,
        models: Sequence[PredictionModel],
        policy: PolicyConfig,
        session_id: str | None = None,
        seed: int | None = None,
    ) -> None:
        if not models:
            raise ValueError("need at least one prediction model")
        if policy.feedback != FULL_INFORMATION:
            raise ValueError("advisor sessions require full-information feedback")
        universe = set(models[0].predictions)
        for model in models[1:]:
            if set(model.predictions) != universe:
                raise ValueError(
                    f"model {model.model_id!r} covers different modules than "
                    f"{models[0].model_id!r}"
                )
        ids = [model.model_id for model in models]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate model ids: {ids}")

        self.session_id = session_id if session_id is not None else uuid.uuid4().hex
        self.models = list(models)
        self.policy = policy
        self.arms = [ArmState() for _ in models]
        self.tested: set[str] = set()
        self.step_log: list[SessionStep] = []
        self._universe = universe
        self._selector = PolicyState(policy)
        self._rng = random.Random(seed)
        self._pending: tuple[str, str, str] | None = None  # (module, prediction, model)

    @property
    def status(self) -> str:
        return COMPLETED if len(self.tested) == len(self._universe) else ACTIVE

    def module_ids(self) -> set[str]:
        return set(self._universe)

    def recommend(self) -> tuple[str, str, str]:
        """(module to test next, its predicted label, recommending model)."""
        if self.status == COMPLETED:
            raise SessionCompleted(f"session {self.session_id} has tested every module")
        t = len(self.tested) + 1
        chosen = self._selector.select(self.arms, t, self._rng)
        model = self.models[chosen]
        module_id = next_untested_module(model, self.tested)
        assert module_id is not None  # active session always has untested modules
        prediction = model.predictions[module_id]
        self._pending = (module_id, prediction, model.model_id)
        return module_id, prediction, model.model_id

    def submit_outcome(self, module_id: str, actual_faulty: bool) -> SessionStep:
        """Record a test result for any untested module and reward every arm."""
        if self.status == COMPLETED:
            raise SessionCompleted(f"session {self.session_id} has tested every module")
        if module_id not in self._universe:
            raise UnknownModule(f"unknown module {module_id!r}")
        if module_id in self.tested:
            raise ModuleAlreadyTested(f"module {module_id!r} was already tested")

        rewards = [
            reward_of(model.predictions[module_id], actual_faulty) for model in self.models
        ]
        update_full(self.arms, rewards)
        self.tested.add(module_id)

        recommended_model: str | None = None
        used_prediction: str | None = None
        if self._pending is not None:
            recommended_model = self._pending[2]
            by_id = {model.model_id: model for model in self.models}
            used_prediction = by_id[recommended_model].predictions[module_id]
        self._pending = None

        entry = SessionStep(
            step=len(self.tested),
            module_id=module_id,
            actual_faulty=actual_faulty,
            recommended_model=recommended_model,
            used_prediction=used_prediction,
            rewards={m.model_id: r for m, r in zip(self.models, rewards)},
            averages={m.model_id: a.average_reward() for m, a in zip(self.models, self.arms)},
        )
        self.step_log.append(entry)
        return entry
