"""HTTP service exposing advisor sessions (versioned under /v1).

Sessions live in process memory.  Mutations to one session are serialized
behind a per-session lock; distinct sessions proceed independently.
"""

from __future__ import annotations

import threading
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .bandit import FP, NFP, PolicyConfig, epsilon_greedy, parse_policy
from .session import (
    AdvisorSession,
    ModuleAlreadyTested,
    SessionCompleted,
    UnknownModule,
)
from .synth import PredictionModel, priority_order_for


class ModelSpec(BaseModel):
    model_id: str
    predictions: dict[str, str]


class CreateSessionRequest(BaseModel):
    policy: Optional[str] = None
    models: Optional[list[ModelSpec]] = None
    seed: Optional[int] = None


class OutcomeRequest(BaseModel):
    module_id: str
    actual: str = Field(description="'faulty' or 'clean'")


def _model_from_spec(spec: ModelSpec) -> PredictionModel:
    for label in spec.predictions.values():
        if label not in (FP, NFP):
            raise HTTPException(422, f"bad prediction label {label!r}")
    if not spec.predictions:
        raise HTTPException(422, f"model {spec.model_id!r} has no predictions")
    return PredictionModel(
        model_id=spec.model_id,
        predictions=dict(spec.predictions),
        priority_order=priority_order_for(spec.predictions, list(spec.predictions)),
    )


def _parse_actual(value: str) -> bool:
    if value == "faulty":
        return True
    if value == "clean":
        return False
    raise HTTPException(422, f"actual must be 'faulty' or 'clean', got {value!r}")


def create_app(
    default_models: Optional[list[PredictionModel]] = None,
    default_policy: Optional[PolicyConfig] = None,
) -> FastAPI:
    app = FastAPI(title="faultbandit advisor", version="1")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    sessions: dict[str, AdvisorSession] = {}
    locks: dict[str, threading.Lock] = {}
    registry_lock = threading.Lock()
    policy_fallback = default_policy if default_policy is not None else epsilon_greedy(0.0)

    def _get(session_id: str) -> tuple[AdvisorSession, threading.Lock]:
        with registry_lock:
            session = sessions.get(session_id)
            if session is None:
                raise HTTPException(404, f"no session {session_id!r}")
            return session, locks[session_id]

    def _arm_rows(session: AdvisorSession) -> list[dict]:
        return [
            {
                "model_id": model.model_id,
                "pulls": arm.pulls,
                "cumulative_reward": arm.cumulative_reward,
                "average_reward": arm.average_reward(),
            }
            for model, arm in zip(session.models, session.arms)
        ]

    @app.post("/v1/sessions")
    def create_session(request: CreateSessionRequest) -> dict:
        if request.models is not None:
            models = [_model_from_spec(spec) for spec in request.models]
        elif default_models is not None:
            models = default_models
        else:
            raise HTTPException(422, "no models supplied and the server has no fixture")
        policy = policy_fallback
        if request.policy is not None:
            try:
                policy = parse_policy(request.policy)
            except ValueError as err:
                raise HTTPException(422, str(err)) from err
        try:
            session = AdvisorSession(models, policy, seed=request.seed)
        except ValueError as err:
            raise HTTPException(422, str(err)) from err
        with registry_lock:
            sessions[session.session_id] = session
            locks[session.session_id] = threading.Lock()
        return {
            "session_id": session.session_id,
            "policy": policy.label,
            "models": [model.model_id for model in session.models],
            "modules": sorted(session.module_ids()),
            "module_count": len(session.module_ids()),
            "status": session.status,
        }

    @app.get("/v1/sessions/{session_id}/recommendation")
    def get_recommendation(session_id: str) -> dict:
        session, lock = _get(session_id)
        with lock:
            try:
                module_id, prediction, model_id = session.recommend()
            except SessionCompleted as err:
                raise HTTPException(409, str(err)) from err
        return {"module_id": module_id, "prediction": prediction, "model_id": model_id}

    @app.post("/v1/sessions/{session_id}/outcomes")
    def post_outcome(session_id: str, request: OutcomeRequest) -> dict:
        session, lock = _get(session_id)
        actual = _parse_actual(request.actual)
        with lock:
            try:
                entry = session.submit_outcome(request.module_id, actual)
            except UnknownModule as err:
                raise HTTPException(404, str(err)) from err
            except (ModuleAlreadyTested, SessionCompleted) as err:
                raise HTTPException(409, str(err)) from err
            return {
                "step": entry.step,
                "module_id": entry.module_id,
                "actual": "faulty" if entry.actual_faulty else "clean",
                "rewards": entry.rewards,
                "averages": entry.averages,
                "arms": _arm_rows(session),
                "status": session.status,
            }

    @app.get("/v1/sessions/{session_id}/state")
    def get_state(session_id: str) -> dict:
        session, lock = _get(session_id)
        with lock:
            return {
                "session_id": session.session_id,
                "policy": session.policy.label,
                "status": session.status,
                "tested": sorted(session.tested),
                "arms": _arm_rows(session),
                "step_log": [
                    {
                        "step": entry.step,
                        "module_id": entry.module_id,
                        "actual": "faulty" if entry.actual_faulty else "clean",
                        "recommended_model": entry.recommended_model,
                        "used_prediction": entry.used_prediction,
                        "rewards": entry.rewards,
                        "averages": entry.averages,
                    }
                    for entry in session.step_log
                ],
            }

    return app
