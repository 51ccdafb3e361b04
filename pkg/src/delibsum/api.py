"""HTTP service for evaluators and reporting.

Endpoints (JSON):

    GET  /v1/assignments/next?evaluator=...   claim the next open task
    POST /v1/judgments/bws                    submit a Best/Worst pick
    POST /v1/judgments/likert                 submit four 1-4 ratings
    GET  /v1/reports/{study_id}               live report from the log
    GET  /v1/runs/{run_id}                    pipeline run status

Evaluator identity is a bearer token carried in the Authorization header
(the token is the evaluator id registered at assignment time; fuller
credential handling is an operational concern, not enforced here). The
next-assignment claim is sticky: repeated calls without a submit return
the same assignment, so a page refresh never loses work. Assignment
payloads carry summary texts only, never model identities.
"""

from __future__ import annotations

from fastapi import Depends, FastAPI, HTTPException, Query, Request
from pydantic import BaseModel, Field

from .report import build_report
from .store import (
    AuthorizationError,
    ConflictError,
    StudyStore,
    ValidationError,
)

__all__ = ["create_app"]


class BWSSubmission(BaseModel):
    assignment_id: str
    best_summary_id: str
    worst_summary_id: str


class LikertRatings(BaseModel):
    informativeness: int = Field(ge=1, le=4)
    fluency: int = Field(ge=1, le=4)
    consistency: int = Field(ge=1, le=4)
    creativity: int = Field(ge=1, le=4)


class LikertSubmission(BaseModel):
    summary_id: str
    ratings: LikertRatings
    assignment_id: str | None = None


def _bearer_token(request: Request) -> str | None:
    header = request.headers.get("authorization", "")
    if header.lower().startswith("bearer "):
        return header[7:].strip()
    return None


def create_app(store: StudyStore) -> FastAPI:
    app = FastAPI(title="delibsum evaluation service")

    def evaluator_identity(
        request: Request, evaluator: str | None = Query(default=None)
    ) -> str:
        token = _bearer_token(request)
        if token and evaluator and token != evaluator:
            raise HTTPException(401, "token does not match the evaluator parameter")
        identity = token or evaluator
        if not identity:
            raise HTTPException(401, "missing evaluator identity")
        if identity not in store.evaluators:
            raise HTTPException(401, f"evaluator {identity!r} is not registered")
        return identity

    @app.get("/v1/assignments/next")
    def next_assignment(identity: str = Depends(evaluator_identity)):
        assignment = store.next_assignment(identity)
        open_count = len(store.open_assignments(identity))
        if assignment is None:
            return {"assignment": None, "detail": "none remaining", "open_count": 0}
        return {
            "assignment": store.assignment_payload(assignment),
            "open_count": open_count,
        }

    @app.post("/v1/judgments/bws")
    def submit_bws(
        body: BWSSubmission, identity: str = Depends(evaluator_identity)
    ):
        try:
            return store.submit_bws(
                identity,
                body.assignment_id,
                body.best_summary_id,
                body.worst_summary_id,
            )
        except AuthorizationError as exc:
            raise HTTPException(403, str(exc)) from exc
        except ConflictError as exc:
            raise HTTPException(409, str(exc)) from exc
        except ValidationError as exc:
            raise HTTPException(400, str(exc)) from exc

    @app.post("/v1/judgments/likert")
    def submit_likert(
        body: LikertSubmission, identity: str = Depends(evaluator_identity)
    ):
        try:
            return store.submit_likert(
                identity,
                body.summary_id,
                body.ratings.model_dump(),
                assignment_id=body.assignment_id,
            )
        except AuthorizationError as exc:
            raise HTTPException(403, str(exc)) from exc
        except ConflictError as exc:
            raise HTTPException(409, str(exc)) from exc
        except ValidationError as exc:
            raise HTTPException(400, str(exc)) from exc

    @app.get("/v1/reports/{study_id}")
    def report(study_id: str):
        if study_id != store.manifest.get("study_id", store.root.name):
            raise HTTPException(404, f"unknown study {study_id!r}")
        return build_report(store)

    @app.get("/v1/runs/{run_id}")
    def run_status(run_id: str):
        manifest = store.run_manifest(run_id)
        if manifest is None:
            raise HTTPException(404, f"unknown run {run_id!r}")
        manifest["status"] = "completed"
        return manifest

    return app
