"""HTTP JSON service exposing the engine to the review UI.

All endpoints live under /api/v1/ and return bodies carrying a
``schema_version`` field.  Engine errors map to 400/404/409 with a
machine-readable ``code`` equal to the engine error name; a malformed body
never mutates state.
"""

from __future__ import annotations

from dataclasses import asdict

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .delta import delta_payload
from .errors import (
    AlreadyClosed,
    DanglingLink,
    NotFound,
    PendingRationales,
    SafetraceError,
    UnknownRoot,
)
from .propagation import warnings_payload
from .review import AssetToUpdate, Rationale, RationaleKind, ReviewDecision
from .tree import tree_payload
from .workspace import ProjectWorkspace

_STATUS_BY_ERROR = {
    NotFound: 404,
    UnknownRoot: 404,
    PendingRationales: 409,
    AlreadyClosed: 409,
    DanglingLink: 400,
}


class RationaleIn(BaseModel):
    kind: str
    subject: str
    baseline: str
    current: str
    root: str
    reason: str = ""
    alternatives: list[str] = Field(default_factory=list)
    arguments: list[str] = Field(default_factory=list)
    justification: str = ""
    explanation: str = ""
    author: str = ""


class AssetRefIn(BaseModel):
    kind: str
    asset_id: str


class DecisionIn(BaseModel):
    analyst: str
    baseline: str
    current: str
    root: str
    impacts_safety: bool
    additional_mitigations_needed: bool
    assets_to_update: list[AssetRefIn] = Field(default_factory=list)
    notes: str = ""


def _rationale_body(rationale: Rationale) -> dict:
    return {
        "id": rationale.id,
        "kind": rationale.kind.value,
        "subject": rationale.subject_id,
        "baseline": rationale.baseline_label,
        "current": rationale.current_label,
        "reason": rationale.reason,
        "alternatives": rationale.alternatives,
        "arguments": rationale.arguments,
        "justification": rationale.justification,
        "explanation": rationale.explanation,
        "author": rationale.author,
        "timestamp": rationale.timestamp,
    }


def _decision_body(decision: ReviewDecision) -> dict:
    return {
        "id": decision.id,
        "analyst": decision.analyst,
        "baseline": decision.baseline_label,
        "current": decision.current_label,
        "root": decision.root_id,
        "impacts_safety": decision.impacts_safety,
        "additional_mitigations_needed": decision.additional_mitigations_needed,
        "assets_to_update": [asdict(a) for a in decision.assets_to_update],
        "notes": decision.notes,
        "timestamp": decision.timestamp,
        "state": decision.state,
    }


def create_app(workspace: ProjectWorkspace) -> FastAPI:
    app = FastAPI(title="safetrace", version="1")
    # The review UI is served as static files from another origin.
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET", "POST"],
        allow_headers=["*"],
    )

    @app.exception_handler(SafetraceError)
    async def engine_error(_: Request, exc: SafetraceError) -> JSONResponse:
        status = _STATUS_BY_ERROR.get(type(exc), 400)
        body = {"schema_version": "1", "code": exc.code, "detail": str(exc)}
        if isinstance(exc, PendingRationales):
            body["missing"] = exc.missing
        return JSONResponse(status_code=status, content=body)

    @app.exception_handler(RequestValidationError)
    async def body_error(_: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"schema_version": "1", "code": "ValidationError", "detail": str(exc)},
        )

    @app.get("/api/v1/tim")
    def get_tim() -> dict:
        return {
            "schema_version": "1",
            "artifact_types": list(workspace.tim.artifact_types),
            "link_types": [
                {
                    "name": lt.name,
                    "source": lt.source_type,
                    "target": lt.target_type,
                    "direction": lt.direction,
                }
                for lt in workspace.tim.link_types
            ],
        }

    @app.get("/api/v1/snapshots")
    def get_snapshots() -> dict:
        return {
            "schema_version": "1",
            "snapshots": [
                {
                    "version": label,
                    "artifact_count": len(snapshot.artifacts),
                    "link_count": len(snapshot.links),
                    "captured_at": snapshot.captured_at.isoformat(),
                }
                for label, snapshot in sorted(workspace.snapshots.items())
            ],
        }

    @app.get("/api/v1/artifact")
    def get_artifact(version: str, id: str) -> dict:
        snapshot = workspace.snapshot(version)
        artifact = snapshot.artifacts.get(id)
        if artifact is None:
            raise NotFound(f"artifact '{id}' not in snapshot '{version}'")
        return {
            "schema_version": "1",
            "id": artifact.id,
            "artifact_type": artifact.artifact_type,
            "summary": artifact.summary,
            "body": artifact.body,
            "attributes": artifact.attributes,
            "content_hash": artifact.content_hash,
        }

    @app.get("/api/v1/tree")
    def get_tree(version: str, root: str) -> dict:
        return tree_payload(workspace.tree(version, root))

    @app.get("/api/v1/delta")
    def get_delta(baseline: str, current: str, root: str) -> dict:
        return delta_payload(workspace.delta(baseline, current, root))

    @app.get("/api/v1/warnings")
    def get_warnings(baseline: str, current: str, root: str) -> dict:
        delta = workspace.delta(baseline, current, root)
        ws = workspace.warning_set(baseline, current, root)
        return warnings_payload(ws, delta)

    @app.get("/api/v1/assets")
    def get_assets() -> dict:
        return {
            "schema_version": "1",
            "fault_trees": [
                {
                    "id": ft.id,
                    "top_event": ft.top_event_id,
                    "nodes": [
                        {
                            "id": node.id,
                            "kind": node.kind.value,
                            "gate_op": node.gate_op.value if node.gate_op else None,
                            "description": node.description,
                        }
                        for _, node in sorted(ft.nodes.items())
                    ],
                    "edges": [{"parent": p, "child": c} for p, c in ft.edges],
                }
                for ft in workspace.fault_trees.values()
            ],
            "safety_cases": [
                {
                    "id": sc.id,
                    "root_goal": sc.root_goal_id,
                    "nodes": [
                        {"id": node.id, "kind": node.kind.value, "statement": node.statement}
                        for _, node in sorted(sc.nodes.items())
                    ],
                    "supported_by": [{"source": s, "target": t} for s, t in sc.supported_by],
                    "in_context_of": [{"source": s, "target": t} for s, t in sc.in_context_of],
                }
                for sc in workspace.safety_cases.values()
            ],
            "horizontal_links": [
                {"source": hl.source_id, "target": hl.target_id, "kind": hl.link_kind.value}
                for hl in workspace.hlinks
            ],
        }

    @app.get("/api/v1/review/pending")
    def get_pending(baseline: str, current: str, root: str) -> dict:
        pending = workspace.pending(baseline, current, root)
        return {"schema_version": "1", "pending": sorted(pending)}

    @app.get("/api/v1/rationales")
    def get_rationales(
        subject: str | None = None, baseline: str | None = None, current: str | None = None
    ) -> dict:
        rationales = workspace.review.rationales()
        if subject is not None:
            rationales = [r for r in rationales if r.subject_id == subject]
        if baseline is not None and current is not None:
            rationales = [r for r in rationales if r.delta_ref == (baseline, current)]
        return {
            "schema_version": "1",
            "rationales": [_rationale_body(r) for r in rationales],
        }

    @app.post("/api/v1/rationales", status_code=201)
    def post_rationale(body: RationaleIn) -> dict:
        delta = workspace.delta(body.baseline, body.current, body.root)
        rationale = Rationale(
            kind=RationaleKind(body.kind),
            subject_id=body.subject,
            baseline_label=body.baseline,
            current_label=body.current,
            reason=body.reason,
            alternatives=body.alternatives,
            arguments=body.arguments,
            justification=body.justification,
            explanation=body.explanation,
            author=body.author,
        )
        workspace.review.submit_rationale(rationale, delta)
        return {"schema_version": "1", **_rationale_body(rationale)}

    @app.get("/api/v1/decisions")
    def get_decisions() -> dict:
        return {
            "schema_version": "1",
            "decisions": [_decision_body(d) for d in workspace.review.decisions()],
        }

    @app.post("/api/v1/decisions", status_code=201)
    def post_decision(body: DecisionIn) -> dict:
        decision = ReviewDecision(
            analyst=body.analyst,
            baseline_label=body.baseline,
            current_label=body.current,
            root_id=body.root,
            impacts_safety=body.impacts_safety,
            additional_mitigations_needed=body.additional_mitigations_needed,
            assets_to_update=[AssetToUpdate(a.kind, a.asset_id) for a in body.assets_to_update],
            notes=body.notes,
        )
        workspace.review.create_decision(decision)
        return {"schema_version": "1", **_decision_body(decision)}

    @app.post("/api/v1/decisions/{decision_id}/close")
    def close_decision(decision_id: str) -> dict:
        decision = workspace.review.decision(decision_id)
        delta = workspace.delta(decision.baseline_label, decision.current_label, decision.root_id)
        ws = workspace.warning_set(
            decision.baseline_label, decision.current_label, decision.root_id
        )
        notice = workspace.review.close_review(decision_id, delta, ws, workspace.hlinks)
        return {
            "schema_version": "1",
            "decision": _decision_body(decision),
            "notice": asdict(notice),
        }

    @app.get("/api/v1/notices")
    def get_notices() -> dict:
        return {
            "schema_version": "1",
            "notices": [asdict(n) for n in workspace.review.notices()],
        }

    return app
