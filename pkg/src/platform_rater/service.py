"""HTTP/JSON API over the catalog, assessment, ranking, and store modules.

Every endpoint is a thin adapter: responses are the corresponding core-module
output serialized, with no extra computation in the handlers. Errors map 1:1
onto {validation: 422, not-found: 404, conflict: 409, internal: 500} with an
ApiError body ``{"code", "message", "details"}``. Request handling is
stateless over the store; per-project write serialization comes from the
store, and the ranking math is pure, so concurrent requests are safe.
"""
from __future__ import annotations

import uuid
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import ahp, assessment, catalog as catalog_mod
from .catalog import Catalog, Dimension, Layer
from .errors import ConflictError, NotFoundError, ValidationError
from .store import DocumentStore

PROJECT_KIND = "single-assessment"
DRAFT_KIND = "multi-assessment"
RESULT_KIND = "ranking-result"


class ProjectCreate(BaseModel):
    name: str
    platform_name: str
    platform_description: str = ""
    selected_criteria: list[str]


class ProjectUpdate(BaseModel):
    expected_version: int
    name: str | None = None
    platform_name: str | None = None
    platform_description: str | None = None
    selected_criteria: list[str] | None = None


class ResponsePost(BaseModel):
    assessor: str
    question: str
    value: int
    expected_version: int


class SnapshotPost(BaseModel):
    expected_version: int
    label: str | None = None


class DraftPut(BaseModel):
    expected_version: int | None = None
    document: dict


def create_app(
    store: DocumentStore | None = None,
    catalog: Catalog | None = None,
    consensus: str = "median",
    static_dir: str | Path | None = None,
) -> FastAPI:
    store = store if store is not None else DocumentStore()
    active_catalog = catalog if catalog is not None else catalog_mod.default_catalog()

    app = FastAPI(title="platform-rater", version="0.1.0", docs_url=None, redoc_url=None)

    # -- error taxonomy -----------------------------------------------------

    def _api_error(status: int, code: str, message: str, details=None) -> JSONResponse:
        body = {"code": code, "message": message}
        if details:
            body["details"] = details
        return JSONResponse(status_code=status, content=body)

    @app.exception_handler(ValidationError)
    async def _on_validation(_: Request, exc: ValidationError):
        return _api_error(422, "validation", str(exc), exc.details or None)

    @app.exception_handler(NotFoundError)
    async def _on_not_found(_: Request, exc: NotFoundError):
        return _api_error(404, "not-found", str(exc))

    @app.exception_handler(ConflictError)
    async def _on_conflict(_: Request, exc: ConflictError):
        return _api_error(409, "conflict", str(exc))

    @app.exception_handler(RequestValidationError)
    async def _on_request_validation(_: Request, exc: RequestValidationError):
        details = [
            {
                "field": ".".join(str(part) for part in err.get("loc", ())),
                "message": err.get("msg", "invalid value"),
            }
            for err in exc.errors()
        ]
        return _api_error(422, "validation", "request validation failed", details)

    @app.exception_handler(Exception)
    async def _on_internal(_: Request, exc: Exception):
        return _api_error(500, "internal", f"internal error: {exc}")

    # -- catalog ------------------------------------------------------------

    @app.get("/api/catalog")
    def get_catalog():
        return catalog_mod.catalog_to_dict(active_catalog)

    @app.get("/api/catalog/criteria")
    def get_criteria(dimension: Dimension | None = None, layer: Layer | None = None):
        criteria = catalog_mod.filter_criteria(active_catalog, dimension, layer)
        return [catalog_mod.criterion_to_dict(c) for c in criteria]

    # -- projects -----------------------------------------------------------

    def _load_project(project_id: str) -> assessment.AssessmentProject:
        doc = store.load(project_id, PROJECT_KIND)
        return assessment.project_from_dict(doc.payload, active_catalog)

    def _save_project(project, expected_version: int | None) -> dict:
        payload = assessment.project_to_dict(project)
        store.save(PROJECT_KIND, project.id, payload, expected_version=expected_version)
        return payload

    @app.post("/api/projects")
    def create_project(body: ProjectCreate):
        project = assessment.create_project(
            active_catalog,
            name=body.name,
            platform_name=body.platform_name,
            platform_description=body.platform_description,
            selected_criteria=body.selected_criteria,
            project_id=uuid.uuid4().hex[:12],
        )
        return _save_project(project, expected_version=None)

    @app.get("/api/projects")
    def list_projects():
        return [
            {
                "id": s.id,
                "name": s.name,
                "version": s.version,
                "updated_at": s.updated_at,
            }
            for s in store.list(PROJECT_KIND)
        ]

    @app.get("/api/projects/{project_id}")
    def get_project(project_id: str):
        return store.load(project_id, PROJECT_KIND).payload

    @app.put("/api/projects/{project_id}")
    def update_project(project_id: str, body: ProjectUpdate):
        project = _load_project(project_id)
        assessment.update_project(
            project,
            active_catalog,
            name=body.name,
            platform_name=body.platform_name,
            platform_description=body.platform_description,
            selected_criteria=body.selected_criteria,
        )
        return _save_project(project, expected_version=body.expected_version)

    @app.post("/api/projects/{project_id}/responses")
    def post_response(project_id: str, body: ResponsePost):
        project = _load_project(project_id)
        assessment.record_response(
            project,
            active_catalog,
            assessor_id=body.assessor,
            question_id=body.question,
            value=body.value,
        )
        return _save_project(project, expected_version=body.expected_version)

    @app.post("/api/projects/{project_id}/snapshots")
    def post_snapshot(project_id: str, body: SnapshotPost):
        project = _load_project(project_id)
        snapshot_id = assessment.snapshot(project, label=body.label)
        _save_project(project, expected_version=body.expected_version)
        return {"snapshot_id": snapshot_id, "version": project.version}

    @app.get("/api/projects/{project_id}/report")
    def get_report(project_id: str):
        report = assessment.satisfaction_report(_load_project(project_id), active_catalog, consensus)
        return assessment.report_to_dict(report)

    @app.get("/api/projects/{project_id}/report.csv")
    def get_report_csv(project_id: str):
        report = assessment.satisfaction_report(_load_project(project_id), active_catalog, consensus)
        return Response(content=assessment.report_csv(report), media_type="text/csv")

    @app.get("/api/projects/{project_id}/report.layers.csv")
    def get_report_layers_csv(project_id: str):
        report = assessment.satisfaction_report(_load_project(project_id), active_catalog, consensus)
        return Response(content=assessment.report_layers_csv(report), media_type="text/csv")

    # -- rankings -----------------------------------------------------------

    @app.post("/api/rankings")
    async def post_ranking(request: Request):
        try:
            body = await request.json()
        except Exception as exc:
            raise ValidationError(f"request body is not valid JSON: {exc}") from exc
        ranking_id, criteria_matrix, platform_matrices = ahp.parse_ranking_input(body)
        result = ahp.rank_platforms(criteria_matrix, platform_matrices)
        result_doc = ahp.ranking_result_to_dict(result, ranking_id)
        store.save(DRAFT_KIND, ranking_id, body if isinstance(body, dict) else {})
        store.save(RESULT_KIND, ranking_id, result_doc)
        return result_doc

    @app.get("/api/rankings")
    def list_rankings():
        return [
            {"id": s.id, "version": s.version, "updated_at": s.updated_at}
            for s in store.list(RESULT_KIND)
        ]

    @app.get("/api/rankings/{ranking_id}")
    def get_ranking(ranking_id: str):
        return store.load(ranking_id, RESULT_KIND).payload

    @app.get("/api/rankings/{ranking_id}/kiviat")
    def get_kiviat(ranking_id: str):
        return ahp.kiviat_from_result_dict(store.load(ranking_id, RESULT_KIND).payload)

    @app.get("/api/rankings/{ranking_id}/result.csv")
    def get_ranking_csv(ranking_id: str):
        doc = store.load(ranking_id, RESULT_KIND).payload
        return Response(content=ahp.ranking_result_csv(doc), media_type="text/csv")

    # -- multi-assessment drafts (wizard persistence) ------------------------

    @app.post("/api/multi-assessments")
    def create_draft(body: dict):
        draft_id = uuid.uuid4().hex[:12]
        doc = store.save(DRAFT_KIND, draft_id, body)
        return {"id": draft_id, "version": doc.version, "document": body}

    @app.get("/api/multi-assessments")
    def list_drafts():
        return [
            {
                "id": s.id,
                "name": s.name,
                "version": s.version,
                "updated_at": s.updated_at,
            }
            for s in store.list(DRAFT_KIND)
        ]

    @app.get("/api/multi-assessments/{draft_id}")
    def get_draft(draft_id: str):
        doc = store.load(draft_id, DRAFT_KIND)
        return {"id": doc.id, "version": doc.version, "document": doc.payload}

    @app.put("/api/multi-assessments/{draft_id}")
    def put_draft(draft_id: str, body: DraftPut):
        doc = store.save(
            DRAFT_KIND, draft_id, body.document, expected_version=body.expected_version
        )
        return {"id": draft_id, "version": doc.version, "document": body.document}

    # -- static UI ------------------------------------------------------------

    resolved_static = _resolve_static_dir(static_dir)
    if resolved_static is not None:
        app.mount("/", StaticFiles(directory=resolved_static, html=True), name="ui")

    return app


def _resolve_static_dir(static_dir: str | Path | None) -> Path | None:
    if static_dir is not None:
        path = Path(static_dir)
        return path if path.is_dir() else None
    candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    return candidate if candidate.is_dir() else None
