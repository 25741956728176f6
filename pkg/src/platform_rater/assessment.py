"""Single-platform assessment: per-question Likert ratings, criterion and layer scores.

A project records one rating per (assessor, question); later writes replace
earlier ones. Scores aggregate in two stages: a per-question consensus across
assessors (median by default, mean via the ``method`` argument), then the
arithmetic mean of consensus values across a criterion's answered questions.
Unanswered questions are excluded and surfaced as a coverage fraction rather
than imputed as neutral. Raw scores live on the 1..7 scale; reports also carry
(raw - 1) / 6 normalized to [0, 1]. Every mutation increments the project
version by exactly one, which backs optimistic conflict detection upstream.
"""
from __future__ import annotations

import io
import statistics
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .catalog import Catalog, Layer, LAYER_ORDER
from .errors import ValidationError

LIKERT_LABELS: dict[int, str] = {
    1: "not at all addressed",
    2: "partially addressed",
    3: "somewhat addressed",
    4: "neutral",
    5: "mostly addressed",
    6: "considerably addressed",
    7: "completely addressed",
}

CONSENSUS_METHODS = ("median", "mean")


@dataclass(frozen=True)
class LikertRating:
    """A single 1..7 rating; the label is determined by the value."""

    value: int

    def __post_init__(self):
        if isinstance(self.value, bool) or not isinstance(self.value, int):
            raise ValidationError(f"rating must be an integer, got {self.value!r}")
        if self.value not in LIKERT_LABELS:
            raise ValidationError(f"rating must be in 1..7, got {self.value}")

    @property
    def label(self) -> str:
        return LIKERT_LABELS[self.value]


@dataclass(frozen=True)
class Response:
    assessor_id: str
    question_id: str
    rating: LikertRating
    recorded_at: str  # ISO-8601 UTC


@dataclass(frozen=True)
class Snapshot:
    id: str
    label: str | None
    created_at: str
    responses: tuple[Response, ...]  # frozen copy, sorted by (question, assessor)


@dataclass
class AssessmentProject:
    id: str
    name: str
    platform_name: str
    platform_description: str = ""
    selected_criteria: frozenset[str] = frozenset()
    responses: dict = field(default_factory=dict)  # (assessor_id, question_id) -> Response
    snapshots: list = field(default_factory=list)
    version: int = 1

    def responses_sorted(self) -> list[Response]:
        return sorted(
            self.responses.values(), key=lambda r: (r.question_id, r.assessor_id)
        )

    def question_values(self, question_id: str) -> list[int]:
        return sorted(
            r.rating.value for r in self.responses.values() if r.question_id == question_id
        )


@dataclass(frozen=True)
class CriterionScore:
    criterion_id: str
    raw: float | None  # in [1, 7]; None when no question answered
    normalized: float | None  # (raw - 1) / 6
    coverage: float  # answered questions / total questions


@dataclass(frozen=True)
class LayerScore:
    raw: float
    normalized: float
    coverage: float  # answered applicable questions / applicable questions


@dataclass(frozen=True)
class SatisfactionReport:
    project_id: str
    scores: tuple[CriterionScore, ...]  # catalog order, answered criteria only
    layers: dict  # Layer -> LayerScore, only layers with >= 1 answered applicable question
    generated_at: str | None  # newest response timestamp; deterministic given project state


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _check_method(method: str) -> None:
    if method not in CONSENSUS_METHODS:
        raise ValidationError(f"consensus method must be one of {CONSENSUS_METHODS}, got {method!r}")


# ---------------------------------------------------------------------------
# project lifecycle
# ---------------------------------------------------------------------------


def create_project(
    catalog: Catalog,
    name: str,
    platform_name: str,
    platform_description: str = "",
    selected_criteria=(),
    project_id: str | None = None,
) -> AssessmentProject:
    """New project at version 1 with an empty response set.

    Every selected criterion id must exist in ``catalog``; the selection must
    be non-empty.
    """
    selection = frozenset(selected_criteria)
    if not selection:
        raise ValidationError("selected_criteria must not be empty")
    unknown = sorted(cid for cid in selection if not catalog.has_criterion(cid))
    if unknown:
        raise ValidationError("unknown criterion id(s): " + ", ".join(unknown))
    if not name or not str(name).strip():
        raise ValidationError("project name must not be empty")
    return AssessmentProject(
        id=project_id or _default_project_id(name),
        name=str(name),
        platform_name=str(platform_name),
        platform_description=str(platform_description),
        selected_criteria=selection,
        version=1,
    )


def _default_project_id(name: str) -> str:
    import uuid

    slug = "-".join(str(name).lower().split())[:24] or "project"
    return f"{slug}-{uuid.uuid4().hex[:8]}"


def record_response(
    project: AssessmentProject,
    catalog: Catalog,
    assessor_id: str,
    question_id: str,
    value: int,
    recorded_at: str | None = None,
) -> AssessmentProject:
    """Store one rating, replacing any prior one by the same assessor on the question."""
    rating = LikertRating(value)
    if not catalog.has_question(question_id):
        raise ValidationError(f"unknown question id: {question_id!r}")
    owner = catalog.question_owner(question_id)
    if owner.id not in project.selected_criteria:
        raise ValidationError(
            f"question {question_id!r} belongs to criterion {owner.id!r}, "
            "which is not selected in this project"
        )
    if not assessor_id or not str(assessor_id).strip():
        raise ValidationError("assessor_id must not be empty")
    project.responses[(assessor_id, question_id)] = Response(
        assessor_id=assessor_id,
        question_id=question_id,
        rating=rating,
        recorded_at=recorded_at or _now(),
    )
    project.version += 1
    return project


def update_project(
    project: AssessmentProject,
    catalog: Catalog,
    name: str | None = None,
    platform_name: str | None = None,
    platform_description: str | None = None,
    selected_criteria=None,
) -> AssessmentProject:
    """Metadata/selection update; counts as one mutation (version + 1).

    Shrinking the selection is rejected while recorded responses still point at
    a deselected criterion.
    """
    if selected_criteria is not None:
        selection = frozenset(selected_criteria)
        if not selection:
            raise ValidationError("selected_criteria must not be empty")
        unknown = sorted(cid for cid in selection if not catalog.has_criterion(cid))
        if unknown:
            raise ValidationError("unknown criterion id(s): " + ", ".join(unknown))
        orphaned = sorted(
            {
                r.question_id
                for r in project.responses.values()
                if catalog.question_owner(r.question_id).id not in selection
            }
        )
        if orphaned:
            raise ValidationError(
                "cannot deselect criteria with recorded responses; orphaned questions: "
                + ", ".join(orphaned)
            )
        project.selected_criteria = selection
    if name is not None:
        if not str(name).strip():
            raise ValidationError("project name must not be empty")
        project.name = str(name)
    if platform_name is not None:
        project.platform_name = str(platform_name)
    if platform_description is not None:
        project.platform_description = str(platform_description)
    project.version += 1
    return project


def snapshot(
    project: AssessmentProject, label: str | None = None, created_at: str | None = None
) -> str:
    """Append an immutable frozen copy of the current responses; returns its id."""
    snap_id = f"snap-{len(project.snapshots) + 1}"
    project.snapshots.append(
        Snapshot(
            id=snap_id,
            label=label,
            created_at=created_at or _now(),
            responses=tuple(project.responses_sorted()),
        )
    )
    project.version += 1
    return snap_id


# ---------------------------------------------------------------------------
# scoring
# ---------------------------------------------------------------------------


def question_consensus(
    project: AssessmentProject, question_id: str, method: str = "median"
) -> float | None:
    """Vote aggregate across assessors for one question; None when unanswered.

    median: even counts take the midpoint of the two central values, so the
    consensus is a real in [1, 7], not necessarily an integer.
    """
    _check_method(method)
    values = project.question_values(question_id)
    if not values:
        return None
    if method == "median":
        return float(statistics.median(values))
    return float(statistics.fmean(values))


def normalized_score(raw: float) -> float:
    return (raw - 1.0) / 6.0


def criterion_score(
    project: AssessmentProject,
    catalog: Catalog,
    criterion_id: str,
    method: str = "median",
) -> CriterionScore:
    """Mean of question consensus over the criterion's answered questions."""
    if criterion_id not in project.selected_criteria:
        raise ValidationError(f"criterion {criterion_id!r} is not selected in this project")
    criterion = catalog.criterion(criterion_id)
    consensus = [
        value
        for q in criterion.questions
        if (value := question_consensus(project, q.id, method)) is not None
    ]
    total = len(criterion.questions)
    if not consensus:
        return CriterionScore(criterion_id=criterion_id, raw=None, normalized=None, coverage=0.0)
    raw = statistics.fmean(consensus)
    return CriterionScore(
        criterion_id=criterion_id,
        raw=raw,
        normalized=normalized_score(raw),
        coverage=len(consensus) / total,
    )


def layer_rollup(
    project: AssessmentProject, catalog: Catalog, method: str = "median"
) -> dict[Layer, LayerScore]:
    """Per-layer mean of question consensus over answered, applicable questions.

    Only (question, layer) pairs marked applicable in the catalog contribute;
    layers with no applicable answered question are omitted.
    """
    _check_method(method)
    per_layer: dict[Layer, list[float]] = {}
    applicable_counts: dict[Layer, int] = {}
    for cid in project.selected_criteria:
        for q in catalog.criterion(cid).questions:
            value = question_consensus(project, q.id, method)
            for layer in q.applicable_layers:
                applicable_counts[layer] = applicable_counts.get(layer, 0) + 1
                if value is not None:
                    per_layer.setdefault(layer, []).append(value)
    out: dict[Layer, LayerScore] = {}
    for tag in LAYER_ORDER:
        layer = Layer(tag)
        values = per_layer.get(layer)
        if not values:
            continue
        raw = statistics.fmean(values)
        out[layer] = LayerScore(
            raw=raw,
            normalized=normalized_score(raw),
            coverage=len(values) / applicable_counts[layer],
        )
    return out


def satisfaction_report(
    project: AssessmentProject, catalog: Catalog, method: str = "median"
) -> SatisfactionReport:
    """Criterion scores (catalog order, answered criteria only) plus layer rollup."""
    scores = []
    for criterion in catalog.criteria:
        if criterion.id not in project.selected_criteria:
            continue
        score = criterion_score(project, catalog, criterion.id, method)
        if score.raw is not None:
            scores.append(score)
    generated_at = max((r.recorded_at for r in project.responses.values()), default=None)
    return SatisfactionReport(
        project_id=project.id,
        scores=tuple(scores),
        layers=layer_rollup(project, catalog, method),
        generated_at=generated_at,
    )


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _response_to_dict(r: Response) -> dict:
    return {
        "assessor_id": r.assessor_id,
        "question_id": r.question_id,
        "value": r.rating.value,
        "recorded_at": r.recorded_at,
    }


def project_to_dict(project: AssessmentProject) -> dict:
    return {
        "id": project.id,
        "name": project.name,
        "platform_name": project.platform_name,
        "platform_description": project.platform_description,
        "selected_criteria": sorted(project.selected_criteria),
        "responses": [_response_to_dict(r) for r in project.responses_sorted()],
        "snapshots": [
            {
                "id": snap.id,
                "label": snap.label,
                "created_at": snap.created_at,
                "responses": [_response_to_dict(r) for r in snap.responses],
            }
            for snap in project.snapshots
        ],
        "version": project.version,
    }


def project_from_dict(doc: dict, catalog: Catalog | None = None) -> AssessmentProject:
    """Rebuild a project from its document form, validating the schema.

    With ``catalog`` given, also checks that the selection and every response
    are in scope (the schema check used by the store and the service).
    """
    if not isinstance(doc, dict):
        raise ValidationError("project document must be a JSON object")
    for key in ("id", "name", "platform_name"):
        if not isinstance(doc.get(key), str) or not doc[key].strip():
            raise ValidationError(f"project {key} must be a non-empty string")
    selection = doc.get("selected_criteria")
    if not isinstance(selection, list) or not selection:
        raise ValidationError("selected_criteria must be a non-empty array")
    version = doc.get("version")
    if not isinstance(version, int) or isinstance(version, bool) or version < 1:
        raise ValidationError("version must be a positive integer")

    project = AssessmentProject(
        id=doc["id"],
        name=doc["name"],
        platform_name=doc["platform_name"],
        platform_description=str(doc.get("platform_description", "")),
        selected_criteria=frozenset(str(c) for c in selection),
        version=version,
    )
    for idx, raw in enumerate(doc.get("responses", []) or []):
        response = _response_from_dict(raw, f"responses[{idx}]")
        key = (response.assessor_id, response.question_id)
        if key in project.responses:
            raise ValidationError(
                f"responses[{idx}]: duplicate response for {key}"
            )
        project.responses[key] = response
    for sidx, raws in enumerate(doc.get("snapshots", []) or []):
        loc = f"snapshots[{sidx}]"
        if not isinstance(raws, dict) or not isinstance(raws.get("id"), str):
            raise ValidationError(f"{loc}: snapshot must be an object with a string id")
        label = raws.get("label")
        if label is not None and not isinstance(label, str):
            raise ValidationError(f"{loc}.label: must be a string or null")
        frozen = tuple(
            _response_from_dict(raw, f"{loc}.responses[{ridx}]")
            for ridx, raw in enumerate(raws.get("responses", []) or [])
        )
        project.snapshots.append(
            Snapshot(
                id=raws["id"],
                label=label,
                created_at=str(raws.get("created_at", "")),
                responses=frozen,
            )
        )

    if catalog is not None:
        unknown = sorted(c for c in project.selected_criteria if not catalog.has_criterion(c))
        if unknown:
            raise ValidationError("unknown criterion id(s): " + ", ".join(unknown))
        for r in project.responses.values():
            if not catalog.has_question(r.question_id):
                raise ValidationError(f"unknown question id: {r.question_id!r}")
            owner = catalog.question_owner(r.question_id)
            if owner.id not in project.selected_criteria:
                raise ValidationError(
                    f"response for question {r.question_id!r} targets unselected "
                    f"criterion {owner.id!r}"
                )
    return project


def _response_from_dict(raw, loc: str) -> Response:
    if not isinstance(raw, dict):
        raise ValidationError(f"{loc}: response must be an object")
    assessor = raw.get("assessor_id")
    question = raw.get("question_id")
    if not isinstance(assessor, str) or not assessor.strip():
        raise ValidationError(f"{loc}.assessor_id: must be a non-empty string")
    if not isinstance(question, str) or not question.strip():
        raise ValidationError(f"{loc}.question_id: must be a non-empty string")
    try:
        rating = LikertRating(raw.get("value"))
    except ValidationError as exc:
        raise ValidationError(f"{loc}.value: {exc}") from None
    return Response(
        assessor_id=assessor,
        question_id=question,
        rating=rating,
        recorded_at=str(raw.get("recorded_at", "")),
    )


def report_to_dict(report: SatisfactionReport) -> dict:
    return {
        "project_id": report.project_id,
        "criteria": [
            {
                "criterion_id": s.criterion_id,
                "raw": s.raw,
                "normalized": s.normalized,
                "coverage": s.coverage,
            }
            for s in report.scores
        ],
        "layers": {
            layer.value: {
                "score": score.normalized,
                "raw": score.raw,
                "coverage": score.coverage,
            }
            for layer, score in report.layers.items()
        },
        "generated_at": report.generated_at,
    }


def report_csv(report: SatisfactionReport) -> str:
    """criterion_id,raw,normalized,coverage rows."""
    buf = io.StringIO()
    buf.write("criterion_id,raw,normalized,coverage\r\n")
    for s in report.scores:
        buf.write(f"{s.criterion_id},{s.raw!r},{s.normalized!r},{s.coverage!r}\r\n")
    return buf.getvalue()


def report_layers_csv(report: SatisfactionReport) -> str:
    """layer,score,coverage rows (score normalized to [0, 1])."""
    buf = io.StringIO()
    buf.write("layer,score,coverage\r\n")
    for layer, score in report.layers.items():
        buf.write(f"{layer.value},{score.normalized!r},{score.coverage!r}\r\n")
    return buf.getvalue()
