"""Evaluation-criteria catalog: loading, validation, filtering, and lint checks.

The catalog is data, not code: the bundled document under ``data/criteria.json``
holds 27 criteria (11 functional, 16 non-functional), each with one or more
leading questions tagged with the architecture layers they apply to. Users may
point ``PLATFORM_RATER_CATALOG`` at a replacement document with the same schema.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import NotFoundError, ValidationError

LAYER_ORDER = ("UL", "AL", "SL", "DL", "PL")


class Layer(str, Enum):
    """Architecture layers a leading question can apply to."""

    UL = "UL"  # user interface
    AL = "AL"  # application
    SL = "SL"  # service
    DL = "DL"  # data
    PL = "PL"  # physical / infrastructure


class Dimension(str, Enum):
    FUNCTIONAL = "functional"
    NON_FUNCTIONAL = "non-functional"


class CatalogError(ValidationError):
    """A catalog document failed validation. ``location`` points at the offending node."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        full = f"{location}: {message}" if location else message
        super().__init__(full, details=[{"field": location or "", "message": message}])


@dataclass(frozen=True)
class LeadingQuestion:
    id: str
    text: str
    applicable_layers: frozenset[Layer]

    def applies_to(self, layer: Layer) -> bool:
        return layer in self.applicable_layers

    def layers_sorted(self) -> list[Layer]:
        return [Layer(tag) for tag in LAYER_ORDER if Layer(tag) in self.applicable_layers]


@dataclass(frozen=True)
class Criterion:
    id: str
    name: str
    dimension: Dimension
    description: str
    questions: tuple[LeadingQuestion, ...]
    notes: str | None = None

    def question(self, question_id: str) -> LeadingQuestion:
        for q in self.questions:
            if q.id == question_id:
                return q
        raise NotFoundError(f"unknown question id: {question_id!r}")

    def layers(self) -> frozenset[Layer]:
        out: set[Layer] = set()
        for q in self.questions:
            out |= q.applicable_layers
        return frozenset(out)


@dataclass(frozen=True)
class Catalog:
    schema_version: int
    criteria: tuple[Criterion, ...]
    _by_id: dict = field(init=False, repr=False, compare=False, default_factory=dict)
    _question_owner: dict = field(init=False, repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        for criterion in self.criteria:
            self._by_id[criterion.id] = criterion
            for q in criterion.questions:
                self._question_owner[q.id] = criterion

    def __len__(self) -> int:
        return len(self.criteria)

    def criterion(self, criterion_id: str) -> Criterion:
        try:
            return self._by_id[criterion_id]
        except KeyError:
            raise NotFoundError(f"unknown criterion id: {criterion_id!r}") from None

    def has_criterion(self, criterion_id: str) -> bool:
        return criterion_id in self._by_id

    def question(self, question_id: str) -> LeadingQuestion:
        return self.question_owner(question_id).question(question_id)

    def question_owner(self, question_id: str) -> Criterion:
        """The criterion a question belongs to."""
        try:
            return self._question_owner[question_id]
        except KeyError:
            raise NotFoundError(f"unknown question id: {question_id!r}") from None

    def has_question(self, question_id: str) -> bool:
        return question_id in self._question_owner


@dataclass(frozen=True)
class LintFinding:
    rule: str  # meta-criterion id: MC2, MC3, MC7, MC8
    severity: str  # "error" | "warning"
    subject: str  # criterion or question id
    message: str


# ---------------------------------------------------------------------------
# loading
# ---------------------------------------------------------------------------


def load_catalog(source) -> Catalog:
    """Parse and validate a catalog document.

    ``source`` may be a mapping (already-parsed JSON), a path, or a readable
    file object. Raises CatalogError naming the offending location on invalid
    input; criterion order is preserved from the source.
    """
    doc = _read_document(source)
    if not isinstance(doc, dict):
        raise CatalogError("catalog document must be a JSON object", "$")
    schema_version = doc.get("schema_version")
    if not isinstance(schema_version, int) or isinstance(schema_version, bool):
        raise CatalogError("schema_version must be an integer", "schema_version")
    raw_criteria = doc.get("criteria")
    if not isinstance(raw_criteria, list):
        raise CatalogError("criteria must be an array", "criteria")

    criteria: list[Criterion] = []
    seen_criteria: set[str] = set()
    seen_questions: set[str] = set()
    for idx, raw in enumerate(raw_criteria):
        loc = f"criteria[{idx}]"
        criterion = _parse_criterion(raw, loc, seen_questions)
        if criterion.id in seen_criteria:
            raise CatalogError(f"duplicate criterion id {criterion.id!r}", f"{loc}.id")
        seen_criteria.add(criterion.id)
        criteria.append(criterion)

    return Catalog(schema_version=schema_version, criteria=tuple(criteria))


def _read_document(source):
    if isinstance(source, dict):
        return source
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            return _parse_json(fh)
    if hasattr(source, "read"):
        return _parse_json(source)
    raise CatalogError(f"unsupported catalog source: {type(source).__name__}", "$")


def _parse_json(fh):
    try:
        return json.load(fh)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"not valid JSON: {exc}", "$") from exc


def _parse_criterion(raw, loc: str, seen_questions: set[str]) -> Criterion:
    if not isinstance(raw, dict):
        raise CatalogError("criterion must be an object", loc)
    cid = _require_str(raw, "id", loc)
    name = _require_str(raw, "name", loc)
    try:
        dimension = Dimension(raw.get("dimension"))
    except ValueError:
        raise CatalogError(
            f"dimension must be 'functional' or 'non-functional', got {raw.get('dimension')!r}",
            f"{loc}.dimension",
        ) from None
    description = _require_str(raw, "description", loc)
    notes = raw.get("notes")
    if notes is not None and not isinstance(notes, str):
        raise CatalogError("notes must be a string", f"{loc}.notes")

    raw_questions = raw.get("questions")
    if not isinstance(raw_questions, list) or not raw_questions:
        # measurability (MC8): a criterion without at least one question cannot be assessed
        raise CatalogError(
            f"criterion {cid!r} has no leading questions (violates MC8 measurability)",
            f"{loc}.questions",
        )
    questions: list[LeadingQuestion] = []
    for qidx, rawq in enumerate(raw_questions):
        qloc = f"{loc}.questions[{qidx}]"
        question = _parse_question(rawq, qloc)
        if question.id in seen_questions:
            raise CatalogError(f"duplicate question id {question.id!r}", f"{qloc}.id")
        seen_questions.add(question.id)
        questions.append(question)

    return Criterion(
        id=cid,
        name=name,
        dimension=dimension,
        description=description,
        questions=tuple(questions),
        notes=notes,
    )


def _parse_question(raw, loc: str) -> LeadingQuestion:
    if not isinstance(raw, dict):
        raise CatalogError("question must be an object", loc)
    qid = _require_str(raw, "id", loc)
    text = _require_str(raw, "text", loc)
    raw_layers = raw.get("layers")
    if not isinstance(raw_layers, list) or not raw_layers:
        # preciseness (MC2): a question must target at least one layer
        raise CatalogError(
            f"question {qid!r} applies to no layer (violates MC2 preciseness)",
            f"{loc}.layers",
        )
    layers: set[Layer] = set()
    for tag in raw_layers:
        try:
            layers.add(Layer(tag))
        except ValueError:
            raise CatalogError(f"unknown layer tag {tag!r}", f"{loc}.layers") from None
    return LeadingQuestion(id=qid, text=text, applicable_layers=frozenset(layers))


def _require_str(raw: dict, key: str, loc: str) -> str:
    value = raw.get(key)
    if not isinstance(value, str) or not value.strip():
        raise CatalogError(f"{key} must be a non-empty string", f"{loc}.{key}")
    return value


@lru_cache(maxsize=1)
def bundled_catalog() -> Catalog:
    """The catalog shipped with the package."""
    with resources.files("platform_rater").joinpath("data/criteria.json").open(
        "r", encoding="utf-8"
    ) as fh:
        return load_catalog(fh)


def default_catalog() -> Catalog:
    """Bundled catalog, unless PLATFORM_RATER_CATALOG points at a replacement file."""
    override = os.environ.get("PLATFORM_RATER_CATALOG")
    if override:
        return load_catalog(override)
    return bundled_catalog()


# ---------------------------------------------------------------------------
# queries
# ---------------------------------------------------------------------------


def filter_criteria(
    catalog: Catalog,
    dimension: Dimension | None = None,
    layer: Layer | None = None,
) -> list[Criterion]:
    """Criteria matching ``dimension`` that have >= 1 question applicable to ``layer``.

    Both filters optional; order preserved from the catalog.
    """
    out = []
    for criterion in catalog.criteria:
        if dimension is not None and criterion.dimension != dimension:
            continue
        if layer is not None and not any(q.applies_to(layer) for q in criterion.questions):
            continue
        out.append(criterion)
    return out


def criterion_questions(
    catalog: Catalog, criterion_id: str, layer: Layer | None = None
) -> list[LeadingQuestion]:
    """Questions of one criterion, restricted to ``layer`` when given; order preserved."""
    criterion = catalog.criterion(criterion_id)
    if layer is None:
        return list(criterion.questions)
    return [q for q in criterion.questions if q.applies_to(layer)]


# ---------------------------------------------------------------------------
# lint
# ---------------------------------------------------------------------------


def lint_catalog(catalog: Catalog) -> list[LintFinding]:
    """Deterministic findings for the automatable meta-criteria.

    Never raises: catalogs built by hand (bypassing load_catalog) may violate
    invariants, and lint reports instead of throwing.

    Rules:
      MC8 (error)   criterion with no leading question
      MC2 (error)   question applicable to zero layers
      MC7 (warning) a dimension with zero criteria
      MC3 (warning) two criteria sharing verbatim question text (overlap proxy)
    """
    findings: list[LintFinding] = []

    for criterion in catalog.criteria:
        if not criterion.questions:
            findings.append(
                LintFinding(
                    rule="MC8",
                    severity="error",
                    subject=criterion.id,
                    message=f"criterion {criterion.id!r} has no leading questions",
                )
            )
        for q in criterion.questions:
            if not q.applicable_layers:
                findings.append(
                    LintFinding(
                        rule="MC2",
                        severity="error",
                        subject=q.id,
                        message=f"question {q.id!r} applies to no layer",
                    )
                )

    for dimension in Dimension:
        if not any(c.dimension == dimension for c in catalog.criteria):
            findings.append(
                LintFinding(
                    rule="MC7",
                    severity="warning",
                    subject=dimension.value,
                    message=f"no criteria in the {dimension.value} dimension",
                )
            )

    first_owner: dict[str, tuple[str, str]] = {}  # question text -> (criterion id, question id)
    for criterion in catalog.criteria:
        for q in criterion.questions:
            owner = first_owner.get(q.text)
            if owner is None:
                first_owner[q.text] = (criterion.id, q.id)
            elif owner[0] != criterion.id:
                findings.append(
                    LintFinding(
                        rule="MC3",
                        severity="warning",
                        subject=q.id,
                        message=(
                            f"criteria {owner[0]!r} and {criterion.id!r} share a verbatim "
                            f"question ({owner[1]} / {q.id})"
                        ),
                    )
                )
    return findings


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def question_to_dict(question: LeadingQuestion) -> dict:
    return {
        "id": question.id,
        "text": question.text,
        "layers": [layer.value for layer in question.layers_sorted()],
    }


def criterion_to_dict(criterion: Criterion) -> dict:
    out = {
        "id": criterion.id,
        "name": criterion.name,
        "dimension": criterion.dimension.value,
        "description": criterion.description,
        "questions": [question_to_dict(q) for q in criterion.questions],
    }
    if criterion.notes:
        out["notes"] = criterion.notes
    return out


def catalog_to_dict(catalog: Catalog) -> dict:
    return {
        "schema_version": catalog.schema_version,
        "criteria": [criterion_to_dict(c) for c in catalog.criteria],
    }
