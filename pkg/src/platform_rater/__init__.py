"""platform-rater: criteria catalog, Likert assessment scoring, and AHP ranking."""

from .ahp import (
    ComparisonMatrix,
    ConsistencyReport,
    PriorityVector,
    RankingResult,
    build_matrix,
    consistency,
    kiviat_series,
    priority_vector,
    rank_platforms,
    scale_from_label,
)
from .assessment import (
    AssessmentProject,
    CriterionScore,
    LikertRating,
    SatisfactionReport,
    create_project,
    criterion_score,
    layer_rollup,
    question_consensus,
    record_response,
    satisfaction_report,
    snapshot,
)
from .catalog import (
    Catalog,
    Criterion,
    Dimension,
    Layer,
    LeadingQuestion,
    LintFinding,
    bundled_catalog,
    criterion_questions,
    default_catalog,
    filter_criteria,
    lint_catalog,
    load_catalog,
)
from .errors import ConflictError, NotFoundError, PlatformRaterError, ValidationError
from .store import DocumentStore, StoredDocument

__version__ = "0.1.0"

__all__ = [
    "AssessmentProject",
    "Catalog",
    "ComparisonMatrix",
    "ConflictError",
    "ConsistencyReport",
    "Criterion",
    "CriterionScore",
    "Dimension",
    "DocumentStore",
    "Layer",
    "LeadingQuestion",
    "LikertRating",
    "LintFinding",
    "NotFoundError",
    "PlatformRaterError",
    "PriorityVector",
    "RankingResult",
    "SatisfactionReport",
    "StoredDocument",
    "ValidationError",
    "build_matrix",
    "bundled_catalog",
    "consistency",
    "create_project",
    "criterion_questions",
    "criterion_score",
    "default_catalog",
    "filter_criteria",
    "kiviat_series",
    "layer_rollup",
    "lint_catalog",
    "load_catalog",
    "priority_vector",
    "question_consensus",
    "rank_platforms",
    "record_response",
    "satisfaction_report",
    "scale_from_label",
    "snapshot",
]
