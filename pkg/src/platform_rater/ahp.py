"""Multi-platform ranking via pairwise comparisons.

Judgments on the 1-9 qualitative scale (plus reciprocals) populate positive
reciprocal comparison matrices; priorities come from the row geometric mean
normalized to sum 1 (Crawford-Williams), never from the principal eigenvector.
The eigenvector machinery appears only inside the consistency check, whose
random-index constants are the standard published values and can be overridden.
Composite platform weights are the criteria-weighted sum of the per-criterion
platform priorities. All operations here are pure functions over immutable
values and are safe to call concurrently.
"""
from __future__ import annotations

import hashlib
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ValidationError

# 17 representable judgment values: 1/9 .. 1/2, then 1 .. 9.
SCALE_VALUES: tuple[float, ...] = tuple(1.0 / d for d in range(9, 1, -1)) + tuple(
    float(v) for v in range(1, 10)
)

# Qualitative phrases for the integer ratings ("X is <phrase> over/to Y").
JUDGMENT_LABELS: dict[int, str] = {
    1: "equally preferred",
    2: "equally to moderately preferred",
    3: "moderately preferred",
    4: "moderately to strongly preferred",
    5: "strongly preferred",
    6: "strongly to very strongly preferred",
    7: "very strongly preferred",
    8: "very strongly to extremely preferred",
    9: "extremely preferred",
}
_LABEL_TO_VALUE = {label: value for value, label in JUDGMENT_LABELS.items()}

# Random-index constants for n = 1..10 (external constants from the standard
# AHP literature; overrideable via the random_index argument of consistency()).
DEFAULT_RANDOM_INDEX: tuple[float, ...] = (0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49)

DEFAULT_CR_THRESHOLD = 0.10

RECIPROCITY_TOL = 1e-12


def scale_from_label(label: str, direction: str = "forward") -> float:
    """Numeric judgment for a qualitative phrase.

    ``forward`` returns the 1..9 rating; ``reverse`` its reciprocal (the
    symmetric matrix entry). Raises ValidationError on an unknown phrase.
    """
    key = " ".join(label.strip().lower().split())
    value = _LABEL_TO_VALUE.get(key)
    if value is None:
        raise ValidationError(f"unknown judgment label: {label!r}")
    if direction == "forward":
        return float(value)
    if direction == "reverse":
        return 1.0 / value
    raise ValidationError(f"direction must be 'forward' or 'reverse', got {direction!r}")


def snap_to_scale(value, location: str = "value") -> float:
    """Coerce a raw judgment (number or 'a/b' string) onto the 17-value scale.

    Snapping replaces near-misses (within 1e-6 relative) by the exact scale
    member so that reciprocity holds to machine precision downstream.
    """
    if isinstance(value, str):
        try:
            value = float(Fraction(value))
        except (ValueError, ZeroDivisionError):
            raise ValidationError(f"{location}: cannot parse judgment value {value!r}") from None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{location}: judgment value must be a number, got {value!r}")
    value = float(value)
    if value <= 0 or not math.isfinite(value):
        raise ValidationError(f"{location}: judgment value must be positive, got {value!r}")
    for member in SCALE_VALUES:
        if math.isclose(value, member, rel_tol=1e-6):
            return member
    raise ValidationError(
        f"{location}: judgment value {value!r} is not on the 1/9..9 comparison scale"
    )


# ---------------------------------------------------------------------------
# comparison matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComparisonMatrix:
    """Positive pairwise-judgment matrix over ``item_ids`` (unit diagonal)."""

    item_ids: tuple[str, ...]
    entries: np.ndarray  # shape (n, n), row-preferred-over-column ratios

    @property
    def n(self) -> int:
        return len(self.item_ids)

    def __post_init__(self):
        self.entries.setflags(write=False)

    @classmethod
    def from_rows(cls, item_ids, rows, strict: bool = True) -> "ComparisonMatrix":
        """Build from explicit entries.

        ``strict`` enforces reciprocity (a_ij * a_ji = 1 within 1e-12); pass
        False only to audit externally published matrices as printed.
        """
        item_ids = tuple(str(i) for i in item_ids)
        entries = np.array(rows, dtype=float)
        n = len(item_ids)
        if entries.shape != (n, n):
            raise ValidationError(
                f"matrix shape {entries.shape} does not match {n} item ids"
            )
        if not np.all(np.isfinite(entries)) or np.any(entries <= 0):
            raise ValidationError("matrix entries must be positive finite reals")
        if np.any(np.diag(entries) != 1.0):
            raise ValidationError("matrix diagonal entries must equal 1 exactly")
        if strict:
            deviation = np.max(np.abs(entries * entries.T - 1.0))
            if deviation > RECIPROCITY_TOL:
                raise ValidationError(
                    f"matrix is not reciprocal: max |a_ij*a_ji - 1| = {deviation:.3g}"
                )
        return cls(item_ids=item_ids, entries=entries)

    def index_of(self, item_id: str) -> int:
        try:
            return self.item_ids.index(item_id)
        except ValueError:
            raise ValidationError(f"unknown item id: {item_id!r}") from None


def build_matrix(item_ids, judgments, location: str = "judgments") -> ComparisonMatrix:
    """Comparison matrix from one judgment per unordered pair.

    ``judgments`` is an iterable of (i, j, value) with i/j given as item ids or
    0-based indices and value on the 17-member scale; the (j, i) entry is
    constructed as exactly 1/value. Requires all n(n-1)/2 pairs, each once.
    """
    item_ids = tuple(str(i) for i in item_ids)
    n = len(item_ids)
    if n == 0:
        raise ValidationError(f"{location}: item list is empty")
    if len(set(item_ids)) != n:
        raise ValidationError(f"{location}: duplicate item ids")
    index = {item: k for k, item in enumerate(item_ids)}

    entries = np.ones((n, n), dtype=float)
    given: dict[frozenset, tuple[int, int, float]] = {}
    details: list[dict] = []

    def resolve(ref, what):
        if isinstance(ref, bool):
            raise ValidationError(f"{location}: invalid {what} reference {ref!r}")
        if isinstance(ref, int):
            if not 0 <= ref < n:
                raise ValidationError(f"{location}: {what} index {ref} out of range")
            return ref
        if ref in index:
            return index[ref]
        raise ValidationError(f"{location}: unknown {what} id {ref!r}")

    for raw in judgments:
        i_ref, j_ref, value = raw
        i = resolve(i_ref, "row")
        j = resolve(j_ref, "column")
        if i == j:
            raise ValidationError(
                f"{location}: self-comparison ({item_ids[i]}, {item_ids[j]}) is not allowed"
            )
        value = snap_to_scale(value, location)
        pair = frozenset((i, j))
        if pair in given:
            pi, pj, pv = given[pair]
            same = (pi, pj) == (i, j) and pv == value
            kind = "duplicate" if same else "conflicting duplicate"
            raise ValidationError(
                f"{location}: {kind} judgment for pair ({item_ids[min(i, j)]}, "
                f"{item_ids[max(i, j)]})"
            )
        given[pair] = (i, j, value)
        entries[i, j] = value
        entries[j, i] = 1.0 / value

    missing = [
        (item_ids[i], item_ids[j])
        for i in range(n)
        for j in range(i + 1, n)
        if frozenset((i, j)) not in given
    ]
    if missing:
        for a, b in missing:
            details.append({"field": location, "message": f"missing judgment for pair ({a}, {b})"})
        raise ValidationError(
            f"{location}: missing judgment for pair"
            + ("s" if len(missing) > 1 else "")
            + " " + ", ".join(f"({a}, {b})" for a, b in missing),
            details=details,
        )
    return ComparisonMatrix(item_ids=item_ids, entries=entries)


# ---------------------------------------------------------------------------
# priorities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PriorityVector:
    item_ids: tuple[str, ...]
    weights: np.ndarray  # positive, sums to 1

    def __post_init__(self):
        self.weights.setflags(write=False)

    def weight(self, item_id: str) -> float:
        try:
            return float(self.weights[self.item_ids.index(item_id)])
        except ValueError:
            raise ValidationError(f"unknown item id: {item_id!r}") from None

    def as_dict(self) -> dict[str, float]:
        return {item: float(w) for item, w in zip(self.item_ids, self.weights)}


def priority_vector(matrix: ComparisonMatrix) -> PriorityVector:
    """Row-geometric-mean weights, normalized to sum 1.

    weight_i = (prod_j a_ij)^(1/n) / sum_r (prod_j a_rj)^(1/n)
    """
    gm = np.exp(np.mean(np.log(matrix.entries), axis=1))
    weights = gm / gm.sum()
    return PriorityVector(item_ids=matrix.item_ids, weights=weights)


@dataclass(frozen=True)
class ConsistencyReport:
    lambda_max: float
    ci: float
    cr: float
    flagged: bool  # cr above threshold; advisory only, never gates ranking

    def as_dict(self) -> dict:
        return {
            "lambda_max": self.lambda_max,
            "ci": self.ci,
            "cr": self.cr,
            "flagged": self.flagged,
        }


def consistency(
    matrix: ComparisonMatrix,
    threshold: float = DEFAULT_CR_THRESHOLD,
    random_index: tuple[float, ...] = DEFAULT_RANDOM_INDEX,
) -> ConsistencyReport:
    """Consistency ratio of a comparison matrix.

    lambda_max is the principal eigenvalue (for the principal eigenvector w it
    equals the mean of (A@w)/w); ci = (lambda_max - n)/(n - 1); cr = ci/RI(n).
    Matrices of size 1 and 2 are consistent by convention (ci = cr = 0). Sizes
    beyond the configured random-index table reuse its last entry, which
    slightly overstates cr; the report is advisory either way.
    """
    n = matrix.n
    if n == 1:
        return ConsistencyReport(lambda_max=1.0, ci=0.0, cr=0.0, flagged=False)
    eigenvalues = np.linalg.eigvals(matrix.entries)
    lambda_max = float(np.max(eigenvalues.real))
    if n <= 2:
        return ConsistencyReport(lambda_max=lambda_max, ci=0.0, cr=0.0, flagged=False)
    ci = (lambda_max - n) / (n - 1)
    ri = random_index[min(n, len(random_index)) - 1]
    cr = ci / ri if ri > 0 else 0.0
    return ConsistencyReport(lambda_max=lambda_max, ci=ci, cr=cr, flagged=cr > threshold)


# ---------------------------------------------------------------------------
# ranking
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RankingResult:
    criteria_priorities: PriorityVector
    platform_priorities: dict[str, PriorityVector]  # criterion id -> platform weights
    composite: PriorityVector
    consistency: dict[str, ConsistencyReport]  # "criteria" + one entry per criterion

    @property
    def criteria(self) -> tuple[str, ...]:
        return self.criteria_priorities.item_ids

    @property
    def platforms(self) -> tuple[str, ...]:
        return self.composite.item_ids

    def ranking(self) -> list[tuple[str, float]]:
        """(platform, composite weight) ordered by descending weight, stable on ties."""
        order = sorted(
            range(len(self.platforms)),
            key=lambda k: (-self.composite.weights[k], k),
        )
        return [(self.platforms[k], float(self.composite.weights[k])) for k in order]


def rank_platforms(
    criteria_matrix: ComparisonMatrix,
    platform_matrices: dict[str, ComparisonMatrix],
    threshold: float = DEFAULT_CR_THRESHOLD,
    random_index: tuple[float, ...] = DEFAULT_RANDOM_INDEX,
) -> RankingResult:
    """Full ranking: criteria weights, per-criterion platform weights, composites.

    Every platform matrix must cover the identical ordered platform list and
    ``platform_matrices`` must have exactly the criteria-matrix item ids as
    keys. composite_i = sum_c platform_priorities[c][i] * criteria_weight[c].
    """
    criteria = criteria_matrix.item_ids
    missing = [c for c in criteria if c not in platform_matrices]
    if missing:
        raise ValidationError(
            "missing platform comparison matrix for criteri"
            + ("a" if len(missing) > 1 else "on")
            + ": " + ", ".join(missing)
        )
    extra = [c for c in platform_matrices if c not in criteria]
    if extra:
        raise ValidationError(
            "platform matrices given for unknown criteria: " + ", ".join(sorted(extra))
        )

    platform_ids: tuple[str, ...] | None = None
    for cid in criteria:
        ids = platform_matrices[cid].item_ids
        if platform_ids is None:
            platform_ids = ids
        elif ids != platform_ids:
            raise ValidationError(
                f"platform list mismatch: matrix for {cid!r} covers {list(ids)}, "
                f"expected {list(platform_ids)}"
            )
    assert platform_ids is not None

    criteria_priorities = priority_vector(criteria_matrix)
    platform_priorities = {cid: priority_vector(platform_matrices[cid]) for cid in criteria}

    composite = np.zeros(len(platform_ids))
    for cid, cweight in zip(criteria, criteria_priorities.weights):
        composite += platform_priorities[cid].weights * cweight

    reports = {"criteria": consistency(criteria_matrix, threshold, random_index)}
    for cid in criteria:
        reports[cid] = consistency(platform_matrices[cid], threshold, random_index)

    return RankingResult(
        criteria_priorities=criteria_priorities,
        platform_priorities=platform_priorities,
        composite=PriorityVector(item_ids=platform_ids, weights=composite),
        consistency=reports,
    )


def kiviat_series(result: RankingResult) -> list[dict]:
    """Radar-chart series: one per platform, over the criteria axes in order."""
    return [
        {
            "platform": platform,
            "values": [
                {
                    "criterion": cid,
                    "weight": float(result.platform_priorities[cid].weight(platform)),
                }
                for cid in result.criteria
            ],
        }
        for platform in result.platforms
    ]


# ---------------------------------------------------------------------------
# ranking documents (file format + serialization)
# ---------------------------------------------------------------------------


def parse_ranking_input(doc: dict) -> tuple[str, ComparisonMatrix, dict[str, ComparisonMatrix]]:
    """Validate a ranking input document into matrices.

    Expected shape::

        {"id": optional str,
         "criteria": [ids...],
         "criteria_judgments": [{"i": id, "j": id, "value": number-or-'a/b'}, ...],
         "platforms": [ids...],
         "platform_judgments": {criterion id: [{"i","j","value"}, ...], ...}}

    Returns (ranking id, criteria matrix, platform matrices). A missing id is
    derived from a content hash so identical inputs share an id.
    """
    if not isinstance(doc, dict):
        raise ValidationError("ranking input must be a JSON object")
    criteria = _require_id_list(doc, "criteria")
    platforms = _require_id_list(doc, "platforms")
    criteria_matrix = build_matrix(
        criteria, _judgment_tuples(doc.get("criteria_judgments"), "criteria_judgments"),
        location="criteria_judgments",
    )
    raw_pj = doc.get("platform_judgments")
    if not isinstance(raw_pj, dict):
        raise ValidationError("platform_judgments must be an object keyed by criterion id")
    platform_matrices = {}
    for cid in criteria:
        loc = f"platform_judgments[{cid}]"
        if cid not in raw_pj:
            raise ValidationError(f"{loc}: missing judgment set")
        platform_matrices[cid] = build_matrix(
            platforms, _judgment_tuples(raw_pj[cid], loc), location=loc
        )
    unknown = sorted(set(raw_pj) - set(criteria))
    if unknown:
        raise ValidationError(
            "platform_judgments given for unknown criteria: " + ", ".join(unknown)
        )

    ranking_id = doc.get("id")
    if ranking_id is None:
        ranking_id = derive_ranking_id(doc)
    elif not isinstance(ranking_id, str) or not ranking_id.strip():
        raise ValidationError("id must be a non-empty string when present")
    return str(ranking_id), criteria_matrix, platform_matrices


def validate_ranking_draft(doc: dict) -> None:
    """Structural check for an in-progress ranking input.

    Drafts may hold incomplete judgment sets (the pairwise wizard saves as it
    goes), so completeness is not required here; parse_ranking_input enforces
    it at ranking time. Shapes and judgment values are still validated.
    """
    if not isinstance(doc, dict):
        raise ValidationError("ranking draft must be a JSON object")
    for key in ("criteria", "platforms"):
        raw = doc.get(key)
        if raw is None:
            continue
        if not isinstance(raw, list) or any(
            not isinstance(item, str) or not item.strip() for item in raw
        ):
            raise ValidationError(f"{key} must be an array of non-empty strings")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise ValidationError("name must be a string")
    raw_cj = doc.get("criteria_judgments")
    if raw_cj is not None:
        for i, j, value in _judgment_tuples(raw_cj, "criteria_judgments"):
            snap_to_scale(value, "criteria_judgments")
    raw_pj = doc.get("platform_judgments")
    if raw_pj is not None:
        if not isinstance(raw_pj, dict):
            raise ValidationError("platform_judgments must be an object keyed by criterion id")
        for cid, judgments in raw_pj.items():
            loc = f"platform_judgments[{cid}]"
            for i, j, value in _judgment_tuples(judgments, loc):
                snap_to_scale(value, loc)


def derive_ranking_id(doc: dict) -> str:
    canonical = {k: v for k, v in doc.items() if k != "id"}
    blob = json.dumps(canonical, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:12]


def _require_id_list(doc: dict, key: str) -> list[str]:
    raw = doc.get(key)
    if not isinstance(raw, list) or not raw:
        raise ValidationError(f"{key} must be a non-empty array of ids")
    out = []
    for item in raw:
        if not isinstance(item, str) or not item.strip():
            raise ValidationError(f"{key} entries must be non-empty strings, got {item!r}")
        out.append(item)
    return out


def _judgment_tuples(raw, location: str):
    if not isinstance(raw, list):
        raise ValidationError(f"{location}: must be an array of judgments")
    out = []
    for idx, entry in enumerate(raw):
        if not isinstance(entry, dict) or not {"i", "j", "value"} <= set(entry):
            raise ValidationError(
                f"{location}[{idx}]: judgment must be an object with i, j, value"
            )
        out.append((entry["i"], entry["j"], entry["value"]))
    return out


def ranking_result_to_dict(result: RankingResult, ranking_id: str | None = None) -> dict:
    out = {
        "criteria": list(result.criteria),
        "platforms": list(result.platforms),
        "criteria_priorities": result.criteria_priorities.as_dict(),
        "platform_priorities": {
            cid: result.platform_priorities[cid].as_dict() for cid in result.criteria
        },
        "composite": result.composite.as_dict(),
        "ranking": [
            {"platform": platform, "composite_weight": weight, "rank": position}
            for position, (platform, weight) in enumerate(result.ranking(), start=1)
        ],
        "consistency": {key: report.as_dict() for key, report in result.consistency.items()},
    }
    if ranking_id is not None:
        out = {"id": ranking_id, **out}
    return out


def ranking_result_csv(result_doc: dict) -> str:
    """``platform,composite_weight,rank`` rows from a serialized result."""
    buf = io.StringIO()
    buf.write("platform,composite_weight,rank\r\n")
    for row in result_doc["ranking"]:
        buf.write(f"{row['platform']},{row['composite_weight']!r},{row['rank']}\r\n")
    return buf.getvalue()


def kiviat_from_result_dict(result_doc: dict) -> list[dict]:
    """Reshape a serialized result into radar series (no recomputation)."""
    return [
        {
            "platform": platform,
            "values": [
                {
                    "criterion": cid,
                    "weight": result_doc["platform_priorities"][cid][platform],
                }
                for cid in result_doc["criteria"]
            ],
        }
        for platform in result_doc["platforms"]
    ]


def consistency_warnings(result_doc: dict, threshold: float = DEFAULT_CR_THRESHOLD) -> list[str]:
    """Human-readable warnings for every flagged matrix in a serialized result."""
    out = []
    for key, report in result_doc["consistency"].items():
        if report["flagged"]:
            out.append(
                f"consistency ratio {report['cr']:.3f} exceeds {threshold:.2f} "
                f"for matrix {key!r}"
            )
    return out
