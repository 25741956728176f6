import io
import json

import pytest

from platform_rater.catalog import (
    Catalog,
    CatalogError,
    Criterion,
    Dimension,
    Layer,
    LeadingQuestion,
    catalog_to_dict,
    criterion_questions,
    criterion_to_dict,
    filter_criteria,
    lint_catalog,
    load_catalog,
)
from platform_rater.errors import NotFoundError

MINIMAL = {
    "schema_version": 1,
    "criteria": [
        {
            "id": "only",
            "name": "Only",
            "dimension": "functional",
            "description": "d",
            "questions": [{"id": "only-q1", "text": "t?", "layers": ["DL"]}],
        }
    ],
}


def minimal_doc(**overrides):
    doc = json.loads(json.dumps(MINIMAL))
    doc["criteria"][0].update(overrides)
    return doc


# ---------------------------------------------------------------------------
# loading
# ---------------------------------------------------------------------------


def test_bundled_catalog_counts(catalog):
    assert len(catalog) == 27
    assert len(filter_criteria(catalog, Dimension.FUNCTIONAL)) == 11
    assert len(filter_criteria(catalog, Dimension.NON_FUNCTIONAL)) == 16


def test_minimal_catalog_loads():
    loaded = load_catalog(MINIMAL)
    assert len(loaded) == 1
    assert loaded.criterion("only").questions[0].applicable_layers == {Layer.DL}


def test_load_from_file_object():
    loaded = load_catalog(io.StringIO(json.dumps(MINIMAL)))
    assert len(loaded) == 1


def test_zero_questions_rejected_naming_mc8():
    with pytest.raises(CatalogError, match="MC8") as exc:
        load_catalog(minimal_doc(questions=[]))
    assert "criteria[0].questions" in str(exc.value)


def test_zero_layers_rejected_naming_mc2():
    doc = minimal_doc(questions=[{"id": "q", "text": "t?", "layers": []}])
    with pytest.raises(CatalogError, match="MC2"):
        load_catalog(doc)


def test_unknown_layer_tag_reports_location():
    doc = minimal_doc(questions=[{"id": "q", "text": "t?", "layers": ["XX"]}])
    with pytest.raises(CatalogError, match=r"criteria\[0\].questions\[0\].layers"):
        load_catalog(doc)


def test_duplicate_criterion_id_rejected():
    doc = json.loads(json.dumps(MINIMAL))
    dup = json.loads(json.dumps(doc["criteria"][0]))
    dup["questions"][0]["id"] = "other-q1"
    doc["criteria"].append(dup)
    with pytest.raises(CatalogError, match="duplicate criterion id"):
        load_catalog(doc)


def test_duplicate_question_id_rejected():
    doc = minimal_doc(
        questions=[
            {"id": "q", "text": "t?", "layers": ["DL"]},
            {"id": "q", "text": "u?", "layers": ["UL"]},
        ]
    )
    with pytest.raises(CatalogError, match="duplicate question id"):
        load_catalog(doc)


def test_bad_dimension_rejected():
    with pytest.raises(CatalogError, match="dimension"):
        load_catalog(minimal_doc(dimension="quality"))


def test_malformed_json_rejected(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(CatalogError, match="not valid JSON"):
        load_catalog(path)


def test_schema_version_required():
    doc = json.loads(json.dumps(MINIMAL))
    doc["schema_version"] = "one"
    with pytest.raises(CatalogError, match="schema_version"):
        load_catalog(doc)


# ---------------------------------------------------------------------------
# golden layer-applicability data (sampled rows of the bundled tables)
# ---------------------------------------------------------------------------

GOLDEN_QUESTION_LAYERS = [
    ("resource-discovery-q1", {"AL", "SL", "PL"}),
    ("data-accumulation-q1", {"AL", "SL", "PL"}),
    ("data-storing-q1", {"DL"}),
    ("data-analysis-q1", {"SL"}),
    ("data-visualization-q1", {"UL"}),
    ("continuous-monitoring-q1", {"AL", "SL", "DL", "PL"}),
    ("security-q1", {"UL", "AL", "SL", "DL", "PL"}),
    ("security-q5", {"PL"}),
    ("privacy-q1", {"AL", "SL"}),
    ("interoperability-q1", {"AL"}),
    ("interoperability-q3", {"DL"}),
    ("reusability-q4", {"AL", "SL", "DL", "PL"}),
    ("availability-q2", {"DL"}),
    ("extensibility-q1", {"AL", "SL"}),
    ("usability-q1", {"UL"}),
    ("mobility-q4", {"DL"}),
    ("efficiency-q3", {"PL"}),
]


@pytest.mark.parametrize("question_id,expected", GOLDEN_QUESTION_LAYERS)
def test_golden_applicability_marks(catalog, question_id, expected):
    question = catalog.question(question_id)
    assert {layer.value for layer in question.applicable_layers} == expected


def test_security_pl_questions_include_access_control_list(catalog):
    questions = criterion_questions(catalog, "security", Layer.PL)
    texts = {q.id: q.text for q in questions}
    assert "security-q5" in texts
    assert "access control list" in texts["security-q5"]


# ---------------------------------------------------------------------------
# filtering
# ---------------------------------------------------------------------------


def test_filter_identity(catalog):
    assert filter_criteria(catalog) == list(catalog.criteria)


def test_filter_functional_dl(catalog):
    ids = [c.id for c in filter_criteria(catalog, Dimension.FUNCTIONAL, Layer.DL)]
    assert "data-storing" in ids
    assert "data-visualization" not in ids


def test_filter_functional_ul_is_data_visualization_only(catalog):
    ids = [c.id for c in filter_criteria(catalog, Dimension.FUNCTIONAL, Layer.UL)]
    assert ids == ["data-visualization"]


@pytest.mark.parametrize("dimension", [None, Dimension.FUNCTIONAL, Dimension.NON_FUNCTIONAL])
@pytest.mark.parametrize("layer", [None, *list(Layer)])
def test_filter_is_order_preserving_subset(catalog, dimension, layer):
    filtered = [c.id for c in filter_criteria(catalog, dimension, layer)]
    all_ids = [c.id for c in catalog.criteria]
    assert set(filtered) <= set(all_ids)
    assert filtered == [cid for cid in all_ids if cid in set(filtered)]


def test_criterion_questions_order_and_filter(catalog):
    every = criterion_questions(catalog, "security")
    assert [q.id for q in every] == [f"security-q{i}" for i in range(1, 8)]
    dl_only = criterion_questions(catalog, "security", Layer.DL)
    assert [q.id for q in dl_only] == ["security-q1", "security-q2", "security-q4", "security-q6", "security-q7"]


def test_criterion_questions_unknown_id(catalog):
    with pytest.raises(NotFoundError, match="no-such-id"):
        criterion_questions(catalog, "no-such-id")


# ---------------------------------------------------------------------------
# lint
# ---------------------------------------------------------------------------


def test_bundled_catalog_lints_with_zero_errors(catalog):
    findings = lint_catalog(catalog)
    assert [f for f in findings if f.severity == "error"] == []
    # the scalability/performance verbatim duplicate is a known warning
    assert any(f.rule == "MC3" for f in findings)


def test_only_functional_catalog_warns_mc7():
    findings = lint_catalog(load_catalog(MINIMAL))
    mc7 = [f for f in findings if f.rule == "MC7"]
    assert len(mc7) == 1
    assert mc7[0].severity == "warning"
    assert mc7[0].subject == "non-functional"


def test_shared_question_text_warns_mc3():
    doc = json.loads(json.dumps(MINIMAL))
    doc["criteria"].append(
        {
            "id": "twin",
            "name": "Twin",
            "dimension": "non-functional",
            "description": "d",
            "questions": [{"id": "twin-q1", "text": "t?", "layers": ["DL"]}],
        }
    )
    findings = lint_catalog(load_catalog(doc))
    mc3 = [f for f in findings if f.rule == "MC3"]
    assert len(mc3) == 1
    assert "only" in mc3[0].message and "twin" in mc3[0].message


def test_lint_reports_mc8_and_mc2_on_hand_built_catalog():
    # direct construction bypasses load-time validation, which is exactly
    # what lint exists to catch
    broken = Catalog(
        schema_version=1,
        criteria=(
            Criterion(
                id="empty",
                name="Empty",
                dimension=Dimension.FUNCTIONAL,
                description="d",
                questions=(),
            ),
            Criterion(
                id="floating",
                name="Floating",
                dimension=Dimension.NON_FUNCTIONAL,
                description="d",
                questions=(
                    LeadingQuestion(id="floating-q1", text="t?", applicable_layers=frozenset()),
                ),
            ),
        ),
    )
    rules = {(f.rule, f.severity) for f in lint_catalog(broken)}
    assert ("MC8", "error") in rules
    assert ("MC2", "error") in rules


def test_loaded_catalogs_never_lint_mc8_mc2_errors(catalog):
    for c in (catalog, load_catalog(MINIMAL)):
        assert [f for f in lint_catalog(c) if f.rule in ("MC8", "MC2")] == []


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def test_catalog_round_trip(catalog):
    doc = catalog_to_dict(catalog)
    again = load_catalog(doc)
    assert catalog_to_dict(again) == doc


def test_layers_serialized_in_canonical_order(catalog):
    doc = criterion_to_dict(catalog.criterion("security"))
    assert doc["questions"][0]["layers"] == ["UL", "AL", "SL", "DL", "PL"]


def test_notes_survive_round_trip(catalog):
    doc = criterion_to_dict(catalog.criterion("reliability"))
    assert "notes" in doc
    assert load_catalog({"schema_version": 1, "criteria": [doc]}).criterion("reliability").notes
