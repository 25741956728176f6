import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import CRITERIA_IDS, CRITERIA_ROWS, PLATFORM_IDS, PLATFORM_ROWS, PRINTED_CPV
from oracles import composite_oracle, geometric_mean_weights, power_iteration_lambda
from platform_rater.ahp import (
    DEFAULT_RANDOM_INDEX,
    JUDGMENT_LABELS,
    SCALE_VALUES,
    ComparisonMatrix,
    build_matrix,
    consistency,
    consistency_warnings,
    derive_ranking_id,
    kiviat_from_result_dict,
    kiviat_series,
    parse_ranking_input,
    priority_vector,
    rank_platforms,
    ranking_result_csv,
    ranking_result_to_dict,
    scale_from_label,
    snap_to_scale,
    validate_ranking_draft,
)
from platform_rater.errors import ValidationError


def fig6_matrix():
    # as printed; one entry breaks exact reciprocity, hence strict=False
    return ComparisonMatrix.from_rows(CRITERIA_IDS, CRITERIA_ROWS, strict=False)


def platform_matrix(cid):
    return ComparisonMatrix.from_rows(PLATFORM_IDS, PLATFORM_ROWS[cid])


def random_reciprocal(rng, n):
    entries = np.ones((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            value = rng.choice(SCALE_VALUES)
            entries[i, j] = value
            entries[j, i] = 1.0 / value
    return ComparisonMatrix.from_rows([f"i{k}" for k in range(n)], entries)


def consistent_matrix(weights):
    weights = np.asarray(weights, dtype=float)
    ids = [f"w{k}" for k in range(len(weights))]
    ratios = np.outer(weights, 1.0 / weights)
    np.fill_diagonal(ratios, 1.0)
    return ComparisonMatrix.from_rows(ids, ratios)


# ---------------------------------------------------------------------------
# judgment scale
# ---------------------------------------------------------------------------


def test_scale_label_examples():
    assert scale_from_label("equally preferred", "forward") == 1
    assert scale_from_label("strongly preferred", "forward") == 5
    assert scale_from_label("strongly preferred", "reverse") == pytest.approx(1 / 5)


@pytest.mark.parametrize("value,label", sorted(JUDGMENT_LABELS.items()))
def test_scale_label_table(value, label):
    assert scale_from_label(label) == value
    assert scale_from_label(label.upper(), "reverse") == pytest.approx(1 / value)


def test_scale_label_unknown():
    with pytest.raises(ValidationError, match="unknown judgment label"):
        scale_from_label("mildly preferred")
    with pytest.raises(ValidationError, match="direction"):
        scale_from_label("equally preferred", "sideways")


def test_snap_to_scale():
    assert snap_to_scale("1/4") == 0.25
    assert snap_to_scale(0.3333333) == 1 / 3
    assert snap_to_scale(7) == 7.0
    for bad in (0, -3, 0.21, 9.5, "2/0", "x", None):
        with pytest.raises(ValidationError):
            snap_to_scale(bad)


def test_scale_has_seventeen_members():
    assert len(SCALE_VALUES) == 17
    assert SCALE_VALUES[0] == pytest.approx(1 / 9)
    assert SCALE_VALUES[-1] == 9.0


# ---------------------------------------------------------------------------
# matrix construction
# ---------------------------------------------------------------------------


def test_build_matrix_reproduces_query_processing_rows():
    matrix = build_matrix(
        PLATFORM_IDS,
        [("aws", "ibm", "1/4"), ("aws", "azure", 3), ("ibm", "azure", 4)],
    )
    assert np.allclose(matrix.entries, PLATFORM_ROWS["query-processing"])


def test_build_matrix_indifference():
    matrix = build_matrix(["x", "y"], [("x", "y", 1)])
    assert np.array_equal(matrix.entries, np.ones((2, 2)))


def test_build_matrix_accepts_indices():
    matrix = build_matrix(["x", "y"], [(0, 1, 2)])
    assert matrix.entries[0, 1] == 2.0
    assert matrix.entries[1, 0] == 0.5


def test_build_matrix_missing_pair_names_it():
    with pytest.raises(ValidationError, match=r"missing judgment for pair \(b, c\)"):
        build_matrix(["a", "b", "c"], [("a", "b", 2), ("a", "c", 3)])


def test_build_matrix_duplicate_and_conflict():
    with pytest.raises(ValidationError, match="duplicate"):
        build_matrix(["a", "b"], [("a", "b", 2), ("a", "b", 2)])
    with pytest.raises(ValidationError, match="conflicting duplicate"):
        build_matrix(["a", "b"], [("a", "b", 2), ("b", "a", 3)])


def test_build_matrix_rejects_off_scale_and_self():
    with pytest.raises(ValidationError, match="scale"):
        build_matrix(["a", "b"], [("a", "b", 2.5)])
    with pytest.raises(ValidationError, match="self-comparison"):
        build_matrix(["a", "b"], [("a", "a", 1)])
    with pytest.raises(ValidationError, match="unknown"):
        build_matrix(["a", "b"], [("a", "z", 2)])


def test_from_rows_validation():
    with pytest.raises(ValidationError, match="reciprocal"):
        ComparisonMatrix.from_rows(["a", "b"], [[1, 3], [1 / 2, 1]])
    with pytest.raises(ValidationError, match="diagonal"):
        ComparisonMatrix.from_rows(["a", "b"], [[2, 3], [1 / 3, 1]])
    with pytest.raises(ValidationError, match="positive"):
        ComparisonMatrix.from_rows(["a", "b"], [[1, -3], [1 / 3, 1]])
    with pytest.raises(ValidationError, match="shape"):
        ComparisonMatrix.from_rows(["a", "b", "c"], [[1, 2], [1 / 2, 1]])


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_build_matrix_reciprocity_property(data):
    n = data.draw(st.integers(min_value=2, max_value=9))
    ids = [f"i{k}" for k in range(n)]
    judgments = [
        (ids[i], ids[j], data.draw(st.sampled_from(SCALE_VALUES)))
        for i in range(n)
        for j in range(i + 1, n)
    ]
    matrix = build_matrix(ids, judgments)
    assert np.max(np.abs(matrix.entries * matrix.entries.T - 1.0)) <= 1e-12


# ---------------------------------------------------------------------------
# priority vectors
# ---------------------------------------------------------------------------


def test_fig6_weights_match_oracle_and_printed_values():
    weights = priority_vector(fig6_matrix()).weights
    oracle = geometric_mean_weights(CRITERIA_ROWS)
    assert np.max(np.abs(weights - oracle)) <= 1e-9
    assert np.max(np.abs(weights - PRINTED_CPV)) <= 0.02
    assert np.allclose(weights, [0.356, 0.279, 0.261, 0.068, 0.036], atol=5e-4)


def test_all_ones_gives_uniform_weights():
    matrix = ComparisonMatrix.from_rows(list("abcd"), np.ones((4, 4)))
    assert np.allclose(priority_vector(matrix).weights, 0.25, atol=1e-15)


def test_consistent_matrix_recovery():
    target = [0.5, 0.25, 0.25]
    weights = priority_vector(consistent_matrix(target)).weights
    assert np.max(np.abs(weights - target)) <= 1e-9


def test_weights_sum_to_one_and_positive():
    rng = np.random.default_rng(7)
    for _ in range(200):
        matrix = random_reciprocal(rng, int(rng.integers(1, 10)))
        weights = priority_vector(matrix).weights
        assert abs(weights.sum() - 1.0) <= 1e-9
        assert np.all(weights > 0)


def test_permutation_equivariance():
    rng = np.random.default_rng(11)
    matrix = random_reciprocal(rng, 6)
    base = priority_vector(matrix)
    perm = rng.permutation(6)
    permuted = ComparisonMatrix.from_rows(
        [matrix.item_ids[k] for k in perm], matrix.entries[np.ix_(perm, perm)]
    )
    weights = priority_vector(permuted)
    for item in matrix.item_ids:
        assert weights.weight(item) == pytest.approx(base.weight(item), abs=1e-12)


def test_single_item_matrix_is_legal():
    matrix = ComparisonMatrix.from_rows(["solo"], [[1.0]])
    assert priority_vector(matrix).weights.tolist() == [1.0]
    report = consistency(matrix)
    assert report.ci == report.cr == 0.0


# ---------------------------------------------------------------------------
# consistency
# ---------------------------------------------------------------------------


def test_all_ones_consistency_is_zero():
    matrix = ComparisonMatrix.from_rows(list("abcd"), np.ones((4, 4)))
    report = consistency(matrix)
    assert report.ci == pytest.approx(0.0, abs=1e-12)
    assert report.cr == pytest.approx(0.0, abs=1e-12)
    assert not report.flagged


def test_generated_consistent_matrix_has_tiny_ci():
    report = consistency(consistent_matrix([0.4, 0.3, 0.2, 0.1]))
    assert report.ci <= 1e-9
    assert not report.flagged


def test_fig6_lambda_matches_power_iteration_oracle():
    report = consistency(fig6_matrix())
    oracle_lambda = power_iteration_lambda(CRITERIA_ROWS)
    assert report.lambda_max == pytest.approx(oracle_lambda, abs=1e-6)
    n = 5
    oracle_ci = (oracle_lambda - n) / (n - 1)
    assert report.cr == pytest.approx(oracle_ci / DEFAULT_RANDOM_INDEX[n - 1], abs=1e-6)
    assert report.flagged  # the sample judgments are visibly inconsistent


def test_two_by_two_is_consistent_by_convention():
    matrix = build_matrix(["a", "b"], [("a", "b", 9)])
    report = consistency(matrix)
    assert report.ci == report.cr == 0.0
    assert report.lambda_max == pytest.approx(2.0, abs=1e-12)


def test_lambda_at_least_n():
    rng = np.random.default_rng(3)
    for _ in range(100):
        n = int(rng.integers(2, 10))
        report = consistency(random_reciprocal(rng, n))
        assert report.lambda_max >= n - 1e-9


def test_random_index_override_and_overflow():
    matrix = consistent_matrix([0.5, 0.3, 0.2])
    custom = consistency(matrix, random_index=(0.0, 0.0, 1.0))
    assert custom.cr == pytest.approx(custom.ci)
    big = random_reciprocal(np.random.default_rng(0), 9)
    # table shorter than n: last entry is reused rather than failing
    short_table = consistency(big, random_index=(0.0, 0.0, 0.58))
    assert short_table.cr == pytest.approx(short_table.ci / 0.58)


def test_threshold_controls_flagging():
    matrix = fig6_matrix()
    assert consistency(matrix, threshold=10.0).flagged is False
    assert consistency(matrix, threshold=0.0).flagged is True


# ---------------------------------------------------------------------------
# ranking
# ---------------------------------------------------------------------------


def worked_example_result():
    return rank_platforms(fig6_matrix(), {cid: platform_matrix(cid) for cid in CRITERIA_IDS})


def test_rank_platforms_matches_chained_oracle():
    result = worked_example_result()
    oracle = composite_oracle(CRITERIA_ROWS, PLATFORM_ROWS, CRITERIA_IDS)
    assert np.max(np.abs(result.composite.weights - oracle)) <= 1e-9
    assert [p for p, _ in result.ranking()] == ["aws", "ibm", "azure"]


def test_rank_platforms_attaches_consistency_for_every_matrix():
    result = worked_example_result()
    assert set(result.consistency) == {"criteria", *CRITERIA_IDS}


def test_single_criterion_composite_is_platform_vector():
    matrices = {"security": platform_matrix("security")}
    criteria = ComparisonMatrix.from_rows(["security"], [[1.0]])
    result = rank_platforms(criteria, matrices)
    assert np.allclose(
        result.composite.weights, priority_vector(platform_matrix("security")).weights, atol=1e-12
    )


def test_platform_list_mismatch_rejected():
    matrices = {cid: platform_matrix(cid) for cid in CRITERIA_IDS}
    matrices["security"] = ComparisonMatrix.from_rows(
        ("aws", "azure", "ibm"), np.ones((3, 3))
    )
    with pytest.raises(ValidationError, match="platform list mismatch"):
        rank_platforms(fig6_matrix(), matrices)


def test_missing_criterion_matrix_rejected():
    matrices = {cid: platform_matrix(cid) for cid in CRITERIA_IDS if cid != "security"}
    with pytest.raises(ValidationError, match="missing platform comparison matrix.*security"):
        rank_platforms(fig6_matrix(), matrices)


def test_composite_sums_to_one_on_random_inputs():
    rng = np.random.default_rng(23)
    for _ in range(25):
        k, m = int(rng.integers(1, 6)), int(rng.integers(1, 6))
        criteria = random_reciprocal(rng, k)
        matrices = {}
        for cid in criteria.item_ids:
            pm = random_reciprocal(rng, m)
            matrices[cid] = ComparisonMatrix.from_rows(
                [f"p{j}" for j in range(m)], pm.entries
            )
        result = rank_platforms(criteria, matrices)
        assert abs(result.composite.weights.sum() - 1.0) <= 1e-9


def test_rank_dominance():
    # platform p0 weakly dominates p1 on every criterion => composite order holds
    rng = np.random.default_rng(5)
    for _ in range(50):
        k = int(rng.integers(1, 5))
        criteria = random_reciprocal(rng, k)
        matrices = {}
        for cid in criteria.item_ids:
            value = float(rng.choice([v for v in SCALE_VALUES if v >= 1]))
            matrices[cid] = build_matrix(["p0", "p1"], [("p0", "p1", value)])
        result = rank_platforms(criteria, matrices)
        per_criterion = [result.platform_priorities[c].weights for c in criteria.item_ids]
        assert all(w[0] >= w[1] for w in per_criterion)
        assert result.composite.weights[0] >= result.composite.weights[1]


# ---------------------------------------------------------------------------
# kiviat series
# ---------------------------------------------------------------------------


def test_kiviat_axis_maxima_match_sample_findings():
    result = worked_example_result()
    series = {s["platform"]: s for s in kiviat_series(result)}
    per_axis = {
        cid: {p: series[p]["values"][i]["weight"] for p in result.platforms}
        for i, cid in enumerate(result.criteria)
    }
    assert max(per_axis["query-processing"], key=per_axis["query-processing"].get) == "ibm"
    assert max(per_axis["security"], key=per_axis["security"].get) == "aws"
    assert max(per_axis["data-visualization"], key=per_axis["data-visualization"].get) == "aws"


def test_kiviat_degenerate_single_axis():
    criteria = ComparisonMatrix.from_rows(["only"], [[1.0]])
    result = rank_platforms(criteria, {"only": ComparisonMatrix.from_rows(["p"], [[1.0]])})
    assert kiviat_series(result) == [
        {"platform": "p", "values": [{"criterion": "only", "weight": 1.0}]}
    ]


# ---------------------------------------------------------------------------
# ranking documents
# ---------------------------------------------------------------------------


def test_parse_ranking_input_round_trip(worked_example_input):
    ranking_id, criteria_matrix, platform_matrices = parse_ranking_input(worked_example_input)
    assert ranking_id == "worked-example"
    assert criteria_matrix.item_ids == CRITERIA_IDS
    # judgment-built criteria matrix is exactly reciprocal, unlike the printed one
    assert criteria_matrix.entries[3, 0] == pytest.approx(1 / 4)
    for cid in CRITERIA_IDS:
        assert np.allclose(platform_matrices[cid].entries, PLATFORM_ROWS[cid])


def test_parse_ranking_input_derives_stable_id(worked_example_input):
    del worked_example_input["id"]
    first, _, _ = parse_ranking_input(worked_example_input)
    second, _, _ = parse_ranking_input(json.loads(json.dumps(worked_example_input)))
    assert first == second == derive_ranking_id(worked_example_input)
    assert len(first) == 12


def test_parse_ranking_input_missing_judgment_set(worked_example_input):
    del worked_example_input["platform_judgments"]["security"]
    with pytest.raises(ValidationError, match=r"platform_judgments\[security\]"):
        parse_ranking_input(worked_example_input)


def test_parse_ranking_input_unknown_judgment_criterion(worked_example_input):
    worked_example_input["platform_judgments"]["bogus"] = []
    with pytest.raises(ValidationError, match="unknown criteria: bogus"):
        parse_ranking_input(worked_example_input)


def test_result_document_shape(worked_example_input):
    ranking_id, cm, pms = parse_ranking_input(worked_example_input)
    doc = ranking_result_to_dict(rank_platforms(cm, pms), ranking_id)
    assert doc["id"] == "worked-example"
    assert doc["platforms"] == list(PLATFORM_IDS)
    ranking = doc["ranking"]
    assert [row["platform"] for row in ranking] == ["aws", "ibm", "azure"]
    assert [row["rank"] for row in ranking] == [1, 2, 3]
    assert sum(doc["composite"].values()) == pytest.approx(1.0, abs=1e-9)
    csv_text = ranking_result_csv(doc)
    assert csv_text.splitlines()[0] == "platform,composite_weight,rank"
    assert csv_text.splitlines()[1].startswith("aws,")
    series = kiviat_from_result_dict(doc)
    assert series == kiviat_series(rank_platforms(cm, pms))


def test_consistency_warnings_listed(worked_example_input):
    _, cm, pms = parse_ranking_input(worked_example_input)
    doc = ranking_result_to_dict(rank_platforms(cm, pms))
    warnings = consistency_warnings(doc)
    flagged = [key for key, rep in doc["consistency"].items() if rep["flagged"]]
    assert len(warnings) == len(flagged)
    for key in flagged:
        assert any(f"matrix '{key}'" in w for w in warnings)


def test_validate_ranking_draft_allows_partial():
    validate_ranking_draft({"criteria": ["a", "b"], "criteria_judgments": []})
    validate_ranking_draft({"platform_judgments": {"a": [{"i": "x", "j": "y", "value": 3}]}})
    with pytest.raises(ValidationError):
        validate_ranking_draft({"criteria_judgments": [{"i": "x", "j": "y", "value": 2.7}]})
    with pytest.raises(ValidationError):
        validate_ranking_draft({"criteria": ["a", ""]})
