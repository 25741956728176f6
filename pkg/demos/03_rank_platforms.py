"""Ranking three cloud IoT platforms against five criteria.

One judgment per unordered pair fills each comparison matrix (reciprocals are
derived), row geometric means give the weights, and the composite score of a
platform is its per-criterion weight averaged by the criteria weights. The
consistency ratio of each matrix is reported alongside; a flagged matrix means
the judgments are intransitive enough to deserve a second look, but it never
blocks the ranking.
"""
from platform_rater import build_matrix, kiviat_series, rank_platforms, scale_from_label

criteria = ["query-processing", "data-visualization", "security", "reusability", "extensibility"]
platforms = ["aws", "ibm", "azure"]

# "query processing is moderately preferred over data visualization", etc.
criteria_matrix = build_matrix(
    criteria,
    [
        ("query-processing", "data-visualization", scale_from_label("moderately preferred")),
        ("query-processing", "security", 2),
        ("query-processing", "reusability", 4),
        ("query-processing", "extensibility", 4),
        ("data-visualization", "security", 2),
        ("data-visualization", "reusability", 6),
        ("data-visualization", "extensibility", 7),
        ("security", "reusability", 9),
        ("security", "extensibility", 9),
        ("reusability", "extensibility", 4),
    ],
)

platform_matrices = {
    "query-processing": build_matrix(
        platforms, [("aws", "ibm", "1/4"), ("aws", "azure", 3), ("ibm", "azure", 4)]
    ),
    "data-visualization": build_matrix(
        platforms, [("aws", "ibm", 2), ("aws", "azure", 6), ("ibm", "azure", 5)]
    ),
    "security": build_matrix(
        platforms, [("aws", "ibm", 4), ("aws", "azure", 6), ("ibm", "azure", 3)]
    ),
    "reusability": build_matrix(
        platforms, [("aws", "ibm", 2), ("aws", "azure", 7), ("ibm", "azure", 3)]
    ),
    "extensibility": build_matrix(
        platforms, [("aws", "ibm", 2), ("aws", "azure", "1/4"), ("ibm", "azure", 4)]
    ),
}

result = rank_platforms(criteria_matrix, platform_matrices)

print("criteria weights:")
for criterion, weight in result.criteria_priorities.as_dict().items():
    print(f"  {criterion:<20} {weight:.3f}")

print("\ncomposite ranking:")
for position, (platform, weight) in enumerate(result.ranking(), start=1):
    print(f"  {position}. {platform:<6} {weight:.3f}")

print("\nconsistency:")
for key, report in result.consistency.items():
    flag = "  <-- worth revisiting" if report.flagged else ""
    print(f"  {key:<20} CR {report.cr:.3f}{flag}")

print("\nradar-chart series (per platform, one value per criterion axis):")
for series in kiviat_series(result):
    values = ", ".join(f"{v['weight']:.2f}" for v in series["values"])
    print(f"  {series['platform']:<6} [{values}]")
