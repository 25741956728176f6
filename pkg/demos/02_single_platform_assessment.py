"""Scoring one platform against selected criteria with 7-point ratings.

Two assessors rate the leading questions of four criteria; per-question
consensus is the median across assessors, criterion scores are the mean of
the answered questions' consensus, and everything rolls up per architecture
layer. Snapshots freeze the response set so a later design iteration can be
compared against it.
"""
from platform_rater import (
    bundled_catalog,
    create_project,
    question_consensus,
    record_response,
    satisfaction_report,
    snapshot,
)
from platform_rater.assessment import report_csv

catalog = bundled_catalog()

project = create_project(
    catalog,
    name="ROSE architecture review",
    platform_name="ROSE",
    platform_description="base platform architecture for a municipal deployment",
    selected_criteria=("resource-discovery", "data-accumulation", "security", "interoperability"),
)

# First assessor: happy with discovery and data collection, lukewarm on the rest.
record_response(project, catalog, "dev-ana", "resource-discovery-q1", 5)
record_response(project, catalog, "dev-ana", "data-accumulation-q1", 7)
for criterion_id in ("security", "interoperability"):
    for question in catalog.criterion(criterion_id).questions:
        record_response(project, catalog, "dev-ana", question.id, 4)

# Second assessor disagrees on discovery; the median absorbs the spread.
record_response(project, catalog, "dev-bo", "resource-discovery-q1", 3)
print("resource-discovery consensus (median of 5 and 3):",
      question_consensus(project, "resource-discovery-q1"))

baseline = snapshot(project, label="design iteration 1")
print(f"froze {baseline} at version {project.version}")

report = satisfaction_report(project, catalog)
print("\nper-criterion scores:")
for score in report.scores:
    print(f"  {score.criterion_id:<20} raw {score.raw:.2f}  "
          f"normalized {score.normalized:.3f}  coverage {score.coverage:.0%}")

print("\nper-layer rollup (normalized):")
for layer, entry in report.layers.items():
    print(f"  {layer.value}: {entry.normalized:.3f} (coverage {entry.coverage:.0%})")

print("\nCSV export:")
print(report_csv(report))
