"""Walking through the bundled criteria catalog.

The catalog ships 27 criteria across two dimensions. Each criterion carries
one or more leading questions, and every question is tagged with the
architecture layers it applies to (UL, AL, SL, DL, PL), so an assessor can
slice the catalog by what they are looking at.
"""
from platform_rater import Dimension, Layer, bundled_catalog, filter_criteria, lint_catalog

catalog = bundled_catalog()
print(f"catalog schema v{catalog.schema_version}: {len(catalog)} criteria")

functional = filter_criteria(catalog, Dimension.FUNCTIONAL)
non_functional = filter_criteria(catalog, Dimension.NON_FUNCTIONAL)
print(f"  functional:     {len(functional)}")
print(f"  non-functional: {len(non_functional)}")

# Which functional capabilities touch the data layer?
print("\nfunctional criteria applicable to the data layer:")
for criterion in filter_criteria(catalog, Dimension.FUNCTIONAL, Layer.DL):
    print(f"  - {criterion.name}")

# A criterion in detail: security spans every layer, with two questions
# specific to the physical layer.
security = catalog.criterion("security")
print(f"\n{security.name} ({len(security.questions)} questions):")
for question in security.questions:
    tags = "/".join(layer.value for layer in question.layers_sorted())
    print(f"  [{tags:<14}] {question.text[:72]}...")

# The catalog lints itself against the automatable meta-criteria. The bundled
# data is error-free; the one warning flags a verbatim question shared by the
# scalability and performance rows of the source tables.
print("\nlint findings:")
for finding in lint_catalog(catalog):
    print(f"  {finding.severity:<7} {finding.rule}: {finding.message}")
