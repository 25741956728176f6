"""Saving work and resuming it: the store and the HTTP service.

Assessments rarely finish in one sitting. The document store keeps versioned
JSON files on disk with optimistic conflict detection, and the HTTP service
exposes the same operations to the browser UI. This demo exercises the store
directly, then drives the service in-process.
"""
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from platform_rater import ConflictError, DocumentStore, bundled_catalog, create_project
from platform_rater.assessment import project_to_dict
from platform_rater.service import create_app

workdir = Path(tempfile.mkdtemp(prefix="platform-rater-demo-"))
store = DocumentStore(workdir / "data")
catalog = bundled_catalog()

project = create_project(
    catalog, "night shift", "ROSE", selected_criteria=("security",), project_id="night-shift"
)
doc = store.save("single-assessment", project.id, project_to_dict(project))
print(f"saved {doc.kind}/{doc.id} at version {doc.version}")

# A second writer with a stale version is rejected, nothing overwritten.
store.save("single-assessment", project.id, project_to_dict(project), expected_version=1)
try:
    store.save("single-assessment", project.id, project_to_dict(project), expected_version=1)
except ConflictError as exc:
    print(f"stale save rejected: {exc}")

print("on disk:", sorted(p.relative_to(workdir).as_posix() for p in workdir.rglob("*.json")))

# The service wraps the same store; every response is core output serialized.
app = create_app(store=store, catalog=catalog)
with TestClient(app) as client:
    created = client.post(
        "/api/projects",
        json={
            "name": "remote review",
            "platform_name": "ROSE",
            "selected_criteria": ["data-storing"],
        },
    ).json()
    client.post(
        f"/api/projects/{created['id']}/responses",
        json={"assessor": "a1", "question": "data-storing-q1", "value": 7,
              "expected_version": created["version"]},
    )
    report = client.get(f"/api/projects/{created['id']}/report").json()
    print("\nreport over HTTP:", report["criteria"])
    print("layer rollup:", report["layers"])
    print("\nprojects on the server:")
    for row in client.get("/api/projects").json():
        print(f"  {row['id']} v{row['version']} ({row['name']})")
