"""Durable, versioned document store backing the save-and-resume workflow.

One JSON file per document under ``<root>/<kind>/<id>.json`` plus a derived
``<root>/index.json`` regenerated on every write. Writes go through a
write-to-temp / fsync / rename protocol, so a save either fully applies or
leaves the prior version intact. Versioning is optimistic: callers may pass
the version they last saw, and a mismatch rejects the write with nothing
persisted. Within a process, saves are serialized by a lock; reads never block
and always observe a fully written version.
"""
from __future__ import annotations

import json
import os
import re
import tempfile
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from . import ahp, assessment
from .errors import ConflictError, NotFoundError, ValidationError

KINDS = ("single-assessment", "multi-assessment", "ranking-result")

_ID_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9._-]*$")


@dataclass(frozen=True)
class StoredDocument:
    id: str
    kind: str
    version: int
    payload: dict
    updated_at: str


@dataclass(frozen=True)
class DocumentSummary:
    id: str
    kind: str
    name: str | None
    version: int
    updated_at: str


def _validate_single_assessment(payload: dict) -> None:
    assessment.project_from_dict(payload)


def _validate_multi_assessment(payload: dict) -> None:
    ahp.validate_ranking_draft(payload)


def _validate_ranking_result(payload: dict) -> None:
    if not isinstance(payload, dict):
        raise ValidationError("ranking result must be a JSON object")
    missing = [
        key
        for key in ("criteria", "platforms", "composite", "ranking", "consistency")
        if key not in payload
    ]
    if missing:
        raise ValidationError("ranking result missing field(s): " + ", ".join(missing))


_VALIDATORS = {
    "single-assessment": _validate_single_assessment,
    "multi-assessment": _validate_multi_assessment,
    "ranking-result": _validate_ranking_result,
}


class DocumentStore:
    """Directory-backed store; root defaults to $PLATFORM_RATER_DATA or ./data."""

    def __init__(self, root: str | Path | None = None):
        if root is None:
            root = os.environ.get("PLATFORM_RATER_DATA", "./data")
        self.root = Path(root)
        self._lock = threading.Lock()

    # -- write path ---------------------------------------------------------

    def save(
        self,
        kind: str,
        doc_id: str,
        payload: dict,
        expected_version: int | None = None,
    ) -> StoredDocument:
        """Persist a new version of (kind, id); durable once this returns.

        With ``expected_version`` given, the write only applies when it equals
        the currently stored version (ConflictError otherwise, nothing written).
        """
        self._check_kind(kind)
        self._check_id(doc_id)
        _VALIDATORS[kind](payload)
        with self._lock:
            current = self._read(kind, doc_id)
            current_version = current.version if current else 0
            if expected_version is not None and expected_version != current_version:
                raise ConflictError(
                    f"version conflict for {kind}/{doc_id}: expected {expected_version}, "
                    f"stored {current_version}"
                )
            doc = StoredDocument(
                id=doc_id,
                kind=kind,
                version=current_version + 1,
                payload=payload,
                updated_at=datetime.now(timezone.utc).isoformat(timespec="microseconds"),
            )
            path = self._path(kind, doc_id)
            path.parent.mkdir(parents=True, exist_ok=True)
            blob = json.dumps(
                {
                    "id": doc.id,
                    "kind": doc.kind,
                    "version": doc.version,
                    "updated_at": doc.updated_at,
                    "payload": doc.payload,
                },
                ensure_ascii=False,
                indent=2,
            )
            _atomic_write(path, blob.encode("utf-8"))
            self._write_index()
            return doc

    # -- read path ----------------------------------------------------------

    def load(self, doc_id: str, kind: str) -> StoredDocument:
        self._check_kind(kind)
        doc = self._read(kind, doc_id)
        if doc is None:
            raise NotFoundError(f"no {kind} document with id {doc_id!r}")
        return doc

    def exists(self, doc_id: str, kind: str) -> bool:
        self._check_kind(kind)
        return self._path(kind, doc_id).is_file()

    def list(self, kind: str | None = None) -> list[DocumentSummary]:
        """Summaries ordered by updated_at descending, id ascending on ties.

        Scans the document files themselves; index.json is a derived artifact
        for external inspection, never the source of truth.
        """
        if kind is not None:
            self._check_kind(kind)
        kinds = (kind,) if kind else KINDS
        out: list[DocumentSummary] = []
        for k in kinds:
            directory = self.root / k
            if not directory.is_dir():
                continue
            for path in directory.glob("*.json"):
                doc = self._read_path(path)
                if doc is None:
                    continue
                name = doc.payload.get("name") if isinstance(doc.payload, dict) else None
                out.append(
                    DocumentSummary(
                        id=doc.id,
                        kind=doc.kind,
                        name=name if isinstance(name, str) else None,
                        version=doc.version,
                        updated_at=doc.updated_at,
                    )
                )
        out.sort(key=lambda s: (_desc(s.updated_at), s.id))
        return out

    # -- internals ----------------------------------------------------------

    def _path(self, kind: str, doc_id: str) -> Path:
        return self.root / kind / f"{doc_id}.json"

    def _check_kind(self, kind: str) -> None:
        if kind not in KINDS:
            raise ValidationError(f"unknown document kind {kind!r}; expected one of {KINDS}")

    def _check_id(self, doc_id: str) -> None:
        if not isinstance(doc_id, str) or not _ID_RE.match(doc_id):
            raise ValidationError(
                f"document id {doc_id!r} must match {_ID_RE.pattern} (it becomes a file name)"
            )

    def _read(self, kind: str, doc_id: str) -> StoredDocument | None:
        return self._read_path(self._path(kind, doc_id))

    def _read_path(self, path: Path) -> StoredDocument | None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        except FileNotFoundError:
            return None
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"corrupt store document {path}: {exc}") from exc
        return StoredDocument(
            id=raw["id"],
            kind=raw["kind"],
            version=raw["version"],
            payload=raw["payload"],
            updated_at=raw["updated_at"],
        )

    def _write_index(self) -> None:
        summaries = self.list()
        blob = json.dumps(
            {
                "documents": [
                    {
                        "id": s.id,
                        "kind": s.kind,
                        "name": s.name,
                        "version": s.version,
                        "updated_at": s.updated_at,
                    }
                    for s in summaries
                ]
            },
            ensure_ascii=False,
            indent=2,
        )
        self.root.mkdir(parents=True, exist_ok=True)
        _atomic_write(self.root / "index.json", blob.encode("utf-8"))


def _desc(timestamp: str):
    # ISO-8601 strings sort lexicographically; invert per character for a
    # descending key that still tiebreaks ascending on id.
    return tuple(-ord(ch) for ch in timestamp)


def _atomic_write(path: Path, data: bytes) -> None:
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    tmp = Path(tmp_name)
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise
