"""Shared exception types mapped onto API error codes and CLI exit statuses."""
from __future__ import annotations


class PlatformRaterError(Exception):
    """Base class for all domain errors raised by this package."""


class ValidationError(PlatformRaterError):
    """Bad input: schema violations, out-of-range values, unknown ids in payloads.

    ``details`` is an optional list of field-level messages, e.g.
    ``[{"field": "platform_judgments[security]", "message": "missing pair (ibm, azure)"}]``.
    """

    def __init__(self, message: str, details: list | None = None):
        super().__init__(message)
        self.details = details or []


class NotFoundError(PlatformRaterError):
    """A referenced document or catalog entry does not exist."""


class ConflictError(PlatformRaterError):
    """Optimistic-concurrency conflict: expected_version does not match the stored version."""
