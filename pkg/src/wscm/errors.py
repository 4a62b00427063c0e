"""Error taxonomy shared by the engine, journal, CLI, and service layers."""

from __future__ import annotations


class CultivationError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(CultivationError):
    """Rejected input: bad scores, dates out of order, duplicate names, etc.

    Maps to CLI exit code 1 and HTTP 422.
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class UnknownSignalError(ValidationError):
    """Lookup of a signal id or name that is not in the registry.

    Carries near-match suggestions so callers can hint at typos.
    """

    def __init__(self, ref: str, suggestions: list[str] | None = None):
        hint = ""
        if suggestions:
            hint = " (did you mean: %s?)" % ", ".join(suggestions)
        super().__init__(f"unknown signal {ref!r}{hint}", field="signal")
        self.ref = ref
        self.suggestions = suggestions or []


class IntegrityError(CultivationError):
    """Journal corruption or replay mismatch. Maps to CLI exit code 2."""


class StorageError(CultivationError):
    """I/O failure talking to the journal file. Maps to CLI exit code 2."""
