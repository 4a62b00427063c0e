"""Local HTTP facade over a journaled registry.

Read endpoints never touch the journal file; mutating endpoints funnel
through one lock so records land strictly ordered. Every response, success
or failure, is wrapped in the same envelope:

    {"schema_version": 1, "data": ...}
    {"schema_version": 1, "error": {"code": ..., "message": ..., "field": ...}}

Wire numbers are rounded to the canonical six decimals.
"""

from __future__ import annotations

import threading
from datetime import date as Date
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .engine import Signal
from .errors import (
    CultivationError,
    IntegrityError,
    StorageError,
    UnknownSignalError,
    ValidationError,
)
from .journal import JournaledRegistry, point_payload, replay
from .model import CommitteeAssessment, severity_band

SCHEMA_VERSION = 1


def _envelope(data: Any) -> dict[str, Any]:
    return {"schema_version": SCHEMA_VERSION, "data": data}


def _error_response(status: int, code: str, message: str, field: str | None = None):
    body = {
        "schema_version": SCHEMA_VERSION,
        "error": {"code": code, "message": message, "field": field},
    }
    return JSONResponse(status_code=status, content=body)


def _num(value: float | None) -> float | None:
    return None if value is None else round(value, 6)


def _summary(signal: Signal) -> dict[str, Any]:
    point = signal.current
    band = severity_band(point.severity)
    return {
        "id": signal.id,
        "name": signal.name,
        "status": signal.status,
        "position": {"x": _num(point.position.x), "y": _num(point.position.y)},
        "region": point.region.value,
        "d": _num(point.d),
        "severity": _num(point.severity),
        "severity_band": band.name,
        "recommended_action": band.action,
        "frequency_count": point.frequency_count,
        "escalation_flag": point.escalation_flag,
        "escalated_ever": signal.escalated_ever,
        "first_escalation": (
            signal.first_escalation.isoformat() if signal.first_escalation else None
        ),
        "session_count": len(signal.locus),
        "last_session_date": point.date.isoformat(),
    }


def _detail(signal: Signal) -> dict[str, Any]:
    out = _summary(signal)
    out.update(
        {
            "definition": signal.definition,
            "scope": signal.scope,
            "registered_on": signal.registered_on.isoformat(),
            "terminal_date": (
                signal.terminal_date.isoformat() if signal.terminal_date else None
            ),
            "terminal_rationale": signal.terminal_rationale,
            "closed_with_override": signal.closed_with_override,
            "locus": [point_payload(p, as_strings=False) for p in signal.locus],
        }
    )
    return out


def _point(point) -> dict[str, Any]:
    payload = point_payload(point, as_strings=False)
    band = severity_band(point.severity)
    payload["severity_band"] = band.name
    payload["recommended_action"] = band.action
    return payload


class CommitteeBody(BaseModel):
    date: Date
    scores: list[list[int]]
    f: int
    notes: str = ""
    assessors: list[str | None] | None = None

    def to_assessment(self) -> CommitteeAssessment:
        return CommitteeAssessment(
            session_date=self.date,
            scores=tuple(tuple(pair) for pair in self.scores),
            frequency_count=self.f,
            notes=self.notes,
            assessors=tuple(self.assessors) if self.assessors is not None else None,
        )


class RegisterBody(CommitteeBody):
    name: str
    definition: str
    scope: str = ""


class DecayBody(BaseModel):
    date: Date


class PreviewBody(BaseModel):
    # Same shape as the assess body; omit scores/f for a decay preview.
    date: Date
    scores: list[list[int]] | None = None
    f: int | None = None
    notes: str = ""
    assessors: list[str | None] | None = None


class RetireBody(BaseModel):
    date: Date
    rationale: str


class CloseBody(BaseModel):
    date: Date
    rationale: str = ""
    override: bool = False


class ServiceState:
    """Journal-backed registry plus the single writer lock."""

    def __init__(self, journal_path: str | Path):
        self.store: JournaledRegistry = replay(journal_path)
        self.write_lock = threading.Lock()


def create_app(journal_path: str | Path) -> FastAPI:
    """Build the application, replaying the journal into memory first."""
    state = ServiceState(journal_path)
    app = FastAPI(title="weak-signal cultivation service", docs_url=None, redoc_url=None)

    @app.exception_handler(RequestValidationError)
    async def on_request_validation(request: Request, exc: RequestValidationError):
        errors = exc.errors()
        field = None
        message = "invalid request body"
        if errors:
            loc = errors[0].get("loc", ())
            field = ".".join(str(part) for part in loc if part != "body") or None
            message = f"{field}: {errors[0].get('msg', message)}"
        return _error_response(422, "validation_error", message, field)

    @app.exception_handler(CultivationError)
    async def on_cultivation_error(request: Request, exc: CultivationError):
        if isinstance(exc, UnknownSignalError):
            return _error_response(404, "not_found", str(exc), exc.field)
        if isinstance(exc, ValidationError):
            return _error_response(422, "validation_error", str(exc), exc.field)
        if isinstance(exc, (IntegrityError, StorageError)):
            code = "integrity_error" if isinstance(exc, IntegrityError) else "storage_error"
            return _error_response(500, code, str(exc), None)
        return _error_response(500, "internal_error", str(exc), None)

    @app.get("/signals")
    def list_signals():
        return _envelope({"signals": [_summary(s) for s in state.store.registry.signals()]})

    @app.post("/signals")
    def register_signal(body: RegisterBody):
        with state.write_lock:
            signal = state.store.register(
                body.name, body.definition, body.scope, body.to_assessment()
            )
            return _envelope({"signal": _detail(signal)})

    @app.get("/signals/{ref}")
    def get_signal(ref: str):
        return _envelope({"signal": _detail(state.store.registry.get(ref))})

    @app.post("/signals/{ref}/assess")
    def assess(ref: str, body: CommitteeBody):
        with state.write_lock:
            point = state.store.assess(ref, body.to_assessment())
            return _envelope({"point": _point(point), "committed": True})

    @app.post("/signals/{ref}/decay")
    def decay(ref: str, body: DecayBody):
        with state.write_lock:
            point = state.store.decay(ref, body.date)
            return _envelope({"point": _point(point), "committed": True})

    @app.post("/signals/{ref}/preview")
    def preview(ref: str, body: PreviewBody):
        # Full pipeline, no journal write, no state change; identical input
        # previewed twice returns identical results.
        if body.scores is None and body.f is None:
            point = state.store.preview_decay(ref, body.date)
        else:
            if body.scores is None or body.f is None:
                raise ValidationError(
                    "an assessment preview needs both scores and f", field="scores"
                )
            assessment = CommitteeAssessment(
                session_date=body.date,
                scores=tuple(tuple(pair) for pair in body.scores),
                frequency_count=body.f,
                notes=body.notes,
                assessors=tuple(body.assessors) if body.assessors is not None else None,
            )
            point = state.store.preview_assessment(ref, assessment)
        return _envelope({"point": _point(point), "committed": False})

    @app.post("/signals/{ref}/retire")
    def retire(ref: str, body: RetireBody):
        with state.write_lock:
            signal = state.store.retire(ref, body.date, body.rationale)
            return _envelope({"signal": _summary(signal)})

    @app.post("/signals/{ref}/close")
    def close(ref: str, body: CloseBody):
        with state.write_lock:
            signal = state.store.close(ref, body.date, body.rationale, body.override)
            return _envelope({"signal": _summary(signal)})

    @app.get("/dashboard")
    def dashboard():
        registry = state.store.registry
        occupancy = {region.value: count for region, count in registry.occupancy().items()}
        bands: dict[str, list[dict[str, Any]]] = {
            "Low": [], "Moderate": [], "Elevated": [], "Critical": []
        }
        for signal in registry.active():
            band = severity_band(signal.current.severity)
            bands[band.name].append(
                {"id": signal.id, "name": signal.name,
                 "severity": _num(signal.current.severity)}
            )
        escalated = [
            {
                "id": s.id,
                "name": s.name,
                "status": s.status,
                "first_escalation": (
                    s.first_escalation.isoformat() if s.first_escalation else None
                ),
                "currently_flagged": s.status == "active" and s.current.escalation_flag,
            }
            for s in registry.signals()
            if s.escalated_ever
        ]
        return _envelope(
            {
                "region_occupancy": occupancy,
                "severity_bands": bands,
                "escalated": escalated,
                "active_count": len(registry.active()),
                "signal_count": len(registry.signals()),
            }
        )

    return app
