"""Append-only journal: the durable form of a cultivation history.

One self-describing JSON object per line, UTF-8, ISO dates, every float
rendered with exactly six fractional digits. The journal stores the raw
inputs of each operation plus the computed position block; the computed
block is a verification checksum, not a cache. Replay always recomputes
from the inputs and compares against the stored block, so silent edits and
drifted arithmetic both surface as integrity errors.

Write discipline: validate and compute first, append one fsynced line, only
then mutate memory. A torn final line therefore never corrupts committed
records and is reported, not silently repaired.
"""

from __future__ import annotations

import json
import os
from datetime import date as Date
from pathlib import Path
from typing import Any, Callable, Iterable

from .canonical import canon6
from .engine import LocusPoint, Registry, Signal
from .errors import IntegrityError, StorageError, ValidationError
from .model import CommitteeAssessment, SessionOutcome
from .params import ModelParameters, load_config

SCHEMA_VERSION = 1

KIND_CONFIG = "config"
KIND_REGISTER = "register"
KIND_ASSESS = "assess"
KIND_DECAY = "decay"
KIND_RETIRE = "retire"
KIND_CLOSE = "close"

_SIGNAL_KINDS = (KIND_REGISTER, KIND_ASSESS, KIND_DECAY, KIND_RETIRE, KIND_CLOSE)

# CSV header of the table export, one row per locus point.
TABLE_HEADER = "session_index,date,x,y,d,region,S,f,escalation_flag"


def _render_float(value: float | None, as_strings: bool) -> Any:
    if value is None:
        return None
    return canon6(value) if as_strings else round(value, 6)


def outcome_payload(outcome: SessionOutcome, as_strings: bool = True) -> dict[str, Any]:
    """Serializable form of a session audit record."""
    num = lambda v: _render_float(v, as_strings)  # noqa: E731
    return {
        "tau": num(outcome.tau),
        "x_new_agg": num(outcome.x_new_agg),
        "y_new_agg": num(outcome.y_new_agg),
        "alpha_tau": num(outcome.alpha_tau),
        "beta_tau": num(outcome.beta_tau),
        "kappa_x": num(outcome.kappa_x),
        "kappa_y": num(outcome.kappa_y),
        "rho_x": num(outcome.rho_x),
        "rho_y": num(outcome.rho_y),
        "n_cap": num(outcome.n_cap),
        "alpha_eff": num(outcome.alpha_eff),
        "beta_eff": num(outcome.beta_eff),
        "y_decay": num(outcome.y_decay),
        "position_after": {
            "x": num(outcome.position_after.x),
            "y": num(outcome.position_after.y),
        },
        "reversal_x": outcome.reversal_x,
        "reversal_y": outcome.reversal_y,
    }


def point_payload(point: LocusPoint, as_strings: bool = True) -> dict[str, Any]:
    """Serializable form of a locus point, audit trail included."""
    num = lambda v: _render_float(v, as_strings)  # noqa: E731
    return {
        "session_index": point.session_index,
        "date": point.date.isoformat(),
        "kind": point.kind,
        "position": {"x": num(point.position.x), "y": num(point.position.y)},
        "d": num(point.d),
        "region": point.region.value,
        "severity": num(point.severity),
        "frequency_count": point.frequency_count,
        "escalation_flag": point.escalation_flag,
        "outcome": outcome_payload(point.outcome, as_strings=as_strings),
    }


def computed_block(point: LocusPoint) -> dict[str, str]:
    """The four verification checksums stored with every signal record."""
    return {
        "x": canon6(point.position.x),
        "y": canon6(point.position.y),
        "d": canon6(point.d),
        "s": canon6(point.severity),
    }


class Journal:
    """One append-only journal file and its tail state."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._last_seq = 0
        self._last_date: Date | None = None
        self._saw_signal_record = False

    # -- lifecycle -----------------------------------------------------------

    @classmethod
    def create(cls, path: str | Path, params: ModelParameters | None = None) -> "Journal":
        """Start a fresh journal; the resolved parameters become its first record."""
        journal = cls(path)
        if journal.path.exists():
            raise ValidationError(f"journal already exists at {journal.path}", field="journal")
        params = params or ModelParameters()
        journal._write_record(
            {"schema_version": SCHEMA_VERSION, "seq": 1, "kind": KIND_CONFIG,
             "params": params.to_mapping()}
        )
        journal._last_seq = 1
        return journal

    @classmethod
    def attach(cls, path: str | Path) -> "Journal":
        """Bind to an existing journal, recovering tail state from its records."""
        journal = cls(path)
        for _, record in journal.records():
            journal._advance_tail(record)
        return journal

    def _advance_tail(self, record: dict[str, Any]) -> None:
        self._last_seq = record["seq"]
        if record["kind"] in _SIGNAL_KINDS:
            self._saw_signal_record = True
        if "date" in record:
            self._last_date = Date.fromisoformat(record["date"])

    # -- reading -------------------------------------------------------------

    def records(self) -> list[tuple[int, dict[str, Any]]]:
        """All records as (1-based index, parsed object), structurally validated.

        Reads never touch the file beyond opening it read-only, so repeated
        reads are byte-idempotent by construction.
        """
        if not self.path.exists():
            raise ValidationError(f"no journal at {self.path}; run init first", field="journal")
        try:
            blob = self.path.read_bytes()
        except OSError as exc:
            raise StorageError(f"cannot read journal {self.path}: {exc}") from exc
        if blob and not blob.endswith(b"\n"):
            index = blob.count(b"\n") + 1
            raise IntegrityError(
                f"journal record {index}: torn write (no trailing newline); "
                f"truncate the final line to recover the valid prefix"
            )
        out: list[tuple[int, dict[str, Any]]] = []
        last_seq = 0
        last_date: Date | None = None
        saw_signal = False
        for index, line in enumerate(blob.decode("utf-8").splitlines(), start=1):
            try:
                record = json.loads(line)
            except ValueError as exc:
                raise IntegrityError(f"journal record {index}: invalid record text ({exc})")
            if not isinstance(record, dict):
                raise IntegrityError(f"journal record {index}: not a key-value object")
            if record.get("schema_version") != SCHEMA_VERSION:
                raise IntegrityError(
                    f"journal record {index}: unsupported schema_version "
                    f"{record.get('schema_version')!r}"
                )
            kind = record.get("kind")
            if kind not in _SIGNAL_KINDS and kind != KIND_CONFIG:
                raise IntegrityError(f"journal record {index}: unknown kind {kind!r}")
            seq = record.get("seq")
            if not isinstance(seq, int) or seq <= last_seq:
                raise IntegrityError(
                    f"journal record {index}: sequence {seq!r} not after {last_seq}"
                )
            last_seq = seq
            if kind == KIND_CONFIG:
                if saw_signal:
                    raise IntegrityError(
                        f"journal record {index}: config after signal records; "
                        f"parameters are fixed per journal"
                    )
            else:
                saw_signal = True
                try:
                    record_date = Date.fromisoformat(record["date"])
                except (KeyError, ValueError) as exc:
                    raise IntegrityError(f"journal record {index}: bad date ({exc})")
                if last_date is not None and record_date < last_date:
                    raise IntegrityError(
                        f"journal record {index}: date {record_date} behind {last_date}"
                    )
                last_date = record_date
            out.append((index, record))
        return out

    # -- writing -------------------------------------------------------------

    def append(self, kind: str, when: Date | None, body: dict[str, Any]) -> dict[str, Any]:
        """Build and append one record; returns it as written."""
        record: dict[str, Any] = {"schema_version": SCHEMA_VERSION, "seq": self._last_seq + 1,
                                  "kind": kind}
        if when is not None:
            record["date"] = when.isoformat()
        record.update(body)
        self.append_record(record)
        return record

    def append_record(self, record: dict[str, Any]) -> None:
        """Append a fully formed record, enforcing the tail invariants."""
        kind = record.get("kind")
        if record.get("seq") != self._last_seq + 1:
            raise ValidationError(
                f"record sequence {record.get('seq')!r} does not follow the journal "
                f"tail {self._last_seq}",
                field="seq",
            )
        if kind == KIND_CONFIG and self._saw_signal_record:
            raise ValidationError(
                "parameters are fixed per journal; a config record cannot follow "
                "signal records (start a new journal instead)",
                field="kind",
            )
        if kind in _SIGNAL_KINDS and self._last_date is not None and "date" in record:
            when = Date.fromisoformat(record["date"])
            if when < self._last_date:
                raise ValidationError(
                    f"record date {when} is behind the journal tail {self._last_date}; "
                    f"sessions must be appended in calendar order",
                    field="date",
                )
        self._write_record(record)
        self._advance_tail(record)

    def _write_record(self, record: dict[str, Any]) -> None:
        line = json.dumps(record, ensure_ascii=False, separators=(", ", ": "))
        try:
            with open(self.path, "a", encoding="utf-8") as handle:
                handle.write(line + "\n")
                handle.flush()
                os.fsync(handle.fileno())
        except OSError as exc:
            raise StorageError(f"cannot append to journal {self.path}: {exc}") from exc


def _assessment_body(assessment: CommitteeAssessment) -> dict[str, Any]:
    body: dict[str, Any] = {
        "scores": [list(pair) for pair in assessment.scores],
        "f": assessment.frequency_count,
    }
    if assessment.assessors is not None:
        body["assessors"] = list(assessment.assessors)
    if assessment.notes:
        body["notes"] = assessment.notes
    return body


def _assessment_from_body(record: dict[str, Any], index: int) -> CommitteeAssessment:
    try:
        scores = tuple((pair[0], pair[1]) for pair in record["scores"])
        assessors = record.get("assessors")
        return CommitteeAssessment(
            session_date=Date.fromisoformat(record["date"]),
            scores=scores,
            frequency_count=record["f"],
            notes=record.get("notes", ""),
            assessors=tuple(assessors) if assessors is not None else None,
        )
    except ValidationError:
        raise
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise IntegrityError(f"journal record {index}: malformed assessment body ({exc})")


class JournaledRegistry:
    """A registry whose every mutation is journaled before it lands in memory."""

    def __init__(self, journal: Journal, registry: Registry):
        self.journal = journal
        self.registry = registry

    @property
    def params(self) -> ModelParameters:
        return self.registry.params

    # -- mutating operations ---------------------------------------------

    def register(
        self, name: str, definition: str, scope: str, assessment: CommitteeAssessment
    ) -> Signal:
        signal = self.registry.compute_registration(name, definition, scope, assessment)
        body = {"signal_id": signal.id, "name": signal.name,
                "definition": signal.definition, "scope": signal.scope}
        body.update(_assessment_body(assessment))
        body["computed"] = computed_block(signal.locus[0])
        self.journal.append(KIND_REGISTER, assessment.session_date, body)
        self.registry.attach(signal)
        return signal

    def assess(self, ref: str, assessment: CommitteeAssessment) -> LocusPoint:
        signal = self.registry.get(ref)
        point, streaks = self.registry.compute_assessment(signal, assessment)
        body = {"signal_id": signal.id}
        body.update(_assessment_body(assessment))
        body["computed"] = computed_block(point)
        self.journal.append(KIND_ASSESS, assessment.session_date, body)
        self.registry.apply_point(signal, point, streaks)
        return point

    def decay(self, ref: str, when: Date) -> LocusPoint:
        signal = self.registry.get(ref)
        point = self.registry.compute_decay(signal, when)
        body = {"signal_id": signal.id, "computed": computed_block(point)}
        self.journal.append(KIND_DECAY, when, body)
        self.registry.apply_point(signal, point, signal.streaks)
        return point

    def retire(self, ref: str, when: Date, rationale: str) -> Signal:
        signal = self.registry.get(ref)
        self.registry.check_retirement(signal, when, rationale)
        body = {"signal_id": signal.id, "rationale": rationale,
                "computed": computed_block(signal.current)}
        self.journal.append(KIND_RETIRE, when, body)
        self.registry.apply_retirement(signal, when, rationale)
        return signal

    def close(self, ref: str, when: Date, rationale: str = "", override: bool = False) -> Signal:
        signal = self.registry.get(ref)
        self.registry.check_closure(signal, when, rationale, override)
        body = {"signal_id": signal.id, "rationale": rationale, "override": override,
                "computed": computed_block(signal.current)}
        self.journal.append(KIND_CLOSE, when, body)
        self.registry.apply_closure(signal, when, rationale, override)
        return signal

    # -- previews (never touch the journal) --------------------------------

    def preview_assessment(self, ref: str, assessment: CommitteeAssessment) -> LocusPoint:
        return self.registry.preview_assessment(ref, assessment)

    def preview_decay(self, ref: str, when: Date) -> LocusPoint:
        return self.registry.preview_decay(ref, when)


def init_journal(path: str | Path, config_path: str | Path | None = None) -> JournaledRegistry:
    """Create a new journal; parameters come from the optional config file."""
    params = load_config(config_path)
    journal = Journal.create(path, params)
    return JournaledRegistry(journal, Registry(params))


def replay(path: str | Path) -> JournaledRegistry:
    """Rebuild a registry from a journal, verifying every computed block.

    The stored computed values are treated as checksums: each operation is
    re-executed from its raw inputs and the recomputed canonical values must
    match the stored ones exactly.

    Raises:
        IntegrityError: malformed records, impossible histories, or any
            checksum mismatch (named by signal, session, and field).
    """
    journal = Journal(path)
    records = journal.records()
    params = ModelParameters()
    if records and records[0][1]["kind"] == KIND_CONFIG:
        index, record = records[0]
        try:
            params = ModelParameters.from_mapping(record.get("params", {}))
        except ValidationError as exc:
            raise IntegrityError(f"journal record {index}: bad config ({exc})")
    registry = Registry(params)

    def run(index: int, record: dict[str, Any]) -> None:
        kind = record["kind"]
        if kind == KIND_CONFIG:
            return
        when = Date.fromisoformat(record["date"])
        if kind == KIND_REGISTER:
            assessment = _assessment_from_body(record, index)
            signal = registry.compute_registration(
                record.get("name", ""), record.get("definition", ""),
                record.get("scope", ""), assessment, signal_id=record.get("signal_id"),
            )
            _verify(index, record, signal.name, signal.locus[0])
            registry.attach(signal)
        elif kind == KIND_ASSESS:
            signal = registry.get(record.get("signal_id", ""))
            assessment = _assessment_from_body(record, index)
            point, streaks = registry.compute_assessment(signal, assessment)
            _verify(index, record, signal.name, point)
            registry.apply_point(signal, point, streaks)
        elif kind == KIND_DECAY:
            signal = registry.get(record.get("signal_id", ""))
            point = registry.compute_decay(signal, when)
            _verify(index, record, signal.name, point)
            registry.apply_point(signal, point, signal.streaks)
        elif kind == KIND_RETIRE:
            signal = registry.get(record.get("signal_id", ""))
            rationale = record.get("rationale", "")
            registry.check_retirement(signal, when, rationale)
            _verify(index, record, signal.name, signal.current)
            registry.apply_retirement(signal, when, rationale)
        else:  # KIND_CLOSE
            signal = registry.get(record.get("signal_id", ""))
            rationale = record.get("rationale", "")
            override = bool(record.get("override", False))
            registry.check_closure(signal, when, rationale, override)
            _verify(index, record, signal.name, signal.current)
            registry.apply_closure(signal, when, rationale, override)

    for index, record in records:
        try:
            run(index, record)
        except IntegrityError:
            raise
        except ValidationError as exc:
            raise IntegrityError(
                f"journal record {index}: encodes an invalid history ({exc})"
            )
        journal._advance_tail(record)
    return JournaledRegistry(journal, registry)


def _verify(index: int, record: dict[str, Any], name: str, point: LocusPoint) -> None:
    stored = record.get("computed")
    if not isinstance(stored, dict):
        raise IntegrityError(f"journal record {index}: missing computed block")
    fresh = computed_block(point)
    for key in ("x", "y", "d", "s"):
        if stored.get(key) != fresh[key]:
            raise IntegrityError(
                f"replay mismatch: signal {name!r} session {point.session_index} "
                f"field {key}: journal has {stored.get(key)!r}, recomputed {fresh[key]}"
            )


# -- exports ----------------------------------------------------------------


def export_table(signal: Signal) -> str:
    """CSV: one row per locus point, canonical 6-decimal numbers."""
    rows = [TABLE_HEADER]
    for point in signal.locus:
        rows.append(
            ",".join(
                [
                    str(point.session_index),
                    point.date.isoformat(),
                    canon6(point.position.x),
                    canon6(point.position.y),
                    canon6(point.d),
                    point.region.value,
                    canon6(point.severity),
                    str(point.frequency_count),
                    "true" if point.escalation_flag else "false",
                ]
            )
        )
    return "\n".join(rows) + "\n"


def export_timeseries(signal: Signal) -> str:
    """JSON lines: one record per locus point with the full audit trail."""
    lines = []
    for point in signal.locus:
        payload = {"signal_id": signal.id, "name": signal.name}
        payload.update(point_payload(point, as_strings=True))
        lines.append(json.dumps(payload, ensure_ascii=False, separators=(", ", ": ")))
    return "\n".join(lines) + "\n"


def export_locus(signal: Signal, fmt: str) -> str:
    """Render a signal's locus in one of the two machine formats."""
    if fmt == "table":
        return export_table(signal)
    if fmt == "timeseries":
        return export_timeseries(signal)
    raise ValidationError(f"unknown export format {fmt!r} (use table or timeseries)",
                          field="format")
