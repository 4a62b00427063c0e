"""Command-line front end.

Scriptable and prompt-free: every input arrives as a flag, every number is
printed in a fixed format, and exit codes are stable (0 success, 1 rejected
input, 2 journal integrity or storage trouble). The journal path comes from
--journal or the WSCM_JOURNAL environment variable.
"""

from __future__ import annotations

import argparse
import os
import sys
from datetime import date as Date
from pathlib import Path

from . import journal as journal_mod
from .canonical import display
from .engine import Signal
from .errors import CultivationError, IntegrityError, StorageError, ValidationError
from .journal import JournaledRegistry, export_locus, init_journal, replay
from .model import CommitteeAssessment, severity_band

ENV_JOURNAL = "WSCM_JOURNAL"
DEFAULT_HOST = "127.0.0.1"
DEFAULT_PORT = 8642


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; bad usage is a validation
    # problem here, so route it through the normal error path instead.
    def error(self, message: str) -> None:  # type: ignore[override]
        raise ValidationError(message)


def _parse_date(text: str) -> Date:
    try:
        return Date.fromisoformat(text)
    except ValueError:
        raise ValidationError(f"dates must be ISO formatted (YYYY-MM-DD), got {text!r}",
                              field="date")


def _parse_pair(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValidationError(f"--nrs takes one 'x,y' pair per assessor, got {text!r}",
                              field="nrs")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise ValidationError(f"NRS scores must be integers, got {text!r}", field="nrs")


def _assessment_from_args(args: argparse.Namespace) -> CommitteeAssessment:
    scores = tuple(_parse_pair(raw) for raw in args.nrs)
    assessors = None
    if args.assessors:
        labels = [label.strip() or None for label in args.assessors.split(",")]
        assessors = tuple(labels)
    return CommitteeAssessment(
        session_date=_parse_date(args.date),
        scores=scores,
        frequency_count=args.f,
        notes=args.notes or "",
        assessors=assessors,
    )


def _journal_path(args: argparse.Namespace) -> Path:
    path = args.journal or os.environ.get(ENV_JOURNAL)
    if not path:
        raise ValidationError(
            f"no journal given; pass --journal PATH or set {ENV_JOURNAL}", field="journal"
        )
    return Path(path)


def _open(args: argparse.Namespace) -> JournaledRegistry:
    return replay(_journal_path(args))


def _point_lines(point, assessment: CommitteeAssessment | None = None) -> list[str]:
    band = severity_band(point.severity)
    lines = [
        "(%s, %s) %s d=%s S=%s band=%s"
        % (
            display(point.position.x),
            display(point.position.y),
            point.region.value,
            display(point.d),
            display(point.severity),
            band.name,
        ),
        f"action: {band.action}",
        "escalation: %s" % ("ACTIVE (d at or past the SMS threshold)"
                            if point.escalation_flag else "inactive"),
    ]
    if assessment is not None and assessment.committee_size > 1:
        sx = assessment.spread("x")
        sy = assessment.spread("y")
        lines.append(
            "spread: x %d..%d mean %s | y %d..%d mean %s"
            % (sx[0], sx[1], display(sx[2], 2), sy[0], sy[1], display(sy[2], 2))
        )
    return lines


def cmd_init(args: argparse.Namespace) -> int:
    jr = init_journal(_journal_path(args), args.config)
    print(f"initialized journal {jr.journal.path}")
    return 0


def cmd_register(args: argparse.Namespace) -> int:
    jr = _open(args)
    assessment = _assessment_from_args(args)
    signal = jr.register(args.name, args.definition, args.scope or "", assessment)
    print(f"registered {signal.name} ({signal.id})")
    for line in _point_lines(signal.current, assessment):
        print(line)
    return 0


def cmd_assess(args: argparse.Namespace) -> int:
    jr = _open(args)
    assessment = _assessment_from_args(args)
    point = jr.assess(args.name, assessment)
    print(f"{args.name} session {point.session_index} {point.date.isoformat()}")
    for line in _point_lines(point, assessment):
        print(line)
    return 0


def cmd_decay(args: argparse.Namespace) -> int:
    jr = _open(args)
    point = jr.decay(args.name, _parse_date(args.date))
    print(f"{args.name} session {point.session_index} {point.date.isoformat()} (decay only)")
    for line in _point_lines(point):
        print(line)
    return 0


def cmd_retire(args: argparse.Namespace) -> int:
    jr = _open(args)
    signal = jr.retire(args.name, _parse_date(args.date), args.rationale)
    print(f"retired {signal.name} on {signal.terminal_date}; locus retained")
    return 0


def cmd_close(args: argparse.Namespace) -> int:
    jr = _open(args)
    signal = jr.close(args.name, _parse_date(args.date), args.rationale or "",
                      override=args.override)
    suffix = " (override)" if signal.closed_with_override else ""
    print(f"closed {signal.name} on {signal.terminal_date}{suffix}; locus retained")
    return 0


def cmd_replay(args: argparse.Namespace) -> int:
    jr = _open(args)
    records = jr.journal.records()
    print(f"journal OK: {len(records)} records, {len(jr.registry.signals())} signals")
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    jr = _open(args)
    as_of = _parse_date(args.as_of) if args.as_of else None
    actives = jr.registry.active()
    if not actives:
        print("no active signals")
        return 0
    rows: list[tuple[str, object]] = []
    for signal in actives:
        point = signal.current
        if as_of is not None:
            point = _as_of_point(jr, signal, as_of)
        rows.append((signal.name, point))
    header = ("signal", "sess", "date", "x", "y", "region", "d", "S", "f", "esc", "band")
    table = [header] + [
        (
            name,
            str(p.session_index),
            p.date.isoformat(),
            display(p.position.x),
            display(p.position.y),
            p.region.value,
            display(p.d),
            display(p.severity),
            str(p.frequency_count),
            "*" if p.escalation_flag else "-",
            severity_band(p.severity).name,
        )
        for name, p in rows
    ]
    widths = tuple(max(len(row[i]) for row in table) for i in range(len(header)))
    for row in table:
        print("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())
    if as_of is not None:
        print(f"(positions evaluated as of {as_of}; nothing recorded)")
    occupancy = {}
    for _, p in rows:
        occupancy[p.region.value] = occupancy.get(p.region.value, 0) + 1
    print(
        "regions: "
        + " ".join(
            f"{region}={occupancy.get(region, 0)}"
            for region in ("QuestionMarks", "LitFuses", "Owls", "SleepingCats")
        )
    )
    escalated = [s for s in jr.registry.signals() if s.escalated_ever]
    if escalated:
        print(
            "escalated: "
            + ", ".join(f"{s.name} (since {s.first_escalation})" for s in escalated)
        )
    return 0


def _as_of_point(jr: JournaledRegistry, signal: Signal, as_of: Date):
    # Lazy decay for display only; the locus is not touched.
    from . import model

    position = signal.position_as_of(as_of, jr.params)
    d = model.distance(position)
    last = signal.current
    return type(last)(
        session_index=last.session_index,
        date=as_of,
        position=position,
        d=d,
        region=model.classify_region(position),
        severity=model.session_severity(d, last.frequency_count),
        frequency_count=last.frequency_count,
        escalation_flag=model.escalation_active(d),
        kind=last.kind,
        outcome=last.outcome,
    )


def cmd_export(args: argparse.Namespace) -> int:
    jr = _open(args)
    signal = jr.registry.get(args.name)
    rendered = export_locus(signal, args.format)
    if args.out:
        Path(args.out).write_text(rendered, encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(rendered)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(_journal_path(args))
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _add_committee_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--date", required=True, help="session date, YYYY-MM-DD")
    parser.add_argument(
        "--nrs",
        action="append",
        required=True,
        metavar="X,Y",
        help="one 0..4 score pair per assessor; repeat for a committee",
    )
    parser.add_argument("--f", type=int, required=True,
                        help="occurrence count within the observation year")
    parser.add_argument("--assessors", help="comma-separated labels matching the --nrs pairs")
    parser.add_argument("--notes", help="session notes")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wscm", description="weak-signal cultivation sessions")
    parser.add_argument("--journal", help=f"journal path (or set {ENV_JOURNAL})")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("init", help="create an empty journal")
    p.add_argument("--config", help="flat JSON parameter file")
    p.set_defaults(func=cmd_init)

    p = sub.add_parser("register", help="enter a new weak signal onto the field")
    p.add_argument("name")
    p.add_argument("--definition", required=True, help="sharp one-line signal definition")
    p.add_argument("--scope", help="where the signal applies")
    _add_committee_flags(p)
    p.set_defaults(func=cmd_register)

    p = sub.add_parser("assess", help="run a committee assessment session")
    p.add_argument("name")
    _add_committee_flags(p)
    p.set_defaults(func=cmd_assess)

    p = sub.add_parser("decay", help="record a decay-only session (no assessment)")
    p.add_argument("name")
    p.add_argument("--date", required=True)
    p.set_defaults(func=cmd_decay)

    p = sub.add_parser("retire", help="retire a signal from active tracking")
    p.add_argument("name")
    p.add_argument("--date", required=True)
    p.add_argument("--rationale", default="")
    p.set_defaults(func=cmd_retire)

    p = sub.add_parser("close", help="close a signal (needs d inside the closure radius)")
    p.add_argument("name")
    p.add_argument("--date", required=True)
    p.add_argument("--rationale")
    p.add_argument("--override", action="store_true",
                   help="close despite d; requires --rationale")
    p.set_defaults(func=cmd_close)

    p = sub.add_parser("replay", help="verify the journal end to end")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("report", help="table of all active signals")
    p.add_argument("--as-of", dest="as_of", help="evaluate passive decay to this date (display only)")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("export", help="machine-readable locus of one signal")
    p.add_argument("name")
    p.add_argument("--format", choices=("table", "timeseries"), default="table")
    p.add_argument("--out", help="write here instead of stdout")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="serve the local HTTP API")
    p.add_argument("--host", default=DEFAULT_HOST)
    p.add_argument("--port", type=int, default=DEFAULT_PORT)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (IntegrityError, StorageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CultivationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
