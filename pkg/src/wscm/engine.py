"""Stateful session engine: signals, their loci, and the registry.

The engine owns lifecycle and bookkeeping rules; all arithmetic stays in
`model`. Every mutating operation is split into a pure compute step and a
trivial apply step, which is what makes previews and write-ahead journaling
safe: compute, persist, then apply, so a storage failure leaves memory
untouched and a preview is just compute without the rest.
"""

from __future__ import annotations

import difflib
import math
from dataclasses import dataclass, field
from datetime import date as Date

from . import model
from .errors import UnknownSignalError, ValidationError
from .model import (
    CommitteeAssessment,
    Position,
    Region,
    SessionOutcome,
    StreakState,
)
from .params import ModelParameters

ACTIVE = "active"
RETIRED = "retired"
CLOSED = "closed"

ENTRY = "entry"
ASSESSMENT = "assessment"
DECAY_ONLY = "decay_only"

_ID_PREFIX = "sig-"


@dataclass(frozen=True)
class LocusPoint:
    """One recorded node of a signal's path across the field."""

    session_index: int
    date: Date
    position: Position
    d: float
    region: Region
    severity: float
    frequency_count: int
    escalation_flag: bool
    kind: str
    outcome: SessionOutcome


@dataclass
class Signal:
    """A tracked risk signal and its full history."""

    id: str
    name: str
    definition: str
    scope: str
    registered_on: Date
    status: str = ACTIVE
    escalated_ever: bool = False
    first_escalation: Date | None = None
    streaks: StreakState = field(default_factory=StreakState)
    locus: list[LocusPoint] = field(default_factory=list)
    last_assessment: tuple[float, float] | None = None
    terminal_date: Date | None = None
    terminal_rationale: str = ""
    closed_with_override: bool = False

    @property
    def current(self) -> LocusPoint:
        return self.locus[-1]

    def position_as_of(self, on_date: Date, params: ModelParameters) -> Position:
        """Lazily decayed position at a later date, without recording anything."""
        last = self.current
        if on_date < last.date:
            raise ValidationError(
                f"as-of date {on_date} precedes the last session date {last.date}", field="date"
            )
        tau = model.dimensionless_time((on_date - last.date).days, params.t_ref_days)
        return model.passive_decay(last.position, tau, params)

    def _frequency_baseline(self) -> tuple[int, int]:
        # Decay points carry f forward for display; the monotonicity floor
        # follows the facilitator-supplied values only.
        for point in reversed(self.locus):
            if point.kind != DECAY_ONLY:
                return point.frequency_count, point.date.year
        raise AssertionError("signal without an entry point")


class Registry:
    """All signals known to one journal, keyed by id and by name."""

    def __init__(self, params: ModelParameters | None = None):
        self.params = params or ModelParameters()
        self._by_id: dict[str, Signal] = {}
        self._by_name: dict[str, Signal] = {}

    def signals(self) -> list[Signal]:
        return list(self._by_id.values())

    def active(self) -> list[Signal]:
        return [s for s in self._by_id.values() if s.status == ACTIVE]

    def get(self, ref: str) -> Signal:
        found = self._by_id.get(ref) or self._by_name.get(ref)
        if found is None:
            candidates = list(self._by_name) + list(self._by_id)
            raise UnknownSignalError(ref, difflib.get_close_matches(ref, candidates, n=3))
        return found

    # -- registration ------------------------------------------------------

    def register(
        self,
        name: str,
        definition: str,
        scope: str,
        assessment: CommitteeAssessment,
        signal_id: str | None = None,
    ) -> Signal:
        signal = self.compute_registration(name, definition, scope, assessment, signal_id)
        self.attach(signal)
        return signal

    def attach(self, signal: Signal) -> None:
        """Adopt a computed signal into the registry indexes."""
        self._by_id[signal.id] = signal
        self._by_name[signal.name] = signal

    def compute_registration(
        self,
        name: str,
        definition: str,
        scope: str,
        assessment: CommitteeAssessment,
        signal_id: str | None = None,
    ) -> Signal:
        """Validate and build the would-be signal without attaching it."""
        name = name.strip()
        if not name:
            raise ValidationError("signal name cannot be empty", field="name")
        if name in self._by_name:
            raise ValidationError(f"signal name {name!r} is already registered", field="name")
        if name.startswith(_ID_PREFIX) and name[len(_ID_PREFIX):].isdigit():
            raise ValidationError(
                f"names of the form {_ID_PREFIX}N are reserved for signal ids", field="name"
            )
        if not definition.strip():
            raise ValidationError("a signal needs a sharp one-line definition", field="definition")
        x_new, y_new = model.aggregate_committee(assessment.scores)
        if not model.entry_eligible(x_new, y_new):
            raise ValidationError(
                f"aggregate ({x_new:.3f}, {y_new:.3f}) exceeds the weak-signal entry "
                f"box [0, {model.ENTRY_MAX}]^2; mature risks do not enter here",
                field="scores",
            )
        if signal_id is None:
            signal_id = f"{_ID_PREFIX}{len(self._by_id) + 1}"
        elif signal_id in self._by_id:
            raise ValidationError(f"signal id {signal_id!r} already in use", field="id")
        position = Position(x_new, y_new)
        d = model.distance(position)
        outcome = SessionOutcome(
            tau=0.0,
            position_after=position,
            x_new_agg=x_new,
            y_new_agg=y_new,
        )
        point = LocusPoint(
            session_index=1,
            date=assessment.session_date,
            position=position,
            d=d,
            region=model.classify_region(position),
            severity=model.session_severity(d, assessment.frequency_count),
            frequency_count=assessment.frequency_count,
            escalation_flag=model.escalation_active(d),
            kind=ENTRY,
            outcome=outcome,
        )
        signal = Signal(
            id=signal_id,
            name=name,
            definition=definition,
            scope=scope,
            registered_on=assessment.session_date,
            locus=[point],
            last_assessment=(x_new, y_new),
        )
        if point.escalation_flag:  # unreachable from the entry box, kept for symmetry
            signal.escalated_ever = True
            signal.first_escalation = point.date
        return signal

    # -- assessment sessions ----------------------------------------------

    def assess(self, ref: str, assessment: CommitteeAssessment) -> LocusPoint:
        signal = self.get(ref)
        point, streaks = self.compute_assessment(signal, assessment)
        self.apply_point(signal, point, streaks)
        return point

    def preview_assessment(self, ref: str, assessment: CommitteeAssessment) -> LocusPoint:
        """The point `assess` would record, computed without recording it."""
        signal = self.get(ref)
        point, _ = self.compute_assessment(signal, assessment)
        return point

    def compute_assessment(
        self, signal: Signal, assessment: CommitteeAssessment
    ) -> tuple[LocusPoint, StreakState]:
        p = self.params
        prev = self._require_active_and_ordered(signal, assessment.session_date)
        baseline_f, baseline_year = signal._frequency_baseline()
        if (
            assessment.session_date.year == baseline_year
            and assessment.frequency_count < baseline_f
        ):
            raise ValidationError(
                f"frequency_count may not fall within an observation year "
                f"({assessment.frequency_count} < {baseline_f})",
                field="f",
            )
        tau = model.dimensionless_time(
            (assessment.session_date - prev.date).days, p.t_ref_days
        )
        x_new, y_new = model.aggregate_committee(assessment.scores)
        n = assessment.committee_size
        alpha_tau = model.recency_weight(tau, p.alpha_base, p.lambda_)
        beta_tau = model.recency_weight(tau, p.beta_base, p.nu)
        pos = prev.position
        # Streaks advance first; momentum sees the streak including this
        # session. The y comparison is against the pre-decay value.
        streaks, reversal_x = model.update_streak(signal.streaks, pos.x, x_new, "x")
        streaks, reversal_y = model.update_streak(streaks, pos.y, y_new, "y")
        kappa_x, rho_x = model.consensus_momentum(
            abs(x_new - pos.x), streaks.k_x, n, reversal_x, p
        )
        kappa_y, rho_y = model.consensus_momentum(
            abs(y_new - pos.y), streaks.k_y, n, reversal_y, p
        )
        n_cap = model.committee_cap(n, p)
        alpha_eff, beta_eff = model.effective_weights(
            alpha_tau, beta_tau, kappa_x, kappa_y, n_cap
        )
        position, y_decay = model.update_position(
            pos, (x_new, y_new), alpha_eff, beta_eff, tau, p
        )
        d = model.distance(position)
        outcome = SessionOutcome(
            tau=tau,
            position_after=position,
            x_new_agg=x_new,
            y_new_agg=y_new,
            alpha_tau=alpha_tau,
            beta_tau=beta_tau,
            kappa_x=kappa_x,
            kappa_y=kappa_y,
            rho_x=rho_x,
            rho_y=rho_y,
            n_cap=n_cap,
            alpha_eff=alpha_eff,
            beta_eff=beta_eff,
            y_decay=y_decay,
            reversal_x=reversal_x,
            reversal_y=reversal_y,
        )
        point = LocusPoint(
            session_index=prev.session_index + 1,
            date=assessment.session_date,
            position=position,
            d=d,
            region=model.classify_region(position),
            severity=model.session_severity(d, assessment.frequency_count),
            frequency_count=assessment.frequency_count,
            escalation_flag=model.escalation_active(d),
            kind=ASSESSMENT,
            outcome=outcome,
        )
        return point, streaks

    # -- decay-only sessions ------------------------------------------------

    def decay(self, ref: str, on_date: Date) -> LocusPoint:
        signal = self.get(ref)
        point = self.compute_decay(signal, on_date)
        self.apply_point(signal, point, signal.streaks)
        return point

    def preview_decay(self, ref: str, on_date: Date) -> LocusPoint:
        signal = self.get(ref)
        return self.compute_decay(signal, on_date)

    def compute_decay(self, signal: Signal, on_date: Date) -> LocusPoint:
        p = self.params
        prev = self._require_active_and_ordered(signal, on_date)
        tau = model.dimensionless_time((on_date - prev.date).days, p.t_ref_days)
        position = model.passive_decay(prev.position, tau, p)
        d = model.distance(position)
        outcome = SessionOutcome(
            tau=tau,
            position_after=position,
            y_decay=prev.position.y * math.exp(-p.mu * tau),
        )
        return LocusPoint(
            session_index=prev.session_index + 1,
            date=on_date,
            position=position,
            d=d,
            region=model.classify_region(position),
            severity=model.session_severity(d, prev.frequency_count),
            frequency_count=prev.frequency_count,
            escalation_flag=model.escalation_active(d),
            kind=DECAY_ONLY,
            outcome=outcome,
        )

    # -- lifecycle ----------------------------------------------------------

    def retire(self, ref: str, on_date: Date, rationale: str) -> Signal:
        signal = self.get(ref)
        self.check_retirement(signal, on_date, rationale)
        self.apply_retirement(signal, on_date, rationale)
        return signal

    @staticmethod
    def apply_retirement(signal: Signal, on_date: Date, rationale: str) -> None:
        signal.status = RETIRED
        signal.terminal_date = on_date
        signal.terminal_rationale = rationale

    def check_retirement(self, signal: Signal, on_date: Date, rationale: str) -> None:
        # No distance precondition and no mandatory rationale: retirement is
        # a team judgment call, unlike the d-gated closure path.
        self._require_active(signal)
        self._require_terminal_date(signal, on_date)

    def close(
        self, ref: str, on_date: Date, rationale: str = "", override: bool = False
    ) -> Signal:
        signal = self.get(ref)
        self.check_closure(signal, on_date, rationale, override)
        self.apply_closure(signal, on_date, rationale, override)
        return signal

    @staticmethod
    def apply_closure(signal: Signal, on_date: Date, rationale: str, override: bool) -> None:
        signal.status = CLOSED
        signal.terminal_date = on_date
        signal.terminal_rationale = rationale
        signal.closed_with_override = override

    def check_closure(
        self, signal: Signal, on_date: Date, rationale: str, override: bool
    ) -> None:
        self._require_active(signal)
        self._require_terminal_date(signal, on_date)
        d = signal.current.d
        if model.closure_eligible(d, self.params):
            return
        if not override:
            raise ValidationError(
                f"closure needs d < {self.params.d_close} (currently d = {d:.3f}); "
                f"pass an override with a rationale to close anyway",
                field="override",
            )
        if not rationale.strip():
            raise ValidationError("an override closure requires a rationale", field="rationale")

    # -- shared guards -------------------------------------------------------

    def _require_active(self, signal: Signal) -> None:
        if signal.status != ACTIVE:
            raise ValidationError(
                f"signal {signal.name!r} is {signal.status}; its locus is read-only",
                field="signal",
            )

    def _require_terminal_date(self, signal: Signal, on_date: Date) -> None:
        if on_date < signal.current.date:
            raise ValidationError(
                f"date {on_date} precedes the last session date {signal.current.date}",
                field="date",
            )

    def _require_active_and_ordered(self, signal: Signal, on_date: Date) -> LocusPoint:
        self._require_active(signal)
        prev = signal.current
        if on_date <= prev.date:
            detail = "same-day repeat sessions are not representable (tau would be 0)"
            if on_date < prev.date:
                detail = "session dates must move forward"
            raise ValidationError(
                f"session date {on_date} must fall strictly after {prev.date}; {detail}",
                field="date",
            )
        return prev

    def apply_point(self, signal: Signal, point: LocusPoint, streaks: StreakState) -> None:
        signal.streaks = streaks
        if point.kind == ASSESSMENT:
            signal.last_assessment = (point.outcome.x_new_agg, point.outcome.y_new_agg)
        if point.escalation_flag and not signal.escalated_ever:
            signal.escalated_ever = True
            signal.first_escalation = point.date
        # Appended last so a concurrent reader never sees a flagged point
        # without the escalated_ever latch already set.
        signal.locus.append(point)

    # -- reporting helpers ---------------------------------------------------

    def occupancy(self) -> dict[Region, int]:
        """Active-signal count per region, for dashboards."""
        counts = {region: 0 for region in Region}
        for signal in self.active():
            counts[signal.current.region] += 1
        return counts
