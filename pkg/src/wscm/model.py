"""Pure model arithmetic for the weak-signal cultivation field.

Signals live on a bounded [0, 10] x [0, 10] plane: x is current risk
intensity, y is risk growth potential. The two axes never mix. Committee
scores arrive on a 0..4 numeric rating scale per axis and are averaged and
scaled onto the field. Position updates blend the previous position toward
the new committee aggregate with a recency weight that saturates with
elapsed time, amplified by a consensus momentum term; the y axis also decays
passively toward a floor between sessions.

Everything in this module is a pure function of its arguments plus a
ModelParameters value. No clock, no I/O, no hidden state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import date
from enum import Enum
from typing import Sequence

from .errors import ValidationError
from .params import SQRT50, SQRT200, ModelParameters

# A committee score of 1 on either axis scales to 2.5; that is the highest
# aggregate at which a signal still counts as weak enough to enter the field.
NRS_SCALE = 2.5
ENTRY_MAX = 2.5
FIELD_MAX = 10.0
MIDLINE = 5.0


class Region(str, Enum):
    """Named quadrants of the field, split at the x = 5 and y = 5 midlines."""

    QUESTION_MARKS = "QuestionMarks"
    LIT_FUSES = "LitFuses"
    OWLS = "Owls"
    SLEEPING_CATS = "SleepingCats"


# Short characterizations used by reports and the UI legend.
REGION_TRAITS = {
    Region.QUESTION_MARKS: "emerging, unclear, early stage",
    Region.LIT_FUSES: "high intensity, growth still contained",
    Region.OWLS: "intense and escalating, under active management",
    Region.SLEEPING_CATS: "receded intensity, reactivation potential",
}


@dataclass(frozen=True)
class Position:
    """A point on the field. Construction outside [0, 10]^2 is a bug."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.x <= FIELD_MAX and 0.0 <= self.y <= FIELD_MAX):
            raise ValueError(f"position ({self.x}, {self.y}) left the field")


@dataclass(frozen=True)
class SeverityBand:
    name: str
    action: str


# Severity bands are half-open on the right: a severity of exactly 0.5 is
# already Moderate, 2.5 already Critical.
SEVERITY_BANDS = (
    (0.0, "Low", "Routine monitoring; log and observe"),
    (0.5, "Moderate", "Team review recommended"),
    (1.5, "Elevated", "Management notification; increase session frequency"),
    (2.5, "Critical", "Escalation imminent or SMS already triggered"),
)


@dataclass(frozen=True)
class CommitteeAssessment:
    """One session's worth of committee input for a single signal.

    Attributes:
        session_date: Calendar date of the cultivation session.
        scores: One (nrs_x, nrs_y) integer pair per assessor, each in 0..4.
        frequency_count: Facilitator-recorded occurrence count within the
            current observation year. Non-decreasing within a calendar year.
        notes: Free-form session notes.
        assessors: Optional label per score pair; None entries are anonymous.
    """

    session_date: date
    scores: tuple[tuple[int, int], ...]
    frequency_count: int
    notes: str = ""
    assessors: tuple[str | None, ...] | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.session_date, date):
            raise ValidationError("session_date must be a calendar date", field="date")
        if not self.scores:
            raise ValidationError("an assessment needs at least one score pair", field="scores")
        for pair in self.scores:
            if len(pair) != 2:
                raise ValidationError(
                    "each committee entry must be an (nrs_x, nrs_y) pair", field="scores"
                )
            for value in pair:
                _check_nrs(value)
        if isinstance(self.frequency_count, bool) or not isinstance(self.frequency_count, int):
            raise ValidationError("frequency_count must be an integer", field="f")
        if self.frequency_count < 0:
            raise ValidationError("frequency_count cannot be negative", field="f")
        if self.assessors is not None and len(self.assessors) != len(self.scores):
            raise ValidationError(
                "assessor labels, when given, must match the score pairs one to one",
                field="assessors",
            )

    @property
    def committee_size(self) -> int:
        return len(self.scores)

    def spread(self, axis: str) -> tuple[int, int, float]:
        """(min, max, mean) of the raw 0..4 scores on one axis.

        Recorded per session so disagreement is preserved even though only
        the mean drives the update.
        """
        idx = {"x": 0, "y": 1}[axis]
        values = [pair[idx] for pair in self.scores]
        return min(values), max(values), sum(values) / len(values)


@dataclass(frozen=True)
class StreakState:
    """Per-axis run length of same-direction movement, for momentum.

    k_* counts consecutive sessions whose committee aggregate moved the axis
    the same way, including the most recent one. last_sign_* remembers the
    direction of the last non-zero move; None until a first move happens.
    """

    k_x: int = 0
    k_y: int = 0
    last_sign_x: int | None = None
    last_sign_y: int | None = None


@dataclass(frozen=True)
class SessionOutcome:
    """Full audit trail of one position update.

    Weight and momentum fields are None for entry and decay-only sessions,
    which skip the blending pipeline.
    """

    tau: float
    position_after: Position
    x_new_agg: float | None = None
    y_new_agg: float | None = None
    alpha_tau: float | None = None
    beta_tau: float | None = None
    kappa_x: float | None = None
    kappa_y: float | None = None
    rho_x: float | None = None
    rho_y: float | None = None
    n_cap: float | None = None
    alpha_eff: float | None = None
    beta_eff: float | None = None
    y_decay: float | None = None
    reversal_x: bool = False
    reversal_y: bool = False


def _check_nrs(value: object) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"NRS score must be an integer in 0..4, got {value!r}", field="nrs")
    if not 0 <= value <= 4:
        raise ValidationError(f"NRS score must be in 0..4, got {value}", field="nrs")
    return value


def scale_nrs(score: int) -> float:
    """Map a 0..4 committee score onto the 0..10 field axis."""
    return NRS_SCALE * _check_nrs(score)


def aggregate_committee(scores: Sequence[tuple[int, int]]) -> tuple[float, float]:
    """Average the committee's scores per axis and scale onto the field.

    Args:
        scores: One (nrs_x, nrs_y) pair per assessor, each value in 0..4.

    Returns:
        (x_new, y_new), each the scaled mean, guaranteed within [0, 10].
    """
    if not scores:
        raise ValidationError("cannot aggregate an empty committee", field="scores")
    n = len(scores)
    for pair in scores:
        _check_nrs(pair[0])
        _check_nrs(pair[1])
    x_new = NRS_SCALE * sum(pair[0] for pair in scores) / n
    y_new = NRS_SCALE * sum(pair[1] for pair in scores) / n
    return x_new, y_new


def entry_eligible(x_new: float, y_new: float) -> bool:
    """True when an aggregate is weak enough to enter the field (both <= 2.5)."""
    return x_new <= ENTRY_MAX and y_new <= ENTRY_MAX


def dimensionless_time(delta_days: int, t_ref_days: int) -> float:
    """Express elapsed whole days as multiples of the reference period."""
    if delta_days < 0:
        raise ValidationError("elapsed days cannot be negative", field="date")
    if t_ref_days < 1:
        raise ValidationError("reference period must be at least one day", field="t_ref_days")
    return delta_days / t_ref_days


def recency_weight(tau: float, base: float, rate: float) -> float:
    """Saturating weight base * (1 - e^(-rate * tau)).

    Approaches `base` for long gaps and vanishes as tau -> 0, so stale
    positions yield to fresh assessments while rapid-fire sessions barely
    move the node.
    """
    if tau < 0:
        raise ValidationError("tau cannot be negative", field="tau")
    return base * (1.0 - math.exp(-rate * tau))


def consensus_momentum(
    delta_abs: float,
    k: int,
    n: int,
    reversal: bool,
    params: ModelParameters,
) -> tuple[float, float]:
    """Momentum boost kappa for one axis, plus the reversal amplifier rho.

    Three ingredients, each normalized to its reference scale: how far the
    committee wants to move the node, how long the movement has pointed the
    same way, and how many assessors agree. The raw sum is capped at 1
    before rho is applied, so kappa <= 1 + psi always holds.

    Args:
        delta_abs: |aggregate - current| on this axis, in field units (0..10).
        k: Same-direction streak length after this session's streak update.
        n: Committee size this session.
        reversal: Whether this session reversed the axis direction.
        params: Model parameters.

    Returns:
        (kappa, rho). rho is 1 unless a full-size committee reverses course.
    """
    if not 0.0 <= delta_abs <= FIELD_MAX:
        raise ValidationError("displacement magnitude must be within the field", field="delta")
    if k < 0:
        raise ValidationError("streak length cannot be negative", field="k")
    if n < 1:
        raise ValidationError("committee size must be positive", field="n")
    n_boost = min(1.0, n / params.n_ref)
    raw = min(
        1.0,
        params.delta * (delta_abs / FIELD_MAX) * ((k + 1) / params.k_ref)
        + params.eta * (k / params.k_ref)
        + params.phi * n_boost,
    )
    rho = 1.0 + params.psi * n_boost if (reversal and n >= params.n_ref) else 1.0
    return rho * raw, rho


def committee_cap(n: int, params: ModelParameters) -> float:
    """Confidence ceiling on the effective weights, rising with committee size."""
    if n < 1:
        raise ValidationError("committee size must be positive", field="n")
    return params.alpha_min + (1.0 - params.alpha_min) * min(1.0, n / params.n_ref)


def effective_weights(
    alpha_tau: float,
    beta_tau: float,
    kappa_x: float,
    kappa_y: float,
    n_cap: float,
) -> tuple[float, float]:
    """Momentum-boosted weights, clipped by the committee confidence cap."""
    return min(n_cap, alpha_tau + kappa_x), min(n_cap, beta_tau + kappa_y)


def update_position(
    position: Position,
    aggregate: tuple[float, float],
    alpha_eff: float,
    beta_eff: float,
    tau: float,
    params: ModelParameters,
) -> tuple[Position, float]:
    """Blend the node toward the committee aggregate.

    x moves a fraction alpha_eff of the way to the aggregate. y first decays
    passively over the elapsed time, then moves a fraction beta_eff toward
    the aggregate, and never lands below the y floor.

    Returns:
        (new position, decayed y before blending). The decayed y is kept for
        the session audit record.

    Raises:
        ValueError: if the result leaves the field; the inputs guarantee it
            cannot, so that is an internal error, not bad user input.
    """
    x_new, y_new = aggregate
    x_next = position.x + alpha_eff * (x_new - position.x)
    y_decay = position.y * math.exp(-params.mu * tau)
    y_next = max(params.y_min, y_decay + beta_eff * (y_new - y_decay))
    return Position(x_next, y_next), y_decay


def passive_decay(position: Position, tau: float, params: ModelParameters) -> Position:
    """Decay-only update: x holds, y decays toward the floor, nothing else."""
    if tau < 0:
        raise ValidationError("tau cannot be negative", field="tau")
    y_next = max(params.y_min, position.y * math.exp(-params.mu * tau))
    return Position(position.x, y_next)


def distance(position: Position) -> float:
    """Euclidean distance from the field origin."""
    return math.hypot(position.x, position.y)


def session_severity(d: float, frequency_count: int) -> float:
    """Severity index: distance share of the field diagonal, times ln(1 + f).

    A reporting metric only; it never feeds back into position.
    """
    if d < 0:
        raise ValidationError("distance cannot be negative", field="d")
    if isinstance(frequency_count, bool) or not isinstance(frequency_count, int):
        raise ValidationError("frequency_count must be an integer", field="f")
    if frequency_count < 0:
        raise ValidationError("frequency_count cannot be negative", field="f")
    return (d / SQRT200) * math.log1p(frequency_count)


def severity_band(severity: float) -> SeverityBand:
    """Classify a severity value into its reporting band."""
    if severity < 0:
        raise ValidationError("severity cannot be negative", field="severity")
    chosen = SEVERITY_BANDS[0]
    for band in SEVERITY_BANDS:
        if severity >= band[0]:
            chosen = band
    return SeverityBand(name=chosen[1], action=chosen[2])


def classify_region(position: Position) -> Region:
    """Quadrant lookup; the x = 5 and y = 5 boundaries belong to the high side."""
    if position.x >= MIDLINE:
        return Region.OWLS if position.y >= MIDLINE else Region.LIT_FUSES
    return Region.SLEEPING_CATS if position.y >= MIDLINE else Region.QUESTION_MARKS


def escalation_active(d: float) -> bool:
    """Safety-management escalation flag: distance at or past sqrt(50).

    The threshold is the distance from the origin to the field centre,
    computed exactly; the rounded 7.07 from printed tables is never used.
    """
    return d >= SQRT50


def closure_eligible(d: float, params: ModelParameters) -> bool:
    """True when the node sits strictly inside the closure radius."""
    return d < params.d_close


def sign(value: float) -> int:
    """Direction of a displacement: -1, 0, or +1. Zero only on exact equality."""
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0


def update_streak(
    streaks: StreakState,
    prev_value: float,
    new_value: float,
    axis: str,
) -> tuple[StreakState, bool]:
    """Advance one axis of the streak state for a new committee aggregate.

    A zero displacement is neutral: it neither extends nor breaks a run.
    A move matching the remembered direction (or arriving with no history)
    extends the run; an opposing move resets it and reports a reversal.

    Args:
        streaks: State before this session.
        prev_value: The axis value the displacement is measured from (for y,
            the pre-decay value).
        new_value: This session's committee aggregate on the axis.
        axis: "x" or "y".

    Returns:
        (updated state, reversal flag).
    """
    if axis not in ("x", "y"):
        raise ValidationError(f"unknown axis {axis!r}", field="axis")
    s = sign(new_value - prev_value)
    k = getattr(streaks, f"k_{axis}")
    last = getattr(streaks, f"last_sign_{axis}")
    if s == 0:
        return streaks, False
    if last is None or s == last:
        k, reversal = k + 1, False
    else:
        k, reversal = 0, True
    replaced = {f"k_{axis}": k, f"last_sign_{axis}": s}
    merged = StreakState(
        k_x=replaced.get("k_x", streaks.k_x),
        k_y=replaced.get("k_y", streaks.k_y),
        last_sign_x=replaced.get("last_sign_x", streaks.last_sign_x),
        last_sign_y=replaced.get("last_sign_y", streaks.last_sign_y),
    )
    return merged, reversal
