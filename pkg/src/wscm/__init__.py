"""Weak-signal cultivation toolkit.

Positions frontline risk signals on a bounded intensity/growth field,
updates them session by session with recency-weighted, momentum-amplified
blending and passive decay, and tracks escalation. State is kept in an
append-only, replayable journal; a CLI and a local HTTP service sit on top.
"""

from .engine import LocusPoint, Registry, Signal
from .errors import (
    CultivationError,
    IntegrityError,
    StorageError,
    UnknownSignalError,
    ValidationError,
)
from .journal import JournaledRegistry, export_locus, init_journal, replay
from .model import (
    CommitteeAssessment,
    Position,
    Region,
    SessionOutcome,
    SeverityBand,
    StreakState,
    aggregate_committee,
    classify_region,
    closure_eligible,
    committee_cap,
    consensus_momentum,
    dimensionless_time,
    distance,
    effective_weights,
    entry_eligible,
    escalation_active,
    passive_decay,
    recency_weight,
    scale_nrs,
    session_severity,
    severity_band,
    update_position,
    update_streak,
)
from .params import SQRT50, SQRT200, ModelParameters, load_config

__version__ = "0.1.0"

__all__ = [
    "CommitteeAssessment",
    "CultivationError",
    "IntegrityError",
    "JournaledRegistry",
    "LocusPoint",
    "ModelParameters",
    "Position",
    "Region",
    "Registry",
    "SQRT50",
    "SQRT200",
    "SessionOutcome",
    "SeverityBand",
    "Signal",
    "StorageError",
    "StreakState",
    "UnknownSignalError",
    "ValidationError",
    "aggregate_committee",
    "classify_region",
    "closure_eligible",
    "committee_cap",
    "consensus_momentum",
    "dimensionless_time",
    "distance",
    "effective_weights",
    "entry_eligible",
    "escalation_active",
    "export_locus",
    "init_journal",
    "load_config",
    "passive_decay",
    "recency_weight",
    "replay",
    "scale_nrs",
    "session_severity",
    "severity_band",
    "update_position",
    "update_streak",
]
