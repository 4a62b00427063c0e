"""Shared builders for the test suite."""

from __future__ import annotations

from datetime import date, timedelta

import pytest

from wscm.engine import Registry
from wscm.journal import init_journal
from wscm.model import CommitteeAssessment

DAY_ONE = date(2026, 1, 5)


def committee(day_offset: int, scores, f: int, **kwargs) -> CommitteeAssessment:
    """Assessment `day_offset` days after DAY_ONE."""
    return CommitteeAssessment(
        DAY_ONE + timedelta(days=day_offset), tuple(scores), f, **kwargs
    )


def entry_assessment(day_offset: int = 0, f: int = 3) -> CommitteeAssessment:
    return committee(day_offset, [(1, 1)], f)


@pytest.fixture
def registry():
    return Registry()


@pytest.fixture
def registered(registry):
    """Registry holding one signal entered at (2.5, 2.5) on DAY_ONE."""
    signal = registry.register(
        "gas-fumes", "fumes near intake bay", "night shift", entry_assessment()
    )
    return registry, signal


@pytest.fixture
def journal_path(tmp_path):
    return tmp_path / "signals.wscm"


@pytest.fixture
def journaled(journal_path):
    return init_journal(journal_path)
