"""Acceptance gate: the published behaviors the package must reproduce.

Each test covers one acceptance criterion and prints one PASS line on the way
out; pytest -v shows the same one-line-per-criterion verdict.
"""

from __future__ import annotations

import math
import random
import time
from datetime import date, timedelta

import pytest

from conftest import DAY_ONE, committee, entry_assessment
from wscm.canonical import canon6
from wscm.cli import main
from wscm.engine import Registry
from wscm.journal import init_journal, replay
from wscm.model import (
    CommitteeAssessment,
    Position,
    Region,
    StreakState,
    aggregate_committee,
    classify_region,
    closure_eligible,
    committee_cap,
    consensus_momentum,
    distance,
    effective_weights,
    escalation_active,
    passive_decay,
    recency_weight,
    session_severity,
    update_position,
    update_streak,
)
from wscm.params import SQRT50, ModelParameters

P = ModelParameters()
TOL = 5e-4  # worked-example agreement, before display rounding
CASES = 1000


def test_criterion_1_worked_opening_sessions(registry):
    signal = registry.register(
        "gas-fumes", "fumes near intake bay", "night shift", entry_assessment()
    )
    entry = signal.current
    assert canon6(entry.position.x) == "2.500000"
    assert canon6(entry.position.y) == "2.500000"

    point = registry.assess("gas-fumes", committee(14, [(1, 1)], 4))
    o = point.outcome
    assert o.alpha_tau == pytest.approx(0.475, abs=TOL)
    assert o.kappa_x == pytest.approx(0.060, abs=TOL)
    assert o.n_cap == pytest.approx(0.76, abs=TOL)
    assert o.alpha_eff == pytest.approx(0.535, abs=TOL)
    assert o.y_decay == pytest.approx(2.292, abs=TOL)
    assert point.position.x == pytest.approx(2.500, abs=TOL)
    assert point.position.y == pytest.approx(2.403, abs=TOL)
    print("PASS criterion 1: worked sessions 1-2 reproduced within 5e-4")


def test_criterion_2_published_locus_rows():
    rows = {
        # session: (x, y, f, d, severity, escalated)
        6: (9.51, 2.71, 12, 9.89, 1.79, True),
        12: (9.17, 9.40, 40, 13.13, None, True),
        13: (9.72, 9.85, 48, 13.84, 3.81, True),
        24: (2.52, 5.38, 58, 5.94, 1.71, False),
    }
    for session, (x, y, f, d_ref, s_ref, escalated) in rows.items():
        pos = Position(x, y)
        d = distance(pos)
        assert d == pytest.approx(d_ref, abs=5e-3), f"session {session} distance"
        if s_ref is not None:
            assert session_severity(d, f) == pytest.approx(s_ref, abs=5e-3), (
                f"session {session} severity"
            )
        assert escalation_active(d) is escalated, f"session {session} flag"
    print("PASS criterion 2: published locus rows (d, S, flags) within 5e-3")


def test_criterion_3_calibration_suite():
    assert abs(P.mu - math.log(2) / 8) < 1e-3
    assert 0.498 <= math.exp(-P.mu * 8.0) <= 0.500
    assert recency_weight(1.0, P.alpha_base, P.lambda_) / P.alpha_base == pytest.approx(
        0.5276, abs=1e-4
    )
    kappa_max, _ = consensus_momentum(10.0, 5, 5, False, P)
    assert kappa_max == 1.0
    _, rho = consensus_momentum(5.0, 0, 5, True, P)
    assert rho == 1.5
    assert committee_cap(1, P) == 0.76
    assert closure_eligible(distance(Position(0.70, 0.70)), P) is True
    assert closure_eligible(1.0, P) is False
    assert escalation_active(SQRT50) is True
    assert escalation_active(math.nextafter(SQRT50, 0.0)) is False
    assert SQRT50 == math.sqrt(50.0)
    print("PASS criterion 3: calibration suite (decay, weights, thresholds) exact")


class TestCriterion4RandomizedInvariants:
    """Each invariant checked over >= 1000 randomized cases."""

    def random_update(self, rng):
        pos = Position(rng.uniform(0, 10), rng.uniform(0, 10))
        scores = [(rng.randint(0, 4), rng.randint(0, 4)) for _ in range(rng.randint(1, 5))]
        tau = rng.uniform(1e-3, 30.0)
        target = aggregate_committee(scores)
        a_tau = recency_weight(tau, P.alpha_base, P.lambda_)
        b_tau = recency_weight(tau, P.beta_base, P.nu)
        kx, _ = consensus_momentum(abs(target[0] - pos.x), rng.randint(0, 9), len(scores), False, P)
        ky, _ = consensus_momentum(abs(target[1] - pos.y), rng.randint(0, 9), len(scores), False, P)
        cap = committee_cap(len(scores), P)
        a_eff, b_eff = effective_weights(a_tau, b_tau, kx, ky, cap)
        return pos, target, tau, cap, a_eff, b_eff

    def test_position_bounds(self):
        rng = random.Random(401)
        for _ in range(CASES):
            pos, target, tau, _, a_eff, b_eff = self.random_update(rng)
            updated, _ = update_position(pos, target, a_eff, b_eff, tau, P)
            assert 0.0 <= updated.x <= 10.0 and 0.0 <= updated.y <= 10.0
        print(f"PASS criterion 4a: position bounds over {CASES} cases")

    def test_x_convexity(self):
        rng = random.Random(402)
        for _ in range(CASES):
            pos, target, tau, _, a_eff, b_eff = self.random_update(rng)
            updated, _ = update_position(pos, target, a_eff, b_eff, tau, P)
            low, high = sorted((pos.x, target[0]))
            assert low - 1e-12 <= updated.x <= high + 1e-12
        print(f"PASS criterion 4b: x-update convexity over {CASES} cases")

    def test_y_floor(self):
        rng = random.Random(403)
        for _ in range(CASES):
            pos, target, tau, _, a_eff, b_eff = self.random_update(rng)
            updated, _ = update_position(pos, target, a_eff, b_eff, tau, P)
            assert updated.y >= P.y_min
        print(f"PASS criterion 4c: y floor over {CASES} cases")

    def test_passive_decay_x_persistence(self):
        rng = random.Random(404)
        for _ in range(CASES):
            pos = Position(rng.uniform(0, 10), rng.uniform(0, 10))
            decayed = passive_decay(pos, rng.uniform(0, 60), P)
            assert decayed.x == pos.x
        print(f"PASS criterion 4d: passive decay keeps x over {CASES} cases")

    def test_lazy_decay_composition(self):
        rng = random.Random(405)
        for _ in range(CASES):
            pos = Position(rng.uniform(0, 10), rng.uniform(0, 10))
            t1, t2 = rng.uniform(0, 20), rng.uniform(0, 20)
            stepwise = passive_decay(passive_decay(pos, t1, P), t2, P)
            jump = passive_decay(pos, t1 + t2, P)
            assert abs(stepwise.y - jump.y) <= 1e-12
        print(f"PASS criterion 4e: lazy decay composition <= 1e-12 over {CASES} cases")

    def test_severity_concavity_in_frequency(self):
        rng = random.Random(406)
        for _ in range(CASES):
            d = rng.uniform(0, math.sqrt(200.0))
            f = rng.randint(0, 300)
            s0, s1, s2 = (session_severity(d, f + j) for j in range(3))
            assert s1 >= s0 - 1e-15
            assert s1 - s0 >= (s2 - s1) - 1e-12
        print(f"PASS criterion 4f: severity concave in f over {CASES} cases")

    def test_region_partition_totality(self):
        rng = random.Random(407)
        for _ in range(CASES):
            pos = Position(rng.uniform(0, 10), rng.uniform(0, 10))
            region = classify_region(pos)
            expected = {
                (True, True): Region.OWLS,
                (True, False): Region.LIT_FUSES,
                (False, True): Region.SLEEPING_CATS,
                (False, False): Region.QUESTION_MARKS,
            }[(pos.x >= 5.0, pos.y >= 5.0)]
            assert region is expected
        print(f"PASS criterion 4g: region partition total over {CASES} cases")

    def test_effective_weight_cap(self):
        rng = random.Random(408)
        for _ in range(CASES):
            _, _, _, cap, a_eff, b_eff = self.random_update(rng)
            assert a_eff <= cap and b_eff <= cap
        print(f"PASS criterion 4h: alpha_eff <= committee cap over {CASES} cases")

    def test_streak_reset_semantics(self):
        rng = random.Random(409)
        streaks = StreakState()
        value = 5.0
        k, last = 0, None
        for _ in range(CASES):
            new_value = min(10.0, max(0.0, value + rng.choice([-1.0, 0.0, 1.0])))
            streaks, reversal = update_streak(streaks, value, new_value, "x")
            realized = new_value - value
            if realized != 0:
                flipped = (last == 1) != (realized > 0) if last is not None else False
                assert reversal is flipped
                k = 0 if flipped else k + 1
                last = 1 if realized > 0 else -1
            else:
                assert reversal is False
            assert streaks.k_x == k and streaks.last_sign_x == last
            value = new_value
        print(f"PASS criterion 4i: streak reset semantics over {CASES} transitions")

    def test_journal_replay_bit_equality(self, tmp_path):
        rng = random.Random(410)
        path = tmp_path / "bulk.wscm"
        jr = init_journal(path)
        names = [f"probe-{i}" for i in range(8)]
        when = date(2026, 1, 5)
        freq = {}
        for name in names:
            jr.register(name, f"randomized stream {name}", "", CommitteeAssessment(when, ((1, 1),), 1))
            freq[name] = 1
        recorded = 0
        while recorded < CASES:
            when = when + timedelta(days=rng.randint(1, 3))
            name = rng.choice(names)
            if rng.random() < 0.25:
                jr.decay(name, when)
            else:
                scores = tuple(
                    (rng.randint(0, 4), rng.randint(0, 4)) for _ in range(rng.randint(1, 5))
                )
                freq[name] += rng.randint(0, 4)
                jr.assess(name, CommitteeAssessment(when, scores, freq[name]))
            recorded += 1
        restored = replay(path)
        for name in names:
            mine = jr.registry.get(name).locus
            twin = restored.registry.get(name).locus
            assert len(mine) == len(twin)
            for a, b in zip(mine, twin):
                assert canon6(a.position.x) == canon6(b.position.x)
                assert canon6(a.position.y) == canon6(b.position.y)
                assert canon6(a.d) == canon6(b.d)
                assert canon6(a.severity) == canon6(b.severity)
        print(
            f"PASS criterion 4j: journal replay bit-equal at 6 decimals over {recorded} sessions"
        )


def test_criterion_5_cli_round_trip(tmp_path, capsys):
    journal = str(tmp_path / "e2e.wscm")
    started = time.perf_counter()
    assert main(["--journal", journal, "init"]) == 0
    assert (
        main(
            ["--journal", journal, "register", "gas-fumes",
             "--definition", "fumes near intake bay",
             "--date", "2026-01-05", "--nrs", "1,1", "--f", "3"]
        )
        == 0
    )
    assert (
        main(
            ["--journal", journal, "assess", "gas-fumes",
             "--date", "2026-01-19", "--nrs", "1,1", "--f", "4"]
        )
        == 0
    )
    assert main(["--journal", journal, "report"]) == 0
    out = capsys.readouterr().out
    assert "2.500" in out
    assert "2.403" in out
    assert "QuestionMarks" in out
    assert main(["--journal", journal, "replay"]) == 0
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0, f"CLI round trip took {elapsed:.3f}s"
    print(f"PASS criterion 5: CLI init/register/assess/report/replay in {elapsed:.3f}s")
