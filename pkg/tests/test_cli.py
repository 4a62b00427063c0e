"""Command-line workflow tests, run in-process through main()."""

from __future__ import annotations

import json

import pytest

from wscm.cli import ENV_JOURNAL, main


@pytest.fixture
def run(journal_path, capsys, monkeypatch):
    """Invoke the CLI with --journal injected; returns (code, stdout, stderr)."""
    monkeypatch.delenv(ENV_JOURNAL, raising=False)

    def invoke(*argv, journal=True):
        args = (["--journal", str(journal_path)] if journal else []) + list(argv)
        code = main(args)
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    invoke.journal_path = journal_path
    return invoke


def seed_two_sessions(run):
    assert run("init")[0] == 0
    assert (
        run(
            "register", "gas-fumes",
            "--definition", "fumes near intake bay",
            "--date", "2026-01-05", "--nrs", "1,1", "--f", "3",
        )[0]
        == 0
    )
    return run(
        "assess", "gas-fumes",
        "--date", "2026-01-19", "--nrs", "1,1", "--f", "4",
    )


class TestInit:
    def test_creates_journal(self, run):
        code, out, _ = run("init")
        assert code == 0
        assert run.journal_path.exists()
        assert "initialized" in out

    def test_second_init_fails(self, run):
        run("init")
        code, _, err = run("init")
        assert code == 1
        assert "already exists" in err

    def test_journal_flag_required(self, run):
        code, _, err = run("init", journal=False)
        assert code == 1
        assert ENV_JOURNAL in err

    def test_env_var_supplies_path(self, run, monkeypatch, tmp_path):
        alt = tmp_path / "via-env.wscm"
        monkeypatch.setenv(ENV_JOURNAL, str(alt))
        code, _, _ = run("init", journal=False)
        assert code == 0
        assert alt.exists()


class TestRegister:
    def test_entry_summary(self, run):
        run("init")
        code, out, _ = run(
            "register", "gas-fumes",
            "--definition", "fumes near intake bay",
            "--date", "2026-01-05", "--nrs", "1,1", "--f", "3",
        )
        assert code == 0
        assert "gas-fumes" in out
        assert "(2.500, 2.500) QuestionMarks" in out

    def test_mature_entry_rejected(self, run):
        run("init")
        code, _, err = run(
            "register", "hot",
            "--definition", "already burning",
            "--date", "2026-01-05", "--nrs", "3,1", "--f", "3",
        )
        assert code == 1
        assert "mature risks do not enter here" in err


class TestAssess:
    def test_worked_session_two_line(self, run):
        code, out, _ = seed_two_sessions(run)
        assert code == 0
        assert "(2.500, 2.403) QuestionMarks d=3.468 S=0.395 band=Low" in out
        assert "Routine monitoring; log and observe" in out
        assert "escalation: inactive" in out

    def test_committee_spread_displayed(self, run):
        run("init")
        run(
            "register", "gas-fumes", "--definition", "fumes near intake bay",
            "--date", "2026-01-05", "--nrs", "1,1", "--f", "3",
        )
        code, out, _ = run(
            "assess", "gas-fumes", "--date", "2026-01-19",
            "--nrs", "1,0", "--nrs", "3,2", "--f", "4",
            "--assessors", "ana,bo",
        )
        assert code == 0
        assert "spread" in out

    def test_unknown_signal_suggests(self, run):
        seed_two_sessions(run)
        code, _, err = run(
            "assess", "gas-fume", "--date", "2026-02-02", "--nrs", "1,1", "--f", "5"
        )
        assert code == 1
        assert "did you mean: gas-fumes" in err

    def test_same_day_rejected(self, run):
        seed_two_sessions(run)
        code, _, err = run(
            "assess", "gas-fumes", "--date", "2026-01-19", "--nrs", "1,1", "--f", "5"
        )
        assert code == 1
        assert "tau would be 0" in err

    def test_malformed_nrs_pair(self, run):
        seed_two_sessions(run)
        for bad in ("1", "1,2,3", "a,b", "1.5,2"):
            code, _, err = run(
                "assess", "gas-fumes", "--date", "2026-02-02", "--nrs", bad, "--f", "5"
            )
            assert code == 1
            assert "error:" in err

    def test_malformed_date(self, run):
        seed_two_sessions(run)
        code, _, err = run(
            "assess", "gas-fumes", "--date", "02/02/2026", "--nrs", "1,1", "--f", "5"
        )
        assert code == 1
        assert "error:" in err


class TestDecayRetireClose:
    def test_decay_session(self, run):
        seed_two_sessions(run)
        code, out, _ = run("decay", "gas-fumes", "--date", "2026-02-16")
        assert code == 0
        assert "(2.500," in out

    def test_retire_without_rationale(self, run):
        seed_two_sessions(run)
        code, out, _ = run("retire", "gas-fumes", "--date", "2026-02-16")
        assert code == 0
        assert "retired" in out

    def test_close_needs_proximity_or_override(self, run):
        seed_two_sessions(run)
        code, _, err = run("close", "gas-fumes", "--date", "2026-02-16")
        assert code == 1
        assert "override" in err
        code, _, err = run("close", "gas-fumes", "--date", "2026-02-16", "--override")
        assert code == 1
        code, out, _ = run(
            "close", "gas-fumes", "--date", "2026-02-16",
            "--override", "--rationale", "site decommissioned",
        )
        assert code == 0
        assert "closed" in out

    def test_operations_on_retired_signal(self, run):
        seed_two_sessions(run)
        run("retire", "gas-fumes", "--date", "2026-02-16")
        code, _, err = run(
            "assess", "gas-fumes", "--date", "2026-03-02", "--nrs", "1,1", "--f", "5"
        )
        assert code == 1
        assert "read-only" in err


class TestReplay:
    def test_clean_journal(self, run):
        seed_two_sessions(run)
        code, out, _ = run("replay")
        assert code == 0
        assert "journal OK: 3 records, 1 signals" in out

    def test_tampered_journal_exits_two(self, run):
        seed_two_sessions(run)
        text = run.journal_path.read_text()
        run.journal_path.write_text(text.replace('"2.403110"', '"2.403111"'))
        code, _, err = run("replay")
        assert code == 2
        assert "replay mismatch" in err

    def test_torn_journal_exits_two(self, run):
        seed_two_sessions(run)
        run.journal_path.write_bytes(run.journal_path.read_bytes()[:-1])
        code, _, err = run("replay")
        assert code == 2
        assert "torn write" in err


class TestReport:
    def test_table_row_and_occupancy(self, run):
        seed_two_sessions(run)
        code, out, _ = run("report")
        assert code == 0
        assert "gas-fumes" in out
        assert "2.500" in out and "2.403" in out
        assert "QuestionMarks" in out
        assert "regions: QuestionMarks=1 LitFuses=0 Owls=0 SleepingCats=0" in out

    def test_as_of_decays_display_only(self, run):
        seed_two_sessions(run)
        before = run.journal_path.read_bytes()
        code, out, _ = run("report", "--as-of", "2026-05-11")
        assert code == 0
        assert "positions evaluated as of 2026-05-11" in out
        # y decayed from 2.403 over 8 reference periods: about 1.198
        assert "1.198" in out
        assert run.journal_path.read_bytes() == before

    def test_escalated_signals_called_out(self, run):
        seed_two_sessions(run)
        run(
            "assess", "gas-fumes", "--date", "2026-03-16",
            "--nrs", "4,4", "--nrs", "4,4", "--nrs", "4,4", "--nrs", "4,4", "--nrs", "4,4",
            "--f", "12",
        )
        _, out, _ = run("report")
        assert "escalated: gas-fumes" in out


class TestExport:
    def test_table_to_stdout(self, run):
        seed_two_sessions(run)
        code, out, _ = run("export", "gas-fumes")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "session_index,date,x,y,d,region,S,f,escalation_flag"
        assert lines[1].startswith("1,2026-01-05,2.500000,2.500000,")

    def test_timeseries_to_file(self, run, tmp_path):
        seed_two_sessions(run)
        out_path = tmp_path / "locus.jsonl"
        code, _, _ = run("export", "gas-fumes", "--format", "timeseries", "--out", str(out_path))
        assert code == 0
        rows = [json.loads(line) for line in out_path.read_text().splitlines()]
        assert len(rows) == 2
        assert rows[1]["position"]["y"] == "2.403110"

    def test_unknown_format_is_usage_error(self, run):
        seed_two_sessions(run)
        code, _, err = run("export", "gas-fumes", "--format", "xml")
        assert code == 1
        assert "table" in err


class TestUsageErrors:
    def test_unknown_subcommand(self, run):
        code, _, err = run("conjure")
        assert code == 1
        assert "error:" in err

    def test_missing_required_flag(self, run):
        run("init")
        code, _, err = run("register", "x", "--date", "2026-01-05", "--nrs", "1,1", "--f", "3")
        assert code == 1
        assert "definition" in err

    def test_no_arguments(self, run):
        code, _, _ = run(journal=False)
        assert code == 1
