"""Tour of a complete 26-session cultivation arc.

Replays the checked-in gas-fumes fixture journal and narrates the locus:
entry among the QuestionMarks, migration through LitFuses into Owls, the
escalation stretch, cooling into SleepingCats, and what a facilitator would
do next (previews, as-of decay reads, retirement).

    python3 demos/full_lifecycle.py
"""

from __future__ import annotations

from datetime import timedelta
from pathlib import Path

from wscm.journal import replay
from wscm.model import severity_band
from wscm.params import SQRT50

FIXTURE = Path(__file__).parent.parent / "fixtures" / "gas-fumes.wscm"

jr = replay(FIXTURE)
registry = jr.registry
signal = registry.get("gas-fumes")

print(f"replayed {FIXTURE.name}: {len(signal.locus)} sessions, "
      f"every stored checksum verified\n")

print("  s  date         x      y      d     S     region         f   flag")
for p in signal.locus:
    flag = "*" if p.escalation_flag else " "
    print(f" {p.session_index:>2}  {p.date}  {p.position.x:5.2f}  {p.position.y:5.2f}"
          f"  {p.d:5.2f}  {p.severity:4.2f}  {p.region.value:<13}{p.frequency_count:>4}   {flag}")

print()
first = signal.first_escalation
peak = max(signal.locus, key=lambda p: p.severity)
print(f"escalation first crossed d >= sqrt(50) ~ {SQRT50:.3f} on {first}")
print(f"severity peaked at session {peak.session_index} "
      f"(S = {peak.severity:.2f}, {severity_band(peak.severity).name} band)")

current = signal.current
print(f"latest position ({current.position.x:.2f}, {current.position.y:.2f}) "
      f"sits in {current.region.value}: intensity collapsed while growth "
      f"potential stays live")

print()
print("== what a facilitator can ask without touching the journal ==")
as_of = current.date + timedelta(days=56)
drifted = signal.position_as_of(as_of, registry.params)
print(f"as-of {as_of}: untouched, y cools to {drifted.y:.2f} "
      f"(x holds at {drifted.x:.2f})")

preview = jr.preview_decay("gas-fumes", as_of)
print(f"a decay-only session that day would record "
      f"({preview.position.x:.2f}, {preview.position.y:.2f}), S = {preview.severity:.2f}")

print()
print("occupancy:", {r.value: n for r, n in registry.occupancy().items()})
print("the journal on disk is untouched by everything above; only assess/decay/")
print("retire/close append records, and replay re-verifies every one of them")
