"""Narrated walkthrough of a signal's first two sessions.

Registers a fresh weak signal and runs one follow-up committee session,
printing every intermediate quantity the update pipeline produces so you can
follow one blend end to end.

    python3 demos/two_session_walkthrough.py
"""

from __future__ import annotations

from datetime import date

from wscm.engine import Registry
from wscm.model import CommitteeAssessment, severity_band

registry = Registry()

print("== Session 1: entry ==")
signal = registry.register(
    "gas-fumes",
    "intermittent solvent smell near the night-shift intake bay",
    "maintenance hall, night shift",
    CommitteeAssessment(date(2026, 1, 5), ((1, 1),), 3),
)
entry = signal.current
print(f"committee scored NRS (1, 1); the signal enters at "
      f"({entry.position.x:.3f}, {entry.position.y:.3f}) in {entry.region.value}")
print(f"d = {entry.d:.3f}, S = {entry.severity:.3f} "
      f"({severity_band(entry.severity).name} band)")

print()
print("== Session 2: fourteen days later, the committee repeats (1, 1) ==")
point = registry.assess(
    "gas-fumes", CommitteeAssessment(date(2026, 1, 19), ((1, 1),), 4)
)
o = point.outcome
print(f"tau        = {o.tau:.3f}   (14 days / 14-day reference)")
print(f"alpha(tau) = {o.alpha_tau:.3f}   recency weight after one reference period")
print(f"kappa_x    = {o.kappa_x:.3f}   momentum: lone assessor, no streak, no move")
print(f"n_cap      = {o.n_cap:.3f}   single-assessor ceiling on any blend")
print(f"alpha_eff  = {o.alpha_eff:.3f}   min(cap, alpha + kappa)")
print(f"y_decay    = {o.y_decay:.3f}   growth potential after passive cooling")
print(f"new point  = ({point.position.x:.3f}, {point.position.y:.3f}) "
      f"in {point.region.value}")
print(f"d = {point.d:.3f}, S = {point.severity:.3f} "
      f"({severity_band(point.severity).name} band)")
print()
print("x did not move (same committee view), while y drifted down: growth")
print("potential is a perishable claim and decays unless the committee renews it.")
