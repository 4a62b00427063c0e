"""Canonical number rendering.

Two fixed forms are used everywhere so that independently produced outputs
can be compared byte for byte:

- canon6: machine form, exactly six fractional digits. Journal verification
  checksums, exports, and replay comparisons all use this form.
- display: human form, fixed decimals with half-up rounding (bankers'
  rounding would make printed tables disagree with hand arithmetic).
"""

from __future__ import annotations

from decimal import ROUND_HALF_UP, Decimal


def canon6(value: float) -> str:
    """Render a float with exactly six fractional digits."""
    return f"{value:.6f}"


def display(value: float, places: int = 3) -> str:
    """Render a float for humans: fixed places, ties round away from zero."""
    quantum = Decimal(1).scaleb(-places)
    return str(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))
