"""Model parameters and configuration loading.

All tunables live in one frozen dataclass so a parameter set can be carried
alongside a journal and replayed years later. Defaults are the published
reference values; every field is range-checked on construction.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Mapping

from .errors import ValidationError

SQRT50 = math.sqrt(50.0)
SQRT200 = math.sqrt(200.0)

# Config files use "lambda"; that is a keyword in Python, hence the alias.
_KEY_ALIASES = {"lambda": "lambda_"}
_FIELD_TO_KEY = {"lambda_": "lambda"}


@dataclass(frozen=True)
class ModelParameters:
    """Tunable constants for the update pipeline.

    Attributes:
        t_ref_days: Reference period in days; elapsed time is expressed as
            multiples of this (tau = days / t_ref_days).
        alpha_base: Ceiling of the x-axis recency weight.
        beta_base: Ceiling of the y-axis recency weight.
        lambda_: Saturation rate of the x-axis recency weight.
        nu: Saturation rate of the y-axis recency weight.
        mu: Passive decay rate of the y axis per reference period.
        delta: Momentum gain on the displacement magnitude term.
        eta: Momentum gain on the streak persistence term.
        phi: Momentum gain on the committee size term.
        psi: Reversal amplifier gain.
        k_ref: Streak length treated as "fully established".
        n_ref: Committee size treated as "full committee".
        alpha_min: Floor of the committee confidence cap.
        y_min: Floor below which the y axis never decays.
        d_close: Distance from the origin under which closure is eligible.
    """

    t_ref_days: int = 14
    alpha_base: float = 0.90
    beta_base: float = 0.90
    lambda_: float = 0.75
    nu: float = 0.75
    mu: float = 0.087
    delta: float = 0.50
    eta: float = 0.30
    phi: float = 0.30
    psi: float = 0.50
    k_ref: int = 5
    n_ref: int = 5
    alpha_min: float = 0.70
    y_min: float = 0.50
    d_close: float = 1.0

    def __post_init__(self) -> None:
        self._require_int("t_ref_days", minimum=1)
        self._require_int("k_ref", minimum=1)
        self._require_int("n_ref", minimum=1)
        self._require_float("alpha_base", low=0.0, high=1.0, low_open=True)
        self._require_float("beta_base", low=0.0, high=1.0, low_open=True)
        self._require_float("lambda_", low=0.0, low_open=True)
        self._require_float("nu", low=0.0, low_open=True)
        self._require_float("mu", low=0.0, low_open=True)
        self._require_float("delta", low=0.0)
        self._require_float("eta", low=0.0)
        self._require_float("phi", low=0.0)
        self._require_float("psi", low=0.0)
        self._require_float("alpha_min", low=0.0, high=1.0, low_open=True)
        self._require_float("y_min", low=0.0, high=10.0, high_open=True)
        self._require_float("d_close", low=0.0, low_open=True)
        if self.d_close >= SQRT50:
            raise ValidationError(
                f"d_close must stay below the escalation radius {SQRT50:.6f}, "
                f"got {self.d_close}",
                field="d_close",
            )

    def _require_int(self, name: str, minimum: int) -> None:
        value = getattr(self, name)
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValidationError(f"{self._key(name)} must be an integer", field=self._key(name))
        if value < minimum:
            raise ValidationError(
                f"{self._key(name)} must be >= {minimum}, got {value}", field=self._key(name)
            )

    def _require_float(
        self,
        name: str,
        low: float,
        high: float | None = None,
        low_open: bool = False,
        high_open: bool = False,
    ) -> None:
        value = getattr(self, name)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValidationError(f"{self._key(name)} must be a number", field=self._key(name))
        value = float(value)
        if not math.isfinite(value):
            raise ValidationError(f"{self._key(name)} must be finite", field=self._key(name))
        if value < low or (low_open and value == low):
            bound = "greater than" if low_open else "at least"
            raise ValidationError(
                f"{self._key(name)} must be {bound} {low}, got {value}", field=self._key(name)
            )
        if high is not None and (value > high or (high_open and value == high)):
            bound = "less than" if high_open else "at most"
            raise ValidationError(
                f"{self._key(name)} must be {bound} {high}, got {value}", field=self._key(name)
            )

    @staticmethod
    def _key(field_name: str) -> str:
        return _FIELD_TO_KEY.get(field_name, field_name)

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Any]) -> "ModelParameters":
        """Build parameters from a flat key-value mapping.

        Unknown keys are rejected by name; missing keys fall back to the
        defaults, so partial files are fine.
        """
        known = {f.name for f in fields(cls)}
        kwargs: dict[str, Any] = {}
        for key, value in mapping.items():
            field_name = _KEY_ALIASES.get(key, key)
            if field_name not in known or key == "lambda_":
                raise ValidationError(f"unknown configuration key {key!r}", field=key)
            kwargs[field_name] = value
        return cls(**kwargs)

    def to_mapping(self) -> dict[str, Any]:
        """Flat mapping using the config-file key spelling ("lambda")."""
        out: dict[str, Any] = {}
        for f in fields(self):
            out[self._key(f.name)] = getattr(self, f.name)
        return out


def load_config(path: str | Path | None) -> ModelParameters:
    """Load parameters from a flat JSON file, or defaults when no file is named.

    Args:
        path: Config file location. None yields the default parameter set; a
            named path must exist.

    Raises:
        ValidationError: missing, unparseable file, unknown key, or
            out-of-range value.
    """
    if path is None:
        return ModelParameters()
    p = Path(path)
    if not p.exists():
        raise ValidationError(f"configuration file {p} does not exist")
    try:
        raw = json.loads(p.read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise ValidationError(f"cannot parse configuration file {p}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ValidationError(f"configuration file {p} must hold a flat key-value object")
    return ModelParameters.from_mapping(raw)


DEFAULT_PARAMETERS = ModelParameters()
