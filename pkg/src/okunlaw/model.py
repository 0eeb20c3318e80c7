"""Okun's-law models with one structural break, and the country presets.

A model states either the direct form ``du = a + b * dlng`` or the reversed
form ``dlng = c + d * du``. Each regime carries its own slope and
intercept; ``break_year`` is the first year of the second regime.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, NamedTuple

from .errors import DataError, InfeasibleError, OkunError, UnknownPresetError
from .regress import check_orientation

MODEL_FORMAT = "okun_model_v1"
PRESET_DIR_ENV = "OKUN_PRESET_DIR"


@dataclass(frozen=True)
class Regime:
    slope: float
    intercept: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "slope", float(self.slope))
        object.__setattr__(self, "intercept", float(self.intercept))
        if not (math.isfinite(self.slope) and math.isfinite(self.intercept)):
            raise ValueError("regime coefficients must be finite")


@dataclass(frozen=True)
class OkunModel:
    """Orientation, break year and per-regime coefficients.

    ``break_year=None`` describes a single regime; ``regime2`` then
    repeats ``regime1``. Years outside ``sample_start..sample_end`` are
    allowed in predictions and are flagged as extrapolation.
    """

    country: str
    orientation: str
    break_year: int | None
    regime1: Regime
    regime2: Regime
    sample_start: int
    sample_end: int
    provenance: str = ""

    def __post_init__(self) -> None:
        check_orientation(self.orientation)
        if self.sample_start > self.sample_end:
            raise ValueError("sample_start must not exceed sample_end")
        if self.break_year is not None and not (
            self.sample_start < self.break_year <= self.sample_end
        ):
            raise ValueError(
                f"break year {self.break_year} must satisfy "
                f"{self.sample_start} < break_year <= {self.sample_end}"
            )

    @property
    def obeys_okun_sign(self) -> bool:
        """Both regime slopes negative, as Okun's law requires."""
        return self.regime1.slope < 0 and self.regime2.slope < 0

    def regime(self, index: int) -> Regime:
        if index == 1:
            return self.regime1
        if index == 2:
            return self.regime2
        raise ValueError(f"regime must be 1 or 2, got {index!r}")


class RegimeChoice(NamedTuple):
    index: int
    regime: Regime
    extrapolated: bool


def regime_for(model: OkunModel, year: int) -> RegimeChoice:
    """Regime governing ``year``: the first one strictly before the break."""
    extrapolated = not (model.sample_start <= year <= model.sample_end)
    if model.break_year is None or year < model.break_year:
        return RegimeChoice(1, model.regime1, extrapolated)
    return RegimeChoice(2, model.regime2, extrapolated)


def _invert(value: float, r: Regime) -> float:
    if r.slope == 0.0:
        raise InfeasibleError("cannot invert a regime with zero slope")
    return (value - r.intercept) / r.slope


def predict_du(model: OkunModel, year: int, dlng: float) -> float:
    """Change in unemployment (pp) implied by growth ``dlng`` (percent)."""
    r = regime_for(model, year).regime
    if model.orientation == "direct":
        return r.intercept + r.slope * dlng
    return _invert(dlng, r)


def predict_dlng(model: OkunModel, year: int, du: float) -> float:
    """Growth (percent) implied by a change in unemployment ``du`` (pp)."""
    r = regime_for(model, year).regime
    if model.orientation == "reversed":
        return r.intercept + r.slope * du
    return _invert(du, r)


def predict_response(model: OkunModel, year: int, x: float) -> float:
    """Evaluate the model in its own orientation (no inversion)."""
    r = regime_for(model, year).regime
    return r.intercept + r.slope * x


def threshold_growth(model: OkunModel, regime: int) -> float:
    """Growth rate at which unemployment stays constant."""
    r = model.regime(regime)
    if r.slope == 0.0:
        raise InfeasibleError("threshold undefined for a zero slope")
    if model.orientation == "direct":
        return -r.intercept / r.slope
    return r.intercept


def sensitivity(model: OkunModel, regime: int) -> float:
    """Percentage points of du per one percent of dlng."""
    r = model.regime(regime)
    if r.slope == 0.0:
        raise InfeasibleError("sensitivity undefined for a zero slope")
    if model.orientation == "direct":
        return r.slope
    return 1.0 / r.slope


def to_orientation(model: OkunModel, orientation: str) -> OkunModel:
    """Algebraically re-express ``model``; predictions are unchanged."""
    check_orientation(orientation)
    if orientation == model.orientation:
        return model

    def flip(r: Regime) -> Regime:
        if r.slope == 0.0:
            raise InfeasibleError("cannot invert a regime with zero slope")
        return Regime(1.0 / r.slope, -r.intercept / r.slope)

    return replace(
        model,
        orientation=orientation,
        regime1=flip(model.regime1),
        regime2=flip(model.regime2),
    )


# --------------------------------------------------------------------------
# Presets

_PRESET_NOTE = "built-in preset"

# Sample years are those of the differenced observations (du, dlng).
PRESETS: dict[str, OkunModel] = {
    "us": OkunModel(
        "us", "direct", 1985, Regime(-0.42, 1.07), Regime(-0.62, 1.09), 1958, 2010,
        _PRESET_NOTE,
    ),
    "france": OkunModel(
        "france", "reversed", 1987, Regime(-5.0, 4.6), Regime(-1.5, 1.4), 1961, 2010,
        _PRESET_NOTE,
    ),
    "uk": OkunModel(
        "uk", "reversed", 1987, Regime(-1.5, 2.5), Regime(-2.0, 1.7), 1972, 2010,
        _PRESET_NOTE,
    ),
    "canada": OkunModel(
        "canada", "reversed", 1985, Regime(-2.7, 3.1), Regime(-2.7, 1.2), 1961, 2010,
        _PRESET_NOTE,
    ),
    "australia": OkunModel(
        "australia", "reversed", 1995, Regime(-1.7, 2.4), Regime(-3.0, 1.2), 1968, 2010,
        _PRESET_NOTE,
    ),
    "spain": OkunModel(
        "spain", "reversed", 1987, Regime(-2.0, 5.0), Regime(-0.8, 2.1), 1961, 2010,
        _PRESET_NOTE,
    ),
}


def available_presets(preset_dir: str | Path | None = None) -> dict[str, OkunModel]:
    """Built-in presets plus ``*.json`` models from a user directory.

    The directory defaults to ``$OKUN_PRESET_DIR``. A user file whose stem
    matches a built-in name is an error, never a silent override.
    """
    presets = dict(PRESETS)
    if preset_dir is None:
        preset_dir = os.environ.get(PRESET_DIR_ENV) or None
    if preset_dir is None:
        return presets
    root = Path(preset_dir)
    if not root.is_dir():
        raise DataError(f"{PRESET_DIR_ENV} is not a directory: {root}")
    for path in sorted(root.glob("*.json")):
        name = path.stem.lower()
        if name in presets:
            raise OkunError(f"user preset {path.name!r} collides with preset {name!r}")
        presets[name] = load_model(path)
    return presets


def get_preset(name: str, preset_dir: str | Path | None = None) -> OkunModel:
    presets = available_presets(preset_dir)
    try:
        return presets[name.lower()]
    except KeyError:
        raise UnknownPresetError(
            f"unknown preset {name!r}; choose from {', '.join(sorted(presets))}"
        ) from None


# --------------------------------------------------------------------------
# Serialization


def model_to_dict(model: OkunModel) -> dict[str, Any]:
    return {
        "format": MODEL_FORMAT,
        "country": model.country,
        "orientation": model.orientation,
        "break_year": model.break_year,
        "regime1": {"slope": model.regime1.slope, "intercept": model.regime1.intercept},
        "regime2": {"slope": model.regime2.slope, "intercept": model.regime2.intercept},
        "sample_start": model.sample_start,
        "sample_end": model.sample_end,
        "provenance": model.provenance,
    }


def model_from_dict(doc: dict[str, Any]) -> OkunModel:
    if doc.get("format") != MODEL_FORMAT:
        raise DataError(f"not an {MODEL_FORMAT} document (format={doc.get('format')!r})")
    try:
        return OkunModel(
            country=str(doc["country"]),
            orientation=doc["orientation"],
            break_year=None if doc["break_year"] is None else int(doc["break_year"]),
            regime1=Regime(**doc["regime1"]),
            regime2=Regime(**doc["regime2"]),
            sample_start=int(doc["sample_start"]),
            sample_end=int(doc["sample_end"]),
            provenance=str(doc.get("provenance", "")),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DataError(f"invalid {MODEL_FORMAT} document: {exc}") from None


def dumps_model(model: OkunModel) -> str:
    return json.dumps(model_to_dict(model), indent=2, sort_keys=True) + "\n"


def loads_model(text: str) -> OkunModel:
    """Read a model document, or the ``model`` section of a run report."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataError(f"invalid JSON: {exc}") from None
    if isinstance(doc, dict) and doc.get("format") != MODEL_FORMAT and "model" in doc:
        doc = doc["model"]
    if not isinstance(doc, dict):
        raise DataError(f"not an {MODEL_FORMAT} document")
    return model_from_dict(doc)


def load_model(path: str | Path) -> OkunModel:
    return loads_model(Path(path).read_text(encoding="utf-8"))


def save_model(model: OkunModel, path: str | Path) -> None:
    Path(path).write_text(dumps_model(model), encoding="utf-8")
