"""End-to-end estimation: levels -> (du, dlng) -> regimes -> diagnostics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Union

import numpy as np
from numpy.typing import NDArray

from .diagnostics import DiagnosticsReport, diagnose
from .errors import InfeasibleError
from .model import OkunModel, Regime, regime_for
from .regress import (
    DEFAULT_MIN_SEGMENT,
    LinearFit,
    SegmentedFit,
    _is_zero_ssr,
    break_search,
    ols,
    regressor_response,
    segmented_fit,
)
from .timeseries import CountryDataset, DerivedPair, derive, smooth_pair

BreakSpec = Union[Literal["auto"], int, None]

DEGENERATE = "degenerate: zero variance"


@dataclass(frozen=True, eq=False)
class OkunFit:
    """Everything produced by :func:`fit_okun`.

    ``segmented`` is ``None`` for a single-regime fit. ``diagnostics`` is
    ``None`` whenever ``diagnostics_status`` is not ``"ok"``.
    """

    model: OkunModel
    pair: DerivedPair
    pooled: LinearFit
    segmented: SegmentedFit | None
    diagnostics: DiagnosticsReport | None
    diagnostics_status: str
    smoothed: bool = False

    @property
    def orientation(self) -> str:
        return self.model.orientation

    @property
    def combined_r2(self) -> float:
        return self.pooled.r2 if self.segmented is None else self.segmented.combined_r2

    @property
    def total_ssr(self) -> float:
        return self.pooled.ssr if self.segmented is None else self.segmented.total_ssr

    @property
    def residuals(self) -> NDArray[np.float64]:
        if self.segmented is None:
            return self.pooled.residuals
        return self.segmented.residuals

    def xy(self) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        return regressor_response(self.pair, self.orientation)

    def fitted(self) -> NDArray[np.float64]:
        x, y = self.xy()
        return y - self.residuals


def residual_diagnostics(
    residuals: NDArray[np.float64], scale: float, max_lag: int | None = None
) -> tuple[DiagnosticsReport | None, str]:
    """Diagnose residuals, or explain why that is not possible.

    ``scale`` is the total sum of squares of the response; residual sums of
    squares negligible against it count as a perfect fit.
    """
    ssr = float(residuals @ residuals)
    if _is_zero_ssr(ssr, scale):
        return None, DEGENERATE
    try:
        return diagnose(residuals, max_lag), "ok"
    except InfeasibleError as exc:
        return None, f"unavailable: {exc}"


def fit_okun(
    dataset: CountryDataset,
    orientation: str = "direct",
    break_year: BreakSpec = "auto",
    min_segment: int = DEFAULT_MIN_SEGMENT,
    smooth: bool = False,
    max_lag: int | None = None,
) -> OkunFit:
    """Estimate an Okun model from levels.

    Parameters
    ----------
    dataset : CountryDataset
        GDP per capita and unemployment levels.
    orientation : {"direct", "reversed"}
        ``direct`` regresses du on dlng; ``reversed`` regresses dlng on du.
    break_year : "auto", int or None
        ``"auto"`` searches every admissible year, an integer fixes the
        break (first year of the second regime), ``None`` fits one line.
    min_segment : int
        Minimum observations per regime for the automatic search.
    smooth : bool
        Apply MA(3) to both du and dlng before fitting.
    """
    if break_year == "auto" and len(dataset) < 2 * min_segment + 1:
        raise InfeasibleError(
            f"automatic break search needs at least {2 * min_segment + 1} years "
            f"of levels, got {len(dataset)}"
        )
    pair = derive(dataset)
    if smooth:
        pair = smooth_pair(pair)
    x, y = regressor_response(pair, orientation)
    pooled = ols(x, y)

    segmented: SegmentedFit | None
    if break_year is None:
        segmented = None
        r1 = r2 = Regime(pooled.slope, pooled.intercept)
        model_break = None
    else:
        if break_year == "auto":
            segmented = break_search(pair, orientation, min_segment)
        else:
            segmented = segmented_fit(pair, int(break_year), orientation)
        r1 = Regime(segmented.pre.slope, segmented.pre.intercept)
        r2 = Regime(segmented.post.slope, segmented.post.intercept)
        model_break = segmented.break_year

    how = {"auto": "searched", None: "none"}.get(break_year, "fixed")
    model = OkunModel(
        country=dataset.country,
        orientation=orientation,
        break_year=model_break,
        regime1=r1,
        regime2=r2,
        sample_start=pair.start_year,
        sample_end=pair.end_year,
        provenance=f"fitted by OLS; break {how}; smoothing {'ma3' if smooth else 'none'}",
    )
    resid = pooled.residuals if segmented is None else segmented.residuals
    dy = y - y.mean()
    diagnostics, status = residual_diagnostics(resid, float(dy @ dy), max_lag)
    return OkunFit(model, pair, pooled, segmented, diagnostics, status, smooth)


def model_residuals(model: OkunModel, pair: DerivedPair) -> NDArray[np.float64]:
    """Residuals of ``pair`` under a given model, in the model's orientation."""
    x, y = regressor_response(pair, model.orientation)
    pred = np.empty_like(y)
    for i, year in enumerate(pair.years):
        r = regime_for(model, int(year)).regime
        pred[i] = r.intercept + r.slope * x[i]
    return y - pred
