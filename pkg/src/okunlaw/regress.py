"""Least squares, two-regime fits and the Chow break statistic.

All fits are plain OLS of one response on one regressor plus a constant.
A segmented fit estimates each regime independently, so point estimates
match a fully interacted dummy regression; standard errors are per regime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import DegenerateError, InfeasibleError
from .timeseries import DerivedPair

Orientation = Literal["direct", "reversed"]
ORIENTATIONS: tuple[str, ...] = ("direct", "reversed")

DEFAULT_MIN_SEGMENT = 8
MIN_SEGMENT_FLOOR = 3

# Relative size below which a sum of squares counts as exactly zero.
_ZERO_SSR = 1e-20
# Candidate SSRs closer than this (relative to total variation) are ties.
_TIE_SSR = 1e-12

# F(2, m) upper 5% points for m = 1..120.
_F2_CRITICAL_5PCT = (
    199.500000, 19.000000, 9.552094, 6.944272, 5.786135, 5.143253, 4.737414,
    4.458970, 4.256495, 4.102821, 3.982298, 3.885294, 3.805565, 3.738892,
    3.682320, 3.633723, 3.591531, 3.554557, 3.521893, 3.492828, 3.466800,
    3.443357, 3.422132, 3.402826, 3.385190, 3.369016, 3.354131, 3.340386,
    3.327654, 3.315830, 3.304817, 3.294537, 3.284918, 3.275898, 3.267424,
    3.259446, 3.251924, 3.244818, 3.238096, 3.231727, 3.225684, 3.219942,
    3.214480, 3.209278, 3.204317, 3.199582, 3.195056, 3.190727, 3.186582,
    3.182610, 3.178799, 3.175141, 3.171626, 3.168246, 3.164993, 3.161861,
    3.158843, 3.155932, 3.153123, 3.150411, 3.147791, 3.145258, 3.142809,
    3.140438, 3.138142, 3.135918, 3.133762, 3.131672, 3.129644, 3.127676,
    3.125764, 3.123907, 3.122103, 3.120349, 3.118642, 3.116982, 3.115366,
    3.113792, 3.112260, 3.110766, 3.109311, 3.107891, 3.106507, 3.105157,
    3.103839, 3.102552, 3.101296, 3.100069, 3.098870, 3.097698, 3.096553,
    3.095433, 3.094337, 3.093266, 3.092217, 3.091191, 3.090187, 3.089203,
    3.088240, 3.087296, 3.086371, 3.085465, 3.084577, 3.083706, 3.082852,
    3.082015, 3.081193, 3.080387, 3.079596, 3.078819, 3.078057, 3.077309,
    3.076574, 3.075853, 3.075144, 3.074447, 3.073763, 3.073090, 3.072429,
    3.071779
)
_F2_CRITICAL_5PCT_LIMIT = -math.log(0.05)  # chi2(2)/2 quantile, m -> infinity

# Asymptotic 5% critical values of sup-F over a searched break date with two
# breaking coefficients, keyed by the trimming fraction on each side.
_SUP_F_CRITICAL_5PCT = (
    (0.05, 6.36),
    (0.10, 6.04),
    (0.15, 5.81),
    (0.20, 5.60),
    (0.25, 5.38),
    (0.30, 5.14),
    (0.35, 4.86),
    (0.40, 4.54),
    (0.45, 4.10),
)


def f2_critical_5pct(df_denom: float) -> float:
    """Upper 5% point of F(2, df_denom) from the embedded table.

    Integer degrees of freedom up to 120 are exact table entries; anything
    in between is interpolated linearly, and beyond 120 the table is
    interpolated in ``1/m`` toward the chi-square limit.
    """
    if df_denom < 1:
        raise InfeasibleError("Chow test needs at least 1 denominator degree of freedom")
    if df_denom <= 120:
        lo = int(math.floor(df_denom))
        frac = df_denom - lo
        if frac == 0:
            return _F2_CRITICAL_5PCT[lo - 1]
        a, b = _F2_CRITICAL_5PCT[lo - 1], _F2_CRITICAL_5PCT[lo]
        return a + frac * (b - a)
    w = 120.0 / df_denom
    return _F2_CRITICAL_5PCT_LIMIT + w * (_F2_CRITICAL_5PCT[-1] - _F2_CRITICAL_5PCT_LIMIT)


def sup_f_critical_5pct(trim: float) -> float:
    """5% critical value for the Chow F at a searched (SSR-minimizing) break.

    Uses the tabulated trimming fraction nearest below ``trim``; a smaller
    trimming fraction means a wider search and a larger critical value.
    """
    chosen = _SUP_F_CRITICAL_5PCT[0][1]
    for frac, value in _SUP_F_CRITICAL_5PCT:
        if frac <= trim + 1e-12:
            chosen = value
    return chosen


@dataclass(frozen=True, eq=False)
class LinearFit:
    """Result of :func:`ols`."""

    slope: float
    intercept: float
    n: int
    ssr: float
    r2: float
    stderr_slope: float
    stderr_intercept: float
    residuals: NDArray[np.float64]

    def predict(self, x: ArrayLike) -> NDArray[np.float64]:
        return self.intercept + self.slope * np.asarray(x, dtype=np.float64)


def ols(x: ArrayLike, y: ArrayLike) -> LinearFit:
    """Simple linear regression of ``y`` on ``x`` with an intercept.

    Parameters
    ----------
    x, y : array_like
        Regressor and response, equal length ``n >= 3``.

    Returns
    -------
    LinearFit
        Centered-moment estimates. ``r2`` is 1 for a perfect fit of a
        constant response. Standard errors use ``s^2 = ssr / (n - 2)``.
    """
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    if x.size != y.size:
        raise ValueError(f"length mismatch: x has {x.size}, y has {y.size}")
    n = x.size
    if n < 3:
        raise InfeasibleError(f"ols needs at least 3 observations, got {n}")
    xm = x.mean()
    ym = y.mean()
    dx = x - xm
    dy = y - ym
    sxx = float(dx @ dx)
    if sxx <= 0.0 or sxx <= 1e-24 * n * max(1.0, xm * xm):
        raise DegenerateError("regressor has zero variance")
    syy = float(dy @ dy)
    slope = float(dx @ dy) / sxx
    intercept = float(ym - slope * xm)
    residuals = y - (intercept + slope * x)
    ssr = float(residuals @ residuals)
    r2 = _r_squared(ssr, syy)
    s2 = ssr / (n - 2)
    residuals.flags.writeable = False
    return LinearFit(
        slope=slope,
        intercept=intercept,
        n=n,
        ssr=ssr,
        r2=r2,
        stderr_slope=math.sqrt(s2 / sxx),
        stderr_intercept=math.sqrt(s2 * (1.0 / n + xm * xm / sxx)),
        residuals=residuals,
    )


def _r_squared(ssr: float, syy: float) -> float:
    if syy <= 0.0 or ssr <= _ZERO_SSR * syy:
        return 1.0
    return min(1.0, max(0.0, 1.0 - ssr / syy))


def _is_zero_ssr(ssr: float, scale: float) -> bool:
    return scale <= 0.0 or ssr <= _ZERO_SSR * scale


def check_orientation(orientation: str) -> str:
    if orientation not in ORIENTATIONS:
        raise ValueError(
            f"orientation must be 'direct' or 'reversed', got {orientation!r}"
        )
    return orientation


def regressor_response(
    pair: DerivedPair, orientation: str
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """``(x, y)``: direct regresses du on dlng, reversed dlng on du."""
    if check_orientation(orientation) == "direct":
        return pair.dlng, pair.du
    return pair.du, pair.dlng


class ChowResult(NamedTuple):
    f_stat: float
    critical_5pct: float
    df_denom: int

    @property
    def significant(self) -> bool:
        return self.f_stat > self.critical_5pct


@dataclass(frozen=True)
class SegmentedFit:
    """Two independent regime fits split at ``break_year``.

    ``break_year`` is the first year of the second regime. ``chow_f`` is
    ``math.inf`` when both regimes fit perfectly but a single line does
    not. ``critical_5pct`` is the pointwise F(2, n-4) value for a break
    fixed in advance and the sup-F value for a searched break.
    """

    break_year: int
    orientation: str
    start_year: int
    pre: LinearFit
    post: LinearFit
    pooled: LinearFit
    combined_r2: float
    total_ssr: float
    chow_f: float
    critical_5pct: float
    searched: bool = False

    @property
    def end_year(self) -> int:
        return self.start_year + self.pre.n + self.post.n - 1

    @property
    def n(self) -> int:
        return self.pre.n + self.post.n

    @property
    def break_significant(self) -> bool:
        return self.chow_f > self.critical_5pct

    @property
    def residuals(self) -> NDArray[np.float64]:
        return np.concatenate([self.pre.residuals, self.post.residuals])


def _split(pair: DerivedPair, break_year: int, min_segment: int) -> int:
    k = int(break_year) - pair.start_year
    if k <= 0 or k >= len(pair):
        raise InfeasibleError(
            f"break year {break_year} outside sample "
            f"{pair.start_year + 1}..{pair.end_year}"
        )
    if k < min_segment or len(pair) - k < min_segment:
        raise InfeasibleError(
            f"break year {break_year} leaves a segment shorter than "
            f"{min_segment} observations"
        )
    return k


def _chow_f(pooled_ssr: float, total_ssr: float, n: int, scale: float) -> float:
    if _is_zero_ssr(total_ssr, scale):
        return 0.0 if _is_zero_ssr(pooled_ssr, scale) else math.inf
    numerator = max(pooled_ssr - total_ssr, 0.0) / 2.0
    return numerator / (total_ssr / (n - 4))


def _segmented(
    x: NDArray[np.float64], y: NDArray[np.float64], k: int
) -> tuple[LinearFit, LinearFit, float]:
    pre = ols(x[:k], y[:k])
    post = ols(x[k:], y[k:])
    return pre, post, pre.ssr + post.ssr


def _package(
    pair: DerivedPair,
    orientation: str,
    k: int,
    pre: LinearFit,
    post: LinearFit,
    pooled: LinearFit,
    syy: float,
    critical: float,
    searched: bool,
) -> SegmentedFit:
    n = len(pair)
    total = pre.ssr + post.ssr
    return SegmentedFit(
        break_year=pair.start_year + k,
        orientation=orientation,
        start_year=pair.start_year,
        pre=pre,
        post=post,
        pooled=pooled,
        combined_r2=_r_squared(total, syy),
        total_ssr=total,
        chow_f=_chow_f(pooled.ssr, total, n, syy),
        critical_5pct=critical,
        searched=searched,
    )


def _pooled(
    pair: DerivedPair, orientation: str
) -> tuple[NDArray[np.float64], NDArray[np.float64], LinearFit, float]:
    x, y = regressor_response(pair, orientation)
    dy = y - y.mean()
    return x, y, ols(x, y), float(dy @ dy)


def segmented_fit(
    pair: DerivedPair, break_year: int, orientation: str = "direct"
) -> SegmentedFit:
    """Fit each regime separately with the break fixed at ``break_year``."""
    x, y, pooled, syy = _pooled(pair, orientation)
    k = _split(pair, break_year, MIN_SEGMENT_FLOOR)
    pre, post, _ = _segmented(x, y, k)
    critical = f2_critical_5pct(len(pair) - 4)
    return _package(pair, orientation, k, pre, post, pooled, syy, critical, False)


def chow(pair: DerivedPair, orientation: str, break_year: int) -> ChowResult:
    """Chow F for a break fixed at ``break_year``.

    ``F = [(SSR_pooled - SSR_pre - SSR_post) / 2] / [(SSR_pre + SSR_post) / (n - 4)]``
    against the 5% point of F(2, n - 4). A perfect two-regime fit returns
    ``math.inf``.
    """
    fit = segmented_fit(pair, break_year, orientation)
    return ChowResult(fit.chow_f, fit.critical_5pct, len(pair) - 4)


def break_search(
    pair: DerivedPair,
    orientation: str = "direct",
    min_segment: int = DEFAULT_MIN_SEGMENT,
) -> SegmentedFit:
    """Exhaustive search for the break year minimizing total SSR.

    Every year leaving at least ``min_segment`` observations on each side
    is tried; ties (to rounding) go to the earliest year. The returned fit is flagged
    ``searched`` and judged against the sup-F critical value.
    """
    if min_segment < MIN_SEGMENT_FLOOR:
        raise ValueError(f"min_segment must be >= {MIN_SEGMENT_FLOOR}")
    n = len(pair)
    if n < 2 * min_segment:
        raise InfeasibleError(
            f"break search needs at least {2 * min_segment} observations, got {n}"
        )
    x, y, pooled, syy = _pooled(pair, orientation)
    tie = _TIE_SSR * syy
    best = None
    for k in range(min_segment, n - min_segment + 1):
        try:
            pre, post, total = _segmented(x, y, k)
        except DegenerateError:
            continue
        if best is None or total < best[3] - tie:
            best = (k, pre, post, total)
    if best is None:
        raise DegenerateError("no admissible break year has a varying regressor")
    k, pre, post, _ = best
    critical = sup_f_critical_5pct(min_segment / n)
    return _package(pair, orientation, k, pre, post, pooled, syy, critical, True)
