"""Residual checks: autocorrelation, Durbin-Watson and Dickey-Fuller."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import DegenerateError, InfeasibleError
from .regress import ols

# 5% critical values of the Dickey-Fuller t statistic (constant, no trend),
# indexed by sample size.
DF_CRITICAL_5PCT = (
    (25, -3.00),
    (50, -2.93),
    (100, -2.89),
    (250, -2.88),
)
DF_CRITICAL_5PCT_LARGE = -2.86

DF_MIN_LENGTH = 10


def _as_series(e: ArrayLike) -> NDArray[np.float64]:
    arr = np.asarray(e, dtype=np.float64).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise ValueError("series must be finite")
    return arr


def default_max_lag(n: int) -> int:
    """``min(10, n // 4)``, but never below 1 or above ``n - 3``."""
    return max(1, min(10, n // 4, n - 3))


def acf(residuals: ArrayLike, max_lag: int) -> NDArray[np.float64]:
    """Sample autocorrelations ``r_1 .. r_max_lag``.

    Every lag uses the full-sample mean and the full-sample sum of squares
    in the denominator, so ``|r_k| <= 1``.
    """
    e = _as_series(residuals)
    n = e.size
    if max_lag < 1:
        raise ValueError("max_lag must be >= 1")
    if n < max_lag + 3:
        raise InfeasibleError(f"acf up to lag {max_lag} needs {max_lag + 3} points, got {n}")
    d = e - e.mean()
    denom = float(d @ d)
    if denom <= 0.0:
        raise DegenerateError("zero variance")
    out = np.array([float(d[k:] @ d[:-k]) / denom for k in range(1, max_lag + 1)])
    return np.clip(out, -1.0, 1.0)


def acf_band(n: int) -> float:
    """Half-width of the 95% band for white-noise autocorrelations."""
    return 1.96 / math.sqrt(n)


def durbin_watson(residuals: ArrayLike) -> float:
    e = _as_series(residuals)
    if e.size < 3:
        raise InfeasibleError("durbin_watson needs at least 3 residuals")
    ss = float(e @ e)
    if ss <= 0.0:
        raise DegenerateError("zero sum of squares")
    diff = np.diff(e)
    return min(4.0, float(diff @ diff) / ss)


def df_critical_5pct(n: int) -> float:
    """Step lookup: the row for the largest tabulated size not above ``n``.

    Sizes below 25 use the first row; sizes above 250 use the large-sample
    value.
    """
    if n > DF_CRITICAL_5PCT[-1][0]:
        return DF_CRITICAL_5PCT_LARGE
    chosen = DF_CRITICAL_5PCT[0][1]
    for size, value in DF_CRITICAL_5PCT:
        if n >= size:
            chosen = value
    return chosen


class DickeyFuller(NamedTuple):
    stat: float
    critical_5pct: float
    rejected: bool


def dickey_fuller(series: ArrayLike) -> DickeyFuller:
    """Non-augmented Dickey-Fuller test with a constant.

    Regresses ``e[t] - e[t-1]`` on a constant and ``e[t-1]``; the statistic
    is the t ratio of the lagged level. ``rejected`` means the unit root
    null is rejected at 5%, i.e. the series looks stationary.
    """
    e = _as_series(series)
    n = e.size
    if n < DF_MIN_LENGTH:
        raise InfeasibleError(f"dickey_fuller needs at least {DF_MIN_LENGTH} points, got {n}")
    if float(np.ptp(e)) == 0.0:
        raise DegenerateError("zero variance")
    fit = ols(e[:-1], np.diff(e))
    if fit.stderr_slope == 0.0:
        raise DegenerateError("zero residual variance in the test regression")
    stat = fit.slope / fit.stderr_slope
    critical = df_critical_5pct(n)
    return DickeyFuller(stat, critical, stat < critical)


@dataclass(frozen=True, eq=False)
class DiagnosticsReport:
    acf: NDArray[np.float64]
    acf_band: float
    dw: float
    df_stat: float
    df_critical_5pct: float
    unit_root_rejected: bool
    n: int

    @property
    def max_lag(self) -> int:
        return self.acf.size

    @property
    def lags_outside_band(self) -> list[int]:
        return [k + 1 for k, r in enumerate(self.acf) if abs(r) > self.acf_band]


def diagnose(residuals: ArrayLike, max_lag: int | None = None) -> DiagnosticsReport:
    """Run the three residual checks and bundle the results."""
    e = _as_series(residuals)
    n = e.size
    lag = default_max_lag(n) if max_lag is None else max_lag
    r = acf(e, lag)
    test = dickey_fuller(e)
    return DiagnosticsReport(
        acf=r,
        acf_band=acf_band(n),
        dw=durbin_watson(e),
        df_stat=test.stat,
        df_critical_5pct=test.critical_5pct,
        unit_root_rejected=test.rejected,
        n=n,
    )
