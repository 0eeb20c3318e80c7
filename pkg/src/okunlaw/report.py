"""Run reports: deterministic JSON documents describing one fit.

Floats are rounded to six significant digits and keys are sorted, so the
same inputs always give byte-identical text. Infinite values are written
as the strings ``"inf"`` / ``"-inf"``.
"""

from __future__ import annotations

import hashlib
import json
import math
from typing import Any, Sequence

import numpy as np

from .diagnostics import DiagnosticsReport
from .errors import DataError
from .fitting import DEGENERATE, OkunFit
from .model import OkunModel, model_from_dict, model_to_dict
from .regress import LinearFit
from .timeseries import CountryDataset

REPORT_FORMAT = "okun_run_report_v1"
LOW_R2 = 0.5


def sig6(x: float) -> float:
    """Round to six significant digits; ``-0.0`` becomes ``0.0``."""
    v = float(f"{float(x):.6g}")
    return 0.0 if v == 0 else v


def fmt6(x: float) -> str:
    """Text form used in CSV tables."""
    v = sig6(x)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.6g}"


def _finalize(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _finalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finalize(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_finalize(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        if math.isnan(obj):
            return None
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return sig6(obj)
    return obj


def dumps_report(doc: dict[str, Any]) -> str:
    return json.dumps(_finalize(doc), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads_report(text: str) -> dict[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataError(f"malformed report: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != REPORT_FORMAT:
        raise DataError(f"not an {REPORT_FORMAT} document")
    return doc


def fingerprint(raw: bytes, dataset: CountryDataset) -> dict[str, Any]:
    return {
        "rows": len(dataset),
        "year_start": dataset.start_year,
        "year_end": dataset.end_year,
        "sha256": hashlib.sha256(raw).hexdigest(),
    }


def _linear(fit: LinearFit, first: int) -> dict[str, Any]:
    return {
        "slope": fit.slope,
        "intercept": fit.intercept,
        "stderr_slope": fit.stderr_slope,
        "stderr_intercept": fit.stderr_intercept,
        "n": fit.n,
        "ssr": fit.ssr,
        "r2": fit.r2,
        "year_start": first,
        "year_end": first + fit.n - 1,
    }


def diagnostics_section(
    report: DiagnosticsReport | None,
    status: str,
    years: Sequence[int],
    residuals: Sequence[float],
) -> dict[str, Any]:
    res = np.asarray(residuals, dtype=np.float64)
    if status == DEGENERATE:
        # Numerically zero residuals carry only rounding noise.
        res = np.zeros_like(res)
    section: dict[str, Any] = {
        "status": status,
        "residuals": {"year": list(years), "value": res},
    }
    if report is not None:
        section.update(
            acf=report.acf,
            acf_band=report.acf_band,
            max_lag=report.max_lag,
            lags_outside_band=report.lags_outside_band,
            dw=report.dw,
            df_stat=report.df_stat,
            df_critical_5pct=report.df_critical_5pct,
            unit_root_rejected=report.unit_root_rejected,
            n=report.n,
        )
    return section


def fit_warnings(fit: OkunFit) -> list[str]:
    out = []
    if fit.combined_r2 < LOW_R2:
        out.append(
            f"low R2 advisory: combined R2 {fmt6(fit.combined_r2)} < {LOW_R2}; "
            "consider MA(3) smoothing"
        )
    if not fit.model.obeys_okun_sign:
        out.append("sign warning: a regime slope is not negative")
    seg = fit.segmented
    if seg is not None and seg.searched and not seg.break_significant:
        out.append(
            f"break not significant: sup-F {fmt6(seg.chow_f)} <= "
            f"5% critical value {fmt6(seg.critical_5pct)}"
        )
    return out


def build_report(
    command: Sequence[str],
    raw: bytes,
    dataset: CountryDataset,
    fit: OkunFit,
    break_spec: str,
    min_segment: int,
    warnings: Sequence[str] = (),
) -> dict[str, Any]:
    """Assemble the RunReport document for one fit."""
    x, y = fit.xy()
    years = fit.pair.years
    fitted = fit.fitted()
    if fit.diagnostics_status == DEGENERATE:
        fitted = y.copy()
    regimes = [1 if fit.model.break_year is None or yr < fit.model.break_year else 2
               for yr in years]
    seg = fit.segmented
    stats: dict[str, Any] = {
        "orientation": fit.orientation,
        "break": break_spec,
        "min_segment": min_segment,
        "smoothed": fit.smoothed,
        "pooled": _linear(fit.pooled, fit.pair.start_year),
        "combined_r2": fit.combined_r2,
        "total_ssr": fit.total_ssr,
    }
    if seg is not None:
        stats.update(
            regime1=_linear(seg.pre, seg.start_year),
            regime2=_linear(seg.post, seg.break_year),
            chow_f=seg.chow_f,
            chow_critical_5pct=seg.critical_5pct,
            break_searched=seg.searched,
            break_significant=seg.break_significant,
        )
    regressor, response = ("dlng", "du") if fit.orientation == "direct" else ("du", "dlng")
    return {
        "format": REPORT_FORMAT,
        "command": list(command),
        "input": fingerprint(raw, dataset),
        "model": model_to_dict(fit.model),
        "fit": stats,
        "diagnostics": diagnostics_section(
            fit.diagnostics, fit.diagnostics_status, years.tolist(), fit.residuals
        ),
        "series": {
            "regressor": regressor,
            "response": response,
            "year": years.tolist(),
            "x": x,
            "y": y,
            "fitted": fitted,
            "regime": regimes,
        },
        "warnings": list(warnings) + fit_warnings(fit),
    }


def report_model(doc: dict[str, Any]) -> OkunModel:
    return model_from_dict(doc["model"])


def report_series(doc: dict[str, Any]) -> dict[str, Any]:
    """Validated ``series`` section of a report."""
    try:
        s = doc["series"]
        n = len(s["year"])
        for key in ("x", "y", "fitted", "regime"):
            if len(s[key]) != n:
                raise DataError(f"malformed report: series {key!r} has wrong length")
        return s
    except (KeyError, TypeError):
        raise DataError("malformed report: missing series section") from None
