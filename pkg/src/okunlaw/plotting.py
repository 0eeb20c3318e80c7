"""Plot output from run reports: paired CSV series and standalone SVG."""

from __future__ import annotations

from typing import Any
from xml.sax.saxutils import escape

import numpy as np

from .report import fmt6, report_model, report_series
from .timeseries import AnnualSeries, ma3

WIDTH, HEIGHT = 640, 480
MARGIN = 60
REGIME_COLORS = {1: "#1f77b4", 2: "#d62728"}


def observed_vs_predicted(doc: dict[str, Any], smooth: bool = False):
    """``(years, observed, predicted)`` of the report's response variable."""
    s = report_series(doc)
    years = np.asarray(s["year"], dtype=int)
    obs = np.asarray(s["y"], dtype=np.float64)
    pred = np.asarray(s["fitted"], dtype=np.float64)
    if smooth:
        start = int(years[0])
        obs = ma3(AnnualSeries(start, obs)).values
        pred = ma3(AnnualSeries(start, pred)).values
        years = years[1:-1]
    return years, obs, pred


def series_csv(doc: dict[str, Any], smooth: bool = False) -> str:
    years, obs, pred = observed_vs_predicted(doc, smooth)
    response = report_series(doc)["response"]
    lines = [f"year,observed_{response},predicted_{response}"]
    lines += [f"{y},{fmt6(o)},{fmt6(p)}" for y, o, p in zip(years, obs, pred)]
    return "\n".join(lines) + "\n"


def _scale(lo: float, hi: float, a: float, b: float):
    if hi == lo:
        lo, hi = lo - 1.0, hi + 1.0
    pad = 0.05 * (hi - lo)
    lo, hi = lo - pad, hi + pad
    return lambda v: a + (v - lo) * (b - a) / (hi - lo)


def scatter_svg(doc: dict[str, Any]) -> str:
    """Scatter of response against regressor with one fitted line per regime."""
    s = report_series(doc)
    model = report_model(doc)
    x = np.asarray(s["x"], dtype=np.float64)
    y = np.asarray(s["y"], dtype=np.float64)
    regime = np.asarray(s["regime"], dtype=int)
    sx = _scale(float(x.min()), float(x.max()), MARGIN, WIDTH - MARGIN)
    sy = _scale(float(y.min()), float(y.max()), HEIGHT - MARGIN, MARGIN)

    title = f"{model.country or 'model'}: {s['response']} against {s['regressor']}"
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f"<title>{escape(title)}</title>",
        '<rect x="0" y="0" width="100%" height="100%" fill="white"/>',
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" '
        f'y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{HEIGHT - MARGIN}" '
        'stroke="black"/>',
        f'<text x="{WIDTH / 2:.0f}" y="{HEIGHT - 15}" text-anchor="middle">'
        f"{escape(s['regressor'])}</text>",
        f'<text x="15" y="{HEIGHT / 2:.0f}" text-anchor="middle" '
        f'transform="rotate(-90 15 {HEIGHT / 2:.0f})">{escape(s["response"])}</text>',
        f'<text x="{WIDTH / 2:.0f}" y="30" text-anchor="middle">{escape(title)}</text>',
    ]
    for xi, yi, ri in zip(x, y, regime):
        out.append(
            f'<circle cx="{sx(xi):.2f}" cy="{sy(yi):.2f}" r="3" '
            f'fill="{REGIME_COLORS.get(int(ri), "gray")}"/>'
        )
    for idx in sorted(set(regime.tolist())):
        r = model.regime(idx)
        xs = x[regime == idx]
        ends = (float(xs.min()), float(xs.max()))
        pts = " ".join(f"{sx(v):.2f},{sy(r.intercept + r.slope * v):.2f}" for v in ends)
        label = f"regime {idx}: {s['response']} = {fmt6(r.slope)} {s['regressor']} + {fmt6(r.intercept)}"
        out.append(
            f'<polyline points="{pts}" fill="none" stroke-width="2" '
            f'stroke="{REGIME_COLORS.get(idx, "gray")}"><title>{escape(label)}</title></polyline>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
