"""
Residual diagnostics and smoothing
==================================

Check a fit's residuals for autocorrelation and a unit root, then compare
raw and MA(3)-smoothed fits and write an SVG scatter.
"""

import json
import tempfile
from pathlib import Path

from okunlaw import PRESETS, GrowthPath, fit_okun, simulate, to_csv
from okunlaw.cli import main

france = PRESETS["france"]
ds = simulate(france, noise_sd=1.5, seed=4, growth=GrowthPath(swing=0.0, jitter=3.0)).dataset

raw = fit_okun(ds, "reversed", 1987)
rep = raw.diagnostics
print("acf:", rep.acf.round(2))
print(f"band +-{rep.acf_band:.3f}; outside at lags {rep.lags_outside_band}")
print(f"DW {rep.dw:.2f}; DF {rep.df_stat:.2f} vs {rep.df_critical_5pct}:"
      f" unit root {'rejected' if rep.unit_root_rejected else 'kept'}")

smooth = fit_okun(ds, "reversed", 1987, smooth=True)
print(f"R2 raw {raw.combined_r2:.3f}, smoothed {smooth.combined_r2:.3f}")

# The same pipeline from the command line, ending in a figure.
work = Path(tempfile.mkdtemp())
(work / "france.csv").write_text(to_csv(ds))
main(["fit", "--input", str(work / "france.csv"), "--orientation", "reversed",
      "--break", "1987", "--output", str(work / "report.json"), "--quiet"])
main(["plot", "--report", str(work / "report.json"), "--output", str(work / "france.svg")])
print("warnings:", json.loads((work / "report.json").read_text())["warnings"])
print("figure written to", work / "france.svg")
