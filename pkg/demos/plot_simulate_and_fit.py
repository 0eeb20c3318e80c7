"""
Simulate a country and estimate its break
=========================================

Generate levels from the US preset, add noise to du, then let the break
search find the regime change again.
"""

import numpy as np

from okunlaw import PRESETS, GrowthPath, fit_okun, simulate

us = PRESETS["us"]

# A wide boom/bust cycle makes the two slopes easy to tell apart.
sim = simulate(us, noise_sd=0.5, seed=1, growth=GrowthPath(swing=7.0, jitter=1.5))
print(sim.dataset.unemployment.values[:5].round(2), "... clipped:", sim.clipped)

fit = fit_okun(sim.dataset, orientation="direct", break_year="auto")
m = fit.model
print(f"break {m.break_year}; regime1 {m.regime1.slope:+.3f} / {m.regime1.intercept:.3f};"
      f" regime2 {m.regime2.slope:+.3f} / {m.regime2.intercept:.3f}")
print(f"combined R2 {fit.combined_r2:.3f}; sup-F {fit.segmented.chow_f:.1f}"
      f" vs 5% critical {fit.segmented.critical_5pct:.2f}")

# Forcing a single line costs explanatory power.
single = fit_okun(sim.dataset, break_year=None)
print(f"single-line R2 {single.combined_r2:.3f}")
print("residual sd", np.std(fit.residuals, ddof=4).round(3))
