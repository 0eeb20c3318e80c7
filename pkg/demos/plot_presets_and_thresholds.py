"""
Country presets and threshold growth rates
==========================================

Each preset carries two regimes. The threshold is the growth rate at which
unemployment holds steady; anything faster pushes it down.
"""

from okunlaw import PRESETS, predict_du, regime_for, sensitivity, threshold_growth

for name, model in PRESETS.items():
    before = threshold_growth(model, 1)
    after = threshold_growth(model, 2)
    print(f"{name:10s} break {model.break_year}  threshold {before:5.2f} -> {after:5.2f} %/yr"
          f"  sensitivity {sensitivity(model, 2):+.3f} pp per %")

# Canada in 2010: growth of 2.1% against a 1.2% threshold.
canada = PRESETS["canada"]
print("canada 2010, dlng 2.1 ->", round(predict_du(canada, 2010, 2.1), 3), "pp")

# Years past the sample fall in the last regime and are flagged.
print(regime_for(canada, 2030))
