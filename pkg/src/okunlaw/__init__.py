"""Okun's-law estimation with a single structural break.

Typical use::

    from okunlaw import read_csv, fit_okun, threshold_growth

    fit = fit_okun(read_csv("us.csv"), orientation="direct", break_year="auto")
    fit.model.break_year, fit.combined_r2
    threshold_growth(fit.model, regime=2)
"""

from .diagnostics import (
    DiagnosticsReport,
    DickeyFuller,
    acf,
    acf_band,
    diagnose,
    dickey_fuller,
    durbin_watson,
)
from .errors import DataError, DegenerateError, InfeasibleError, OkunError, UnknownPresetError
from .fitting import OkunFit, fit_okun, model_residuals
from .model import (
    PRESETS,
    OkunModel,
    Regime,
    RegimeChoice,
    dumps_model,
    get_preset,
    load_model,
    loads_model,
    predict_dlng,
    predict_du,
    regime_for,
    save_model,
    sensitivity,
    threshold_growth,
    to_orientation,
)
from .regress import (
    ChowResult,
    LinearFit,
    SegmentedFit,
    break_search,
    chow,
    ols,
    segmented_fit,
)
from .simulate import GrowthPath, Simulation, simulate
from .timeseries import (
    AnnualSeries,
    CountryDataset,
    DerivedPair,
    derive,
    first_diff,
    log_growth,
    ma3,
    parse_csv,
    read_csv,
    smooth_pair,
    to_csv,
)

__all__ = [
    "acf",
    "acf_band",
    "AnnualSeries",
    "break_search",
    "chow",
    "ChowResult",
    "CountryDataset",
    "DataError",
    "DegenerateError",
    "derive",
    "DerivedPair",
    "diagnose",
    "DiagnosticsReport",
    "dickey_fuller",
    "DickeyFuller",
    "dumps_model",
    "durbin_watson",
    "first_diff",
    "fit_okun",
    "get_preset",
    "GrowthPath",
    "InfeasibleError",
    "LinearFit",
    "load_model",
    "loads_model",
    "log_growth",
    "ma3",
    "model_residuals",
    "OkunError",
    "OkunFit",
    "OkunModel",
    "ols",
    "parse_csv",
    "predict_dlng",
    "predict_du",
    "PRESETS",
    "read_csv",
    "Regime",
    "regime_for",
    "RegimeChoice",
    "save_model",
    "segmented_fit",
    "SegmentedFit",
    "sensitivity",
    "simulate",
    "Simulation",
    "smooth_pair",
    "threshold_growth",
    "to_csv",
    "to_orientation",
    "UnknownPresetError",
]

__version__ = "0.1.0"
