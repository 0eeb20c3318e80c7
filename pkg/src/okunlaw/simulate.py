"""Synthetic datasets generated from a known Okun model.

Used as the oracle for recovery tests: fit the simulated levels and compare
with the generating coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import InfeasibleError
from .model import OkunModel, predict_du, regime_for, threshold_growth
from .regress import DEFAULT_MIN_SEGMENT
from .timeseries import AnnualSeries, CountryDataset

U_MIN = 0.5
U_MAX = 99.0
# Auto-chosen starting unemployment puts the path minimum here.
_U_FLOOR_TARGET = 5.0


@dataclass(frozen=True)
class GrowthPath:
    """Growth generator: an alternating boom/bust cycle plus Gaussian jitter.

    Year ``i`` gets ``center + swing * (+1, -1, +1, ...)[i] + jitter * z``.
    With ``center=None`` each regime is centered on its threshold growth
    rate, so unemployment has no drift and stays bounded.
    """

    center: float | None = None
    swing: float = 3.0
    jitter: float = 1.0

    def draw(
        self, model: OkunModel, years: NDArray[np.int64], rng: np.random.Generator
    ) -> NDArray[np.float64]:
        n = years.size
        if self.center is None:
            center = np.array(
                [threshold_growth(model, regime_for(model, int(y)).index) for y in years]
            )
        else:
            center = np.full(n, float(self.center))
        sign = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
        return center + self.swing * sign + self.jitter * rng.standard_normal(n)


@dataclass(frozen=True, eq=False)
class Simulation:
    dataset: CountryDataset
    growth: NDArray[np.float64]
    clipped_years: tuple[int, ...]

    @property
    def clipped(self) -> bool:
        return bool(self.clipped_years)


def simulate(
    model: OkunModel,
    noise_sd: float = 0.0,
    dlng_path: ArrayLike | None = None,
    seed: int = 0,
    *,
    years: tuple[int, int] | None = None,
    growth: GrowthPath = GrowthPath(),
    min_segment: int = DEFAULT_MIN_SEGMENT,
    gdp0: float = 100.0,
    u0: float | None = None,
) -> Simulation:
    """Simulate GDP-per-capita and unemployment levels from ``model``.

    Parameters
    ----------
    model : OkunModel
        Generating model.
    noise_sd : float
        Standard deviation of the Gaussian error added to the model's
        response variable: du (pp) for direct models, dlng (percent) for
        reversed ones. The regressor is left exact so that fitting in the
        model's own orientation is a classical regression.
    dlng_path : array_like, optional
        Noise-free growth per simulated year. Drawn from ``growth`` when
        omitted.
    seed : int
        Seeds both the growth generator and the error draws.
    years : (first, last), optional
        Years of the differenced observations; defaults to the model's
        sample range. Levels start one year earlier.
    u0 : float, optional
        Starting unemployment rate. By default the path is shifted so its
        minimum sits at 5%.

    Returns
    -------
    Simulation
        The dataset, the noise-free growth path and the years (if any)
        where unemployment had to be clipped to [0.5, 99].
    """
    if noise_sd < 0:
        raise ValueError("noise_sd must be non-negative")
    first, last = (model.sample_start, model.sample_end) if years is None else years
    if last < first:
        raise ValueError(f"invalid year range {first}:{last}")
    obs_years = np.arange(first, last + 1)
    n = obs_years.size
    if n < 2 * min_segment:
        raise InfeasibleError(
            f"simulation needs at least {2 * min_segment} years, got {n}"
        )

    path_seq, noise_seq = np.random.SeedSequence(seed).spawn(2)
    if dlng_path is None:
        clean = growth.draw(model, obs_years, np.random.default_rng(path_seq))
    else:
        clean = np.array(dlng_path, dtype=np.float64).reshape(-1)
        if clean.size != n:
            raise ValueError(f"dlng_path has {clean.size} values for {n} years")
    noise = noise_sd * np.random.default_rng(noise_seq).standard_normal(n)

    du = np.array([predict_du(model, int(y), g) for y, g in zip(obs_years, clean)])
    if model.orientation == "direct":
        dlng = clean
        du = du + noise
    else:
        dlng = clean + noise

    steps = np.concatenate([[0.0], np.cumsum(du)])
    start = _U_FLOOR_TARGET - steps.min() if u0 is None else float(u0)
    u = start + steps
    clipped = tuple(
        int(first - 1 + i) for i in np.flatnonzero((u < U_MIN) | (u > U_MAX))
    )
    u = np.clip(u, U_MIN, U_MAX)
    g = gdp0 * np.exp(np.concatenate([[0.0], np.cumsum(dlng)]) / 100.0)

    dataset = CountryDataset(
        model.country, AnnualSeries(first - 1, g), AnnualSeries(first - 1, u)
    )
    clean.flags.writeable = False
    return Simulation(dataset, clean, clipped)
