"""Tests for OLS, segmented fits, break search and the Chow statistic."""

from __future__ import annotations

import math

import numpy as np
import pytest
import statsmodels.api as sm
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from okunlaw import (
    PRESETS,
    DegenerateError,
    DerivedPair,
    GrowthPath,
    InfeasibleError,
    break_search,
    chow,
    derive,
    ols,
    segmented_fit,
    simulate,
)
from okunlaw.regress import f2_critical_5pct, sup_f_critical_5pct

US = PRESETS["us"]


def two_regime_pair(model, years, dlng):
    """Exact (du, dlng) pair from a direct model, built without the simulator."""
    du = [
        (model.regime1 if y < model.break_year else model.regime2).intercept
        + (model.regime1 if y < model.break_year else model.regime2).slope * g
        for y, g in zip(years, dlng)
    ]
    return DerivedPair(years[0], du, dlng)


@pytest.fixture
def us_exact_pair():
    years = list(range(1958, 2011))
    rng = np.random.default_rng(7)
    dlng = 2.0 + 2.5 * rng.standard_normal(len(years))
    return two_regime_pair(US, years, dlng)


def brute_force_ssr_improvement(x, y, fit, half_width=0.5, steps=41):
    """Smallest SSR on a (slope, intercept) grid around ``fit``, minus fit.ssr."""
    slopes = fit.slope + np.linspace(-half_width, half_width, steps)
    intercepts = fit.intercept + np.linspace(-half_width, half_width, steps)
    b, a = np.meshgrid(slopes, intercepts)
    resid = y[None, None, :] - a[..., None] - b[..., None] * x[None, None, :]
    return float((resid**2).sum(-1).min()) - fit.ssr


class TestOls:
    def test_exact_line(self):
        fit = ols([0, 1, 2, 3], [1, 3, 5, 7])
        assert fit.slope == pytest.approx(2.0, abs=1e-12)
        assert fit.intercept == pytest.approx(1.0, abs=1e-12)
        assert fit.r2 == 1.0
        assert fit.ssr == pytest.approx(0.0, abs=1e-24)

    def test_hand_normal_equations(self):
        # Sxy = 3, Sxx = 2 -> slope 1.5, intercept 4/3 - 1.5 = -1/6
        fit = ols([0, 1, 2], [0, 1, 3])
        assert fit.slope == pytest.approx(1.5, abs=1e-12)
        assert fit.intercept == pytest.approx(-1 / 6, abs=1e-12)

    def test_constant_response(self):
        fit = ols([0, 1, 2, 3], [5, 5, 5, 5])
        assert fit.slope == 0.0
        assert fit.intercept == 5.0
        assert fit.ssr == 0.0
        assert fit.r2 == 1.0

    def test_errors(self):
        with pytest.raises(ValueError, match="length mismatch"):
            ols([1, 2, 3], [1, 2])
        with pytest.raises(InfeasibleError):
            ols([1, 2], [1, 2])
        with pytest.raises(DegenerateError):
            ols([2, 2, 2], [1, 2, 3])

    def test_matches_statsmodels(self):
        rng = np.random.default_rng(3)
        x = rng.normal(2, 2, 40)
        y = 1.0 - 0.5 * x + rng.normal(0, 0.7, 40)
        fit = ols(x, y)
        ref = sm.OLS(y, sm.add_constant(x)).fit()
        np.testing.assert_allclose([fit.intercept, fit.slope], ref.params, rtol=1e-10)
        np.testing.assert_allclose(
            [fit.stderr_intercept, fit.stderr_slope], ref.bse, rtol=1e-10
        )
        assert fit.r2 == pytest.approx(ref.rsquared, rel=1e-10)
        assert fit.ssr == pytest.approx(ref.ssr, rel=1e-10)

    @settings(max_examples=100)
    @given(st.integers(3, 30), st.integers(0, 2**32 - 1))
    def test_normal_equation_invariants(self, n, seed):
        rng = np.random.default_rng(seed)
        x = rng.normal(0, 3, n)
        y = rng.normal(0, 3, n)
        fit = ols(x, y)
        assert abs(fit.residuals.sum()) <= 1e-9 * n
        assert abs(fit.residuals @ x) <= 1e-9 * n * np.abs(x).max()
        assert fit.ssr == pytest.approx(fit.residuals @ fit.residuals, abs=1e-9)
        assert 0.0 <= fit.r2 <= 1.0

    def test_minimizes_ssr_against_grid(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            n = int(rng.integers(3, 13))
            x = rng.normal(0, 2, n)
            y = rng.normal(0, 2, n)
            fit = ols(x, y)
            assert brute_force_ssr_improvement(x, y, fit) > -1e-6

    @settings(max_examples=60)
    @given(
        st.integers(0, 2**32 - 1),
        st.floats(-50, 50).filter(lambda c: abs(c) > 1e-3),
        st.floats(-50, 50),
    )
    def test_equivariance(self, seed, c, shift):
        rng = np.random.default_rng(seed)
        x = rng.normal(0, 2, 15)
        y = rng.normal(0, 2, 15)
        base = ols(x, y)
        scaled = ols(x, c * y)
        assert scaled.slope == pytest.approx(c * base.slope, abs=1e-9 * max(1, abs(c)))
        assert scaled.intercept == pytest.approx(c * base.intercept, abs=1e-9 * max(1, abs(c)))
        shifted = ols(x + shift, y)
        assert shifted.slope == pytest.approx(base.slope, abs=1e-9)
        assert shifted.intercept == pytest.approx(
            base.intercept - base.slope * shift, abs=1e-9 * max(1, abs(shift))
        )


class TestCriticalValues:
    @pytest.mark.parametrize("m", list(range(1, 121)))
    def test_f_table_matches_scipy(self, m):
        assert f2_critical_5pct(m) == pytest.approx(stats.f.ppf(0.95, 2, m), abs=1e-5)

    def test_interpolation_and_tail(self):
        mid = f2_critical_5pct(10.5)
        assert f2_critical_5pct(11) < mid < f2_critical_5pct(10)
        assert f2_critical_5pct(1000) == pytest.approx(stats.f.ppf(0.95, 2, 1000), abs=2e-3)
        with pytest.raises(InfeasibleError):
            f2_critical_5pct(0)

    def test_sup_f_exceeds_pointwise_and_decreases_with_trimming(self):
        values = [sup_f_critical_5pct(t) for t in (0.05, 0.15, 0.3, 0.45)]
        assert values == sorted(values, reverse=True)
        assert min(values) > stats.f.ppf(0.95, 2, 1e6)


class TestSegmentedFit:
    def test_exact_two_regime_recovery(self, us_exact_pair):
        fit = segmented_fit(us_exact_pair, 1985, "direct")
        assert fit.pre.slope == pytest.approx(-0.42, abs=1e-9)
        assert fit.pre.intercept == pytest.approx(1.07, abs=1e-9)
        assert fit.post.slope == pytest.approx(-0.62, abs=1e-9)
        assert fit.post.intercept == pytest.approx(1.09, abs=1e-9)
        assert fit.combined_r2 == 1.0
        assert fit.pre.n == 1985 - 1958 and fit.post.n == 2011 - 1985

    @pytest.mark.parametrize("break_year", [1961, 1975, 1990, 2008])
    def test_single_line_has_no_break(self, break_year):
        x = np.linspace(-3, 6, 53)
        pair = DerivedPair(1958, 1.0 - 0.5 * x, x)
        fit = segmented_fit(pair, break_year, "direct")
        assert fit.pre.slope == pytest.approx(fit.post.slope, abs=1e-9)
        assert fit.chow_f == pytest.approx(0.0, abs=1e-9)

    def test_invariants_with_noise(self):
        rng = np.random.default_rng(5)
        x = rng.normal(2, 2, 40)
        pair = DerivedPair(1970, 1 - 0.4 * x + rng.normal(0, 0.5, 40), x)
        fit = segmented_fit(pair, 1990, "direct")
        assert fit.total_ssr == pytest.approx(fit.pre.ssr + fit.post.ssr, abs=1e-9)
        y = pair.du
        tss = float(((y - y.mean()) ** 2).sum())
        assert fit.combined_r2 == pytest.approx(1 - fit.total_ssr / tss, abs=1e-12)
        assert fit.total_ssr <= fit.pooled.ssr + 1e-12
        assert fit.end_year == 2009

    def test_reversed_orientation_swaps_roles(self):
        rng = np.random.default_rng(2)
        du = rng.normal(0, 1, 30)
        pair = DerivedPair(1980, du, 2.0 - 1.5 * du)
        fit = segmented_fit(pair, 1995, "reversed")
        assert fit.pre.slope == pytest.approx(-1.5, abs=1e-9)
        assert fit.post.intercept == pytest.approx(2.0, abs=1e-9)

    @pytest.mark.parametrize("break_year", [1958, 1959, 1960, 2009, 2010, 2011, 1900])
    def test_short_or_outside_segments(self, us_exact_pair, break_year):
        with pytest.raises(InfeasibleError):
            segmented_fit(us_exact_pair, break_year, "direct")

    def test_bad_orientation(self, us_exact_pair):
        with pytest.raises(ValueError, match="orientation"):
            segmented_fit(us_exact_pair, 1985, "sideways")

    @settings(max_examples=50)
    @given(st.integers(0, 2**32 - 1), st.integers(1961, 1988))
    def test_nesting_and_nonnegative_chow(self, seed, break_year):
        rng = np.random.default_rng(seed)
        x = rng.normal(2, 2, 35)
        pair = DerivedPair(1958, rng.normal(0, 1, 35), x)
        fit = segmented_fit(pair, break_year, "direct")
        assert fit.total_ssr <= fit.pooled.ssr + 1e-9
        assert fit.chow_f >= 0.0


class TestFranceMonteCarlo:
    """Reversed France model, sigma 0.5 on dlng, 1961-2010 (n = 50), 200 seeds."""

    SEEDS = range(200)
    GROWTH = GrowthPath(swing=8.0)
    model = PRESETS["france"]

    def errors(self):
        m = self.model
        truth = np.array(
            [m.regime1.slope, m.regime1.intercept, m.regime2.slope, m.regime2.intercept]
        )
        out, ses = [], []
        for seed in self.SEEDS:
            pair = derive(simulate(m, 0.5, seed=seed, growth=self.GROWTH).dataset)
            fit = segmented_fit(pair, 1987, "reversed")
            est = [fit.pre.slope, fit.pre.intercept, fit.post.slope, fit.post.intercept]
            out.append(np.asarray(est) - truth)
            ses.append([_true_intercept_se(pair.du[:26], 0.5), _true_intercept_se(pair.du[26:], 0.5)])
        return np.array(out), np.array(ses)

    @pytest.mark.xfail(
        strict=True,
        reason="each intercept has sampling sd >= 0.5/sqrt(24) ~ 0.10, so joint "
        "+-0.2 coverage of all four coefficients is capped near 91%",
    )
    def test_all_coefficients_within_0_2_in_95pct(self):
        err, _ = self.errors()
        assert np.mean(np.all(np.abs(err) <= 0.2, axis=1)) >= 0.95

    def test_slopes_within_0_2_in_95pct(self):
        err, _ = self.errors()
        assert np.mean(np.all(np.abs(err[:, [0, 2]]) <= 0.2, axis=1)) >= 0.95

    def test_intercept_errors_match_their_sampling_distribution(self):
        err, ses = self.errors()
        z = err[:, [1, 3]] / ses
        assert np.all(np.abs(z.mean(axis=0)) < 0.2)
        assert np.all((0.85 < z.std(axis=0)) & (z.std(axis=0) < 1.15))


def _true_intercept_se(x, sigma):
    x = np.asarray(x)
    n = x.size
    return sigma * math.sqrt(1 / n + x.mean() ** 2 / ((x - x.mean()) ** 2).sum())


class TestChow:
    def test_formula_against_polyfit(self):
        rng = np.random.default_rng(9)
        x = rng.normal(2, 2, 30)
        y = 1 - 0.4 * x + rng.normal(0, 0.5, 30)
        pair = DerivedPair(1980, y, x)

        def ssr(xs, ys):
            coef = np.polyfit(xs, ys, 1)
            return float(((ys - np.polyval(coef, xs)) ** 2).sum())

        k = 12
        s_pool, s1, s2 = ssr(x, y), ssr(x[:k], y[:k]), ssr(x[k:], y[k:])
        expected = ((s_pool - s1 - s2) / 2) / ((s1 + s2) / (30 - 4))
        result = chow(pair, "direct", 1992)
        assert result.f_stat == pytest.approx(expected, rel=1e-9)
        assert result.df_denom == 26
        assert result.critical_5pct == pytest.approx(stats.f.ppf(0.95, 2, 26), abs=1e-5)

    def test_single_line_zero(self):
        x = np.linspace(0, 5, 20)
        assert chow(DerivedPair(1990, 3 - x, x), "direct", 2000).f_stat == 0.0

    def test_perfect_two_regime_is_infinite(self, us_exact_pair):
        result = chow(us_exact_pair, "direct", 1985)
        assert math.isinf(result.f_stat) and result.significant

    def test_power_at_true_break(self):
        hits = 0
        for seed in range(200):
            pair = derive(simulate(US, 0.5, seed=seed).dataset)
            hits += chow(pair, "direct", 1985).significant
        assert hits / 200 >= 0.95


class TestBreakSearch:
    def test_zero_noise_us(self, us_exact_pair):
        fit = break_search(us_exact_pair, "direct")
        assert fit.break_year == 1985
        assert fit.total_ssr == pytest.approx(0.0, abs=1e-20)
        assert fit.searched

    def test_exhaustive(self):
        rng = np.random.default_rng(4)
        x = rng.normal(2, 3, 45)
        pair = DerivedPair(1960, 1 - 0.5 * x + rng.normal(0, 1, 45), x)
        best = break_search(pair, "direct", min_segment=5)
        for year in range(1965, 1960 + 45 - 5 + 1):
            assert best.total_ssr <= segmented_fit(pair, year, "direct").total_ssr + 1e-9

    def test_tie_goes_to_earliest_year(self):
        x = np.linspace(-2, 4, 24)
        pair = DerivedPair(1990, 0.5 - 0.3 * x, x)
        assert break_search(pair, "direct", min_segment=4).break_year == 1994

    def test_errors(self, us_exact_pair):
        with pytest.raises(ValueError):
            break_search(us_exact_pair, "direct", min_segment=2)
        with pytest.raises(InfeasibleError):
            break_search(us_exact_pair.between(1958, 1972), "direct", min_segment=8)

    def test_white_noise_rarely_reports_a_confident_break(self):
        flagged = 0
        for seed in range(200):
            rng = np.random.default_rng(seed)
            dlng = 2 + 3 * rng.standard_normal(50)
            du = 0.5 * rng.standard_normal(50)
            flagged += break_search(DerivedPair(1961, du, dlng), "direct").break_significant
        assert flagged / 200 <= 0.10

    def test_canada_break_recovered(self):
        canada = PRESETS["canada"]
        hits = 0
        for seed in range(200):
            pair = derive(simulate(canada, 0.5, seed=seed).dataset)
            hits += abs(break_search(pair, "reversed").break_year - 1985) <= 1
        assert hits / 200 >= 0.90
