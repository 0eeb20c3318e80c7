"""Annual series, CSV ingestion and the transforms behind du and dlnG.

Units used throughout the package:

* unemployment levels in percent of the labour force,
* ``du`` in percentage points per year,
* ``dlng`` (log growth of real GDP per capita) in percent per year.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import DataError, InfeasibleError

CSV_HEADER = ("year", "gdp_pc", "unemployment")


def _frozen_array(values: ArrayLike) -> NDArray[np.float64]:
    arr = np.array(values, dtype=np.float64).reshape(-1)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class AnnualSeries:
    """Values observed over consecutive calendar years.

    Observation ``i`` belongs to year ``start_year + i``.
    """

    start_year: int
    values: NDArray[np.float64]

    def __post_init__(self) -> None:
        object.__setattr__(self, "start_year", int(self.start_year))
        arr = _frozen_array(self.values)
        if arr.size == 0:
            raise ValueError("AnnualSeries needs at least one value")
        if not np.all(np.isfinite(arr)):
            raise ValueError("AnnualSeries values must be finite")
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return self.values.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AnnualSeries):
            return NotImplemented
        return self.start_year == other.start_year and np.array_equal(
            self.values, other.values
        )

    @property
    def end_year(self) -> int:
        return self.start_year + len(self) - 1

    @property
    def years(self) -> NDArray[np.int64]:
        return np.arange(self.start_year, self.end_year + 1)

    def between(self, first: int, last: int) -> AnnualSeries:
        """Restrict to the inclusive year range ``[first, last]``."""
        lo = max(first, self.start_year)
        hi = min(last, self.end_year)
        if lo > hi:
            raise InfeasibleError(f"no observations between {first} and {last}")
        i = lo - self.start_year
        return AnnualSeries(lo, self.values[i : i + hi - lo + 1])


@dataclass(frozen=True)
class CountryDataset:
    """Real GDP per capita and unemployment rate over the same years."""

    country: str
    gdp_pc: AnnualSeries
    unemployment: AnnualSeries

    def __post_init__(self) -> None:
        if (
            self.gdp_pc.start_year != self.unemployment.start_year
            or len(self.gdp_pc) != len(self.unemployment)
        ):
            raise ValueError("gdp_pc and unemployment must cover the same years")
        if np.any(self.gdp_pc.values <= 0):
            raise ValueError("gdp_pc must be positive")
        u = self.unemployment.values
        if np.any((u < 0) | (u >= 100)):
            raise ValueError("unemployment must lie in [0, 100)")

    def __len__(self) -> int:
        return len(self.gdp_pc)

    @property
    def start_year(self) -> int:
        return self.gdp_pc.start_year

    @property
    def end_year(self) -> int:
        return self.gdp_pc.end_year

    @property
    def years(self) -> NDArray[np.int64]:
        return self.gdp_pc.years

    def between(self, first: int, last: int) -> CountryDataset:
        return CountryDataset(
            self.country,
            self.gdp_pc.between(first, last),
            self.unemployment.between(first, last),
        )


@dataclass(frozen=True, eq=False)
class DerivedPair:
    """Aligned ``du`` and ``dlng`` observations.

    ``du[i]`` and ``dlng[i]`` both describe year ``start_year + i``: the
    change from the previous year to that year.
    """

    start_year: int
    du: NDArray[np.float64]
    dlng: NDArray[np.float64]

    def __post_init__(self) -> None:
        object.__setattr__(self, "start_year", int(self.start_year))
        du = _frozen_array(self.du)
        dlng = _frozen_array(self.dlng)
        if du.size != dlng.size:
            raise ValueError("du and dlng must have equal length")
        if du.size == 0:
            raise ValueError("DerivedPair needs at least one observation")
        object.__setattr__(self, "du", du)
        object.__setattr__(self, "dlng", dlng)

    def __len__(self) -> int:
        return self.du.size

    @property
    def end_year(self) -> int:
        return self.start_year + len(self) - 1

    @property
    def years(self) -> NDArray[np.int64]:
        return np.arange(self.start_year, self.end_year + 1)

    def between(self, first: int, last: int) -> DerivedPair:
        lo = max(first, self.start_year)
        hi = min(last, self.end_year)
        if lo > hi:
            raise InfeasibleError(f"no observations between {first} and {last}")
        i = lo - self.start_year
        j = i + hi - lo + 1
        return DerivedPair(lo, self.du[i:j], self.dlng[i:j])


# --------------------------------------------------------------------------
# CSV


def parse_csv(text: str, country: str = "") -> CountryDataset:
    """Parse ``year,gdp_pc,unemployment`` text into a dataset.

    Lines starting with ``#`` and blank lines are skipped. Rows may come in
    any order; they are sorted by year. Every problem is reported as a
    :class:`DataError` carrying the offending line number.
    """
    if text.startswith("\ufeff"):
        text = text[1:]
    rows: list[tuple[int, int, float, float]] = []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cells = [c.strip() for c in line.split(",")]
        if not header_seen:
            if tuple(cells) != CSV_HEADER:
                raise DataError(
                    f"header must be {','.join(CSV_HEADER)!r}, got {line!r}", lineno
                )
            header_seen = True
            continue
        if len(cells) != 3:
            raise DataError(f"expected 3 columns, got {len(cells)}", lineno)
        try:
            year = int(cells[0])
        except ValueError:
            raise DataError(f"non-numeric year {cells[0]!r}", lineno) from None
        gdp = _parse_number(cells[1], "gdp_pc", lineno)
        unemp = _parse_number(cells[2], "unemployment", lineno)
        if gdp <= 0:
            raise DataError("gdp_pc must be positive", lineno)
        if not 0 <= unemp < 100:
            raise DataError("unemployment must lie in [0, 100)", lineno)
        rows.append((year, lineno, gdp, unemp))

    if not header_seen:
        raise DataError("missing header line")
    if not rows:
        raise DataError("no data rows")

    rows.sort(key=lambda r: r[0])
    for prev, cur in zip(rows, rows[1:]):
        if cur[0] == prev[0]:
            raise DataError(f"duplicate year {cur[0]}", max(cur[1], prev[1]))
        if cur[0] != prev[0] + 1:
            raise DataError(
                f"gap in years between {prev[0]} and {cur[0]}", max(cur[1], prev[1])
            )

    start = rows[0][0]
    return CountryDataset(
        country,
        AnnualSeries(start, [r[2] for r in rows]),
        AnnualSeries(start, [r[3] for r in rows]),
    )


def _parse_number(cell: str, name: str, lineno: int) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise DataError(f"non-numeric {name} {cell!r}", lineno) from None
    if not math.isfinite(value):
        raise DataError(f"non-finite {name} {cell!r}", lineno)
    return value


def read_csv(path: str | Path, country: str | None = None) -> CountryDataset:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    return parse_csv(text, path.stem if country is None else country)


def to_csv(dataset: CountryDataset) -> str:
    """Serialize with shortest round-trip float formatting (lossless)."""
    lines = [",".join(CSV_HEADER)]
    for year, g, u in zip(
        dataset.years, dataset.gdp_pc.values, dataset.unemployment.values
    ):
        lines.append(f"{year},{float(g)!r},{float(u)!r}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Transforms


def log_growth(g: AnnualSeries) -> AnnualSeries:
    """Annual log growth in percent: ``100 * (ln g[t] - ln g[t-1])``."""
    if len(g) < 2:
        raise InfeasibleError("log_growth needs at least 2 observations")
    if np.any(g.values <= 0):
        raise DataError("log_growth needs strictly positive levels")
    return AnnualSeries(g.start_year + 1, 100.0 * np.diff(np.log(g.values)))


def first_diff(u: AnnualSeries) -> AnnualSeries:
    if len(u) < 2:
        raise InfeasibleError("first_diff needs at least 2 observations")
    return AnnualSeries(u.start_year + 1, np.diff(u.values))


def derive(dataset: CountryDataset) -> DerivedPair:
    """Turn levels into the (du, dlng) pair used by every regression."""
    du = first_diff(dataset.unemployment)
    dlng = log_growth(dataset.gdp_pc)
    return DerivedPair(du.start_year, du.values, dlng.values)


def ma3(s: AnnualSeries) -> AnnualSeries:
    """Centered three-point moving average; both endpoints are dropped."""
    if len(s) < 3:
        raise InfeasibleError("ma3 needs at least 3 observations")
    v = s.values
    return AnnualSeries(s.start_year + 1, (v[:-2] + v[1:-1] + v[2:]) / 3.0)


def smooth_pair(pair: DerivedPair) -> DerivedPair:
    """Apply :func:`ma3` to both sides of a pair, keeping years aligned."""
    du = ma3(AnnualSeries(pair.start_year, pair.du))
    dlng = ma3(AnnualSeries(pair.start_year, pair.dlng))
    return DerivedPair(du.start_year, du.values, dlng.values)
