"""Performance statistics for daily return series.

All series are lists of (date, return). Standard deviations are sample
(n-1). The information ratio is computed against a benchmark sharing the
same date axis and annualized by sqrt(periods_per_year); the t-test is a
one-sample two-tailed test of the daily mean against zero.
"""

from __future__ import annotations

import datetime as dt
import math
from dataclasses import dataclass

from .errors import (
    AxisMismatchError,
    TooFewSamplesError,
    ZeroTrackingError,
    ZeroVarianceError,
)
from .studentt import student_t_sf_two_sided

Series = list[tuple[dt.date, float]]


@dataclass(frozen=True)
class PerfStats:
    """Summary statistics for one return series.

    ir_annualized is None when tracking error is zero (or no benchmark was
    given); t_stat / p_value are None when the series has zero variance.
    """

    n: int
    mean_daily: float
    std_daily: float
    ir_annualized: float | None
    t_stat: float | None
    p_value: float | None


def series_values(series: Series) -> list[float]:
    return [v for _, v in series]


def series_dates(series: Series) -> list[dt.date]:
    return [d for d, _ in series]


def mean_std(values: list[float]) -> tuple[float, float]:
    """Arithmetic mean and sample (n-1) standard deviation."""
    n = len(values)
    if n < 2:
        raise TooFewSamplesError(f"need at least 2 samples, got {n}")
    mean = sum(values) / n
    var = sum((v - mean) ** 2 for v in values) / (n - 1)
    return mean, math.sqrt(var)


def information_ratio(portfolio: Series, benchmark: Series,
                      periods_per_year: int = 365) -> float:
    """Annualized mean/std of the active (portfolio minus benchmark) returns."""
    if series_dates(portfolio) != series_dates(benchmark):
        raise AxisMismatchError("portfolio and benchmark date axes differ")
    diffs = [p - b for (_, p), (_, b) in zip(portfolio, benchmark)]
    mean, std = mean_std(diffs)
    if std == 0.0:
        raise ZeroTrackingError("tracking-error variance is zero")
    return (mean / std) * math.sqrt(periods_per_year)


def ttest_zero(values: list[float]) -> tuple[float, float]:
    """One-sample two-tailed t-test of the mean against zero.

    Returns (t, p) with t = mean / (std / sqrt(n)) and p from the Student-t
    distribution with n-1 degrees of freedom.
    """
    mean, std = mean_std(values)
    if std == 0.0:
        raise ZeroVarianceError("t-test undefined for a constant series")
    n = len(values)
    t = mean / (std / math.sqrt(n))
    p = student_t_sf_two_sided(t, n - 1)
    return t, p


def equity_curve(series: Series) -> Series:
    """Cumulative product of (1 + r), starting from a base of 1.0."""
    out: Series = []
    equity = 1.0
    for d, r in series:
        equity *= 1.0 + r
        out.append((d, equity))
    return out


def compute_perf_stats(series: Series, benchmark: Series | None = None,
                       periods_per_year: int = 365) -> PerfStats:
    """Assemble PerfStats, mapping degenerate cases to None markers.

    Zero tracking error (portfolio identical to benchmark) and zero series
    variance are legal inputs here; the corresponding fields come back None
    rather than raising, so report assembly survives degenerate panels.
    """
    values = series_values(series)
    mean, std = mean_std(values)
    ir: float | None = None
    if benchmark is not None:
        try:
            ir = information_ratio(series, benchmark, periods_per_year)
        except ZeroTrackingError:
            ir = None
    try:
        t, p = ttest_zero(values)
    except ZeroVarianceError:
        t, p = None, None
    return PerfStats(n=len(values), mean_daily=mean, std_daily=std,
                     ir_annualized=ir, t_stat=t, p_value=p)
