"""Point-in-time universe selection.

At each rebalance date an asset is included iff it has a record that day,
has existed (with adequate coverage) for the full history window, and its
market cap never dropped below the floor on any observed day in the window.
Only records dated <= t are consulted, so selection is free of look-ahead.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass

from .panel import Panel, has_history


@dataclass(frozen=True)
class InclusionCriteria:
    """Universe membership thresholds.

    history_days: minimum listed age in days (182 ~ 26 weeks).
    min_marketcap_usd: market-cap floor applied on every observed window day.
    min_coverage: required fraction of window days carrying a record.
    """

    history_days: int = 182
    min_marketcap_usd: float = 1_000_000.0
    min_coverage: float = 0.95

    def __post_init__(self):
        if self.history_days < 1:
            raise ValueError("history_days must be >= 1")
        if self.min_marketcap_usd <= 0:
            raise ValueError("min_marketcap_usd must be > 0")
        if not 0 < self.min_coverage <= 1:
            raise ValueError("min_coverage must be in (0, 1]")


def select_universe(panel: Panel, t: dt.date, criteria: InclusionCriteria) -> set[str]:
    """Assets passing all inclusion criteria at date t.

    The marketcap floor is enforced only on days where a record exists;
    missing days cannot be tested and are not invented.
    """
    window_start = t - dt.timedelta(days=criteria.history_days)
    selected: set[str] = set()
    for asset in panel.assets():
        if not panel.has_record(asset, t):
            continue
        first = panel.first_date(asset)
        if first is None or first > window_start:
            continue
        ok, _ = has_history(panel, asset, t, criteria.history_days, criteria.min_coverage)
        if not ok:
            continue
        floor_ok = all(
            rec.marketcap_usd >= criteria.min_marketcap_usd
            for rec in panel.records_between(asset, window_start, t)
        )
        if floor_ok:
            selected.add(asset)
    return selected


def universe_counts(panel: Panel, rebalance_dates: list[dt.date],
                    criteria: InclusionCriteria) -> list[tuple[dt.date, int]]:
    """Universe size at each rebalance date (the universe-size time series)."""
    prev = None
    for d in rebalance_dates:
        if prev is not None and d < prev:
            raise ValueError("rebalance_dates must be ascending")
        prev = d
    return [(d, len(select_universe(panel, d, criteria))) for d in rebalance_dates]
