"""Shared test helpers: terse hand-built panels and date shorthands."""

import datetime as dt

import pytest

from momliq.panel import DailyRecord, Panel

D0 = dt.date(2020, 1, 1)


def day(offset: int) -> dt.date:
    return D0 + dt.timedelta(days=offset)


def rec(date, price, volume=1_000_000.0, cap=1.0e9) -> DailyRecord:
    return DailyRecord(date=date, price_usd=price, volume_usd=volume,
                       marketcap_usd=cap)


def mk_panel(rows) -> Panel:
    """rows: iterable of (asset, day_offset, price[, volume[, cap]])."""
    by_asset: dict[str, dict[dt.date, DailyRecord]] = {}
    for row in rows:
        asset, offset, price = row[0], row[1], row[2]
        volume = row[3] if len(row) > 3 else 1_000_000.0
        cap = row[4] if len(row) > 4 else 1.0e9
        d = day(offset)
        by_asset.setdefault(asset, {})[d] = rec(d, price, volume, cap)
    return Panel(by_asset)


def flat_rows(asset, first, last, price=100.0, volume=1_000_000.0, cap=1.0e9,
              skip=()):
    """Constant-price rows covering day offsets [first, last], minus skips."""
    return [(asset, k, price, volume, cap)
            for k in range(first, last + 1) if k not in skip]


@pytest.fixture
def single_asset_panel() -> Panel:
    return mk_panel(flat_rows("AAA", 0, 250))
