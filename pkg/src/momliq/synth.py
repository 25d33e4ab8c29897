"""Seeded synthetic panel generation for engine validation.

Prices follow a geometric random walk with an optional per-asset drift
spread (the cross-sectional momentum injection): past winners keep their
drift, so trailing return sorts have real predictive content when
momentum_strength > 0 and none when it is zero. Volumes are log-normal
with a per-asset base scaled by liquidity_spread; market caps are price
times a fixed synthetic supply.

All draws come from numpy's legacy RandomState (MT19937), whose seeded
streams are frozen across numpy versions, so a seed pins the panel
bit-for-bit on any platform.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass

import numpy as np

from .panel import DailyRecord, Panel


@dataclass(frozen=True)
class SynthParams:
    seed: int
    n_assets: int = 20
    n_days: int = 120
    daily_vol: float = 0.02
    momentum_strength: float = 0.0
    liquidity_spread: float = 1.0
    listing_schedule: tuple[int, ...] = ()
    marketcap_base: float = 5.0e8
    start_date: dt.date = dt.date(2020, 1, 1)

    def __post_init__(self):
        if self.n_assets < 1:
            raise ValueError("n_assets must be >= 1")
        if self.n_days < 2:
            raise ValueError("n_days must be >= 2")
        if self.daily_vol <= 0:
            raise ValueError("daily_vol must be > 0")
        if any(o < 0 for o in self.listing_schedule):
            raise ValueError("listing offsets must be >= 0")


def asset_name(i: int) -> str:
    return f"A{i:03d}"


def gen_panel(params: SynthParams) -> Panel:
    """Deterministic synthetic panel in the standard store schema."""
    n, days = params.n_assets, params.n_days
    rng = np.random.RandomState(params.seed)

    drift_z = rng.standard_normal(n)
    liq_z = rng.standard_normal(n)
    price0_z = rng.standard_normal(n)
    cap_z = rng.standard_normal(n)
    eps = rng.standard_normal((n, days))
    vol_eps = rng.standard_normal((n, days))

    sigma = params.daily_vol
    alpha = params.momentum_strength * drift_z
    vol_base = 1.0e6 * np.exp(params.liquidity_spread * liq_z)
    price0 = 10.0 * np.exp(0.5 * price0_z)
    supply = params.marketcap_base * np.exp(0.5 * cap_z) / price0

    schedule = params.listing_schedule
    records: dict[str, dict[dt.date, DailyRecord]] = {}
    for i in range(n):
        offset = schedule[i % len(schedule)] if schedule else 0
        if offset >= days - 1:
            continue  # would list too late to ever have a return
        log_steps = (alpha[i] - 0.5 * sigma * sigma) + sigma * eps[i, offset + 1:days]
        log_prices = np.log(price0[i]) + np.concatenate(([0.0], np.cumsum(log_steps)))
        prices = np.exp(log_prices)
        volumes = vol_base[i] * np.exp(0.8 * vol_eps[i, offset:days])
        by_date: dict[dt.date, DailyRecord] = {}
        for k in range(days - offset):
            date = params.start_date + dt.timedelta(days=offset + k)
            price = float(prices[k])
            by_date[date] = DailyRecord(
                date=date,
                price_usd=price,
                volume_usd=float(volumes[k]),
                marketcap_usd=price * float(supply[i]),
            )
        records[asset_name(i)] = by_date
    return Panel(records)
