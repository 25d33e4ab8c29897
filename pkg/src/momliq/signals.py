"""Momentum and Amihud illiquidity signals at a rebalance date.

Momentum is the trailing cumulative return over the lookback. Illiquidity
is the mean of |daily return| / dollar volume over the lookback's most
recent days; zero-volume days and days without a computable return are
skipped, and an asset must supply at least min_volume_days qualifying days
or it is dropped from that rebalance.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field

from .errors import InsufficientVolumeDataError, MissingDataError
from .panel import ONE_DAY, Panel


@dataclass(frozen=True)
class SignalConfig:
    momentum_days: int = 14
    illiq_days: int = 14
    min_volume_days: int = 7

    def __post_init__(self):
        if self.momentum_days < 1:
            raise ValueError("momentum_days must be >= 1")
        if self.illiq_days < 1:
            raise ValueError("illiq_days must be >= 1")
        if not 1 <= self.min_volume_days <= self.illiq_days:
            raise ValueError("min_volume_days must be in [1, illiq_days]")


@dataclass(frozen=True)
class SignalSnapshot:
    """Per-asset signal values at one rebalance date.

    momentum and illiquidity share an identical key set; assets that failed
    either signal land in dropped with the failure kind.
    """

    date: dt.date
    momentum: dict[str, float] = field(default_factory=dict)
    illiquidity: dict[str, float] = field(default_factory=dict)
    dropped: dict[str, str] = field(default_factory=dict)

    def assets(self) -> list[str]:
        return sorted(self.momentum)

    def __len__(self) -> int:
        return len(self.momentum)


def momentum(panel: Panel, asset: str, t: dt.date, cfg: SignalConfig) -> float:
    """Trailing cumulative return (P(t) - P(t - momentum_days)) / P(t - momentum_days)."""
    t0 = t - dt.timedelta(days=cfg.momentum_days)
    now = panel.record(asset, t)
    if now is None:
        raise MissingDataError(asset, t)
    then = panel.record(asset, t0)
    if then is None:
        raise MissingDataError(asset, t0, detail="momentum lookback endpoint")
    return (now.price_usd - then.price_usd) / then.price_usd


def amihud(panel: Panel, asset: str, t: dt.date, cfg: SignalConfig) -> float:
    """Mean |R(tau)| / V(tau) over qualifying days in {t-illiq_days+1, ..., t}.

    A day qualifies when it has a record with positive volume and the prior
    day's record exists so the return is computable. Units are 1/USD.
    """
    total = 0.0
    n = 0
    day = t - dt.timedelta(days=cfg.illiq_days - 1)
    while day <= t:
        rec = panel.record(asset, day)
        if rec is not None and rec.volume_usd > 0:
            prev = panel.record(asset, day - ONE_DAY)
            if prev is not None:
                r = rec.price_usd / prev.price_usd - 1.0
                total += abs(r) / rec.volume_usd
                n += 1
        day += ONE_DAY
    if n < cfg.min_volume_days:
        raise InsufficientVolumeDataError(
            f"{asset} at {t}: {n} qualifying volume days, need {cfg.min_volume_days}"
        )
    return total / n


def snapshot(panel: Panel, universe: set[str], t: dt.date, cfg: SignalConfig) -> SignalSnapshot:
    """Compute both signals for every universe member, isolating per-asset failures.

    An asset is keyed only if both signals succeed; otherwise it is recorded
    in dropped with the error kind. Iteration is sorted, so the result is
    identical regardless of the universe's set ordering.
    """
    mom: dict[str, float] = {}
    illiq: dict[str, float] = {}
    dropped: dict[str, str] = {}
    for asset in sorted(universe):
        try:
            m = momentum(panel, asset, t, cfg)
            i = amihud(panel, asset, t, cfg)
        except MissingDataError:
            dropped[asset] = "missing_data"
            continue
        except InsufficientVolumeDataError:
            dropped[asset] = "insufficient_volume_data"
            continue
        mom[asset] = m
        illiq[asset] = i
    return SignalSnapshot(date=t, momentum=mom, illiquidity=illiq, dropped=dropped)
