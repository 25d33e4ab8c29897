"""Brute-force reference backtest for validating the engine.

Everything is recomputed the slow, literal way: universe checks scan the
panel day by day, terciles are re-sorted from scratch at every rebalance,
and accounting carries an explicit position table (units per asset plus a
cash value) that is repriced against raw panel prices each day. None of
the engine's incremental weight arithmetic is reused, so agreement between
the two is a genuine cross-check rather than a tautology.

Intended for small instances only (by convention <= 25 assets x 200 days).
"""

from __future__ import annotations

import datetime as dt
from fractions import Fraction

from .errors import WindowTooShortError
from .panel import ONE_DAY, Panel
from .portfolio import BacktestResult, PortfolioSpec, SelectionKind, Weighting
from .signals import SignalConfig
from .sorting import TercileLabel
from .universe import InclusionCriteria

Series = list[tuple[dt.date, float]]


def _scan_universe(panel: Panel, t: dt.date, criteria: InclusionCriteria) -> list[str]:
    """Inclusion criteria checked by walking every window day explicitly."""
    lo, _ = panel.date_span
    window_start = t - dt.timedelta(days=criteria.history_days)
    members = []
    for asset in panel.assets():
        if panel.record(asset, t) is None:
            continue
        existed = False
        d = lo
        while d <= window_start:
            if panel.record(asset, d) is not None:
                existed = True
                break
            d += ONE_DAY
        if not existed:
            continue
        n_days = criteria.history_days + 1
        observed = []
        d = window_start
        while d <= t:
            rec = panel.record(asset, d)
            if rec is not None:
                observed.append(rec)
            d += ONE_DAY
        if len(observed) / n_days < criteria.min_coverage:
            continue
        if any(rec.marketcap_usd < criteria.min_marketcap_usd for rec in observed):
            continue
        members.append(asset)
    return members


def _trailing_return(panel: Panel, asset: str, t: dt.date, lookback: int) -> float | None:
    now = panel.record(asset, t)
    then = panel.record(asset, t - dt.timedelta(days=lookback))
    if now is None or then is None:
        return None
    return (now.price_usd - then.price_usd) / then.price_usd


def _mean_price_impact(panel: Panel, asset: str, t: dt.date,
                       lookback: int, min_days: int) -> float | None:
    ratios = []
    for back in range(lookback):
        day = t - dt.timedelta(days=back)
        rec = panel.record(asset, day)
        prev = panel.record(asset, day - ONE_DAY)
        if rec is None or prev is None or rec.volume_usd <= 0:
            continue
        ratios.append(abs(rec.price_usd / prev.price_usd - 1.0) / rec.volume_usd)
    if len(ratios) < min_days:
        return None
    return sum(ratios) / len(ratios)


def _tercile_split(values: dict[str, float]) -> dict[str, TercileLabel]:
    order = sorted(values.items(), key=lambda kv: (kv[1], kv[0]))
    n = len(order)
    tail = int(Fraction(3, 10) * n + Fraction(1, 2))
    labels = {}
    for rank, (asset, _) in enumerate(order):
        if rank < tail:
            labels[asset] = TercileLabel.LOW
        elif rank >= n - tail:
            labels[asset] = TercileLabel.HIGH
        else:
            labels[asset] = TercileLabel.MID
    return labels


def _members_at(panel: Panel, t: dt.date, spec: PortfolioSpec,
                criteria: InclusionCriteria, cfg: SignalConfig,
                mom_label: TercileLabel | None,
                liq_label: TercileLabel | None) -> list[str] | None:
    """Universe -> signals -> fresh double sort -> cell membership. None if empty."""
    universe = _scan_universe(panel, t, criteria)
    if not universe:
        return None
    if spec.kind is SelectionKind.MARKET:
        return universe
    mom: dict[str, float] = {}
    illiq: dict[str, float] = {}
    for asset in universe:
        m = _trailing_return(panel, asset, t, cfg.momentum_days)
        i = _mean_price_impact(panel, asset, t, cfg.illiq_days, cfg.min_volume_days)
        if m is None or i is None:
            continue
        mom[asset] = m
        illiq[asset] = i
    if not mom:
        return None
    mom_groups = _tercile_split(mom)
    liq_groups = _tercile_split(illiq)
    cell = [a for a in sorted(mom) if mom_groups[a] is mom_label
            and liq_groups[a] is liq_label]
    return cell or None


def _single_leg(panel: Panel, spec: PortfolioSpec, criteria: InclusionCriteria,
                cfg: SignalConfig, start: dt.date, end: dt.date,
                charge_inception_costs: bool,
                mom_label: TercileLabel | None,
                liq_label: TercileLabel | None) -> BacktestResult:
    rebalance_dates = set()
    d = start
    while d <= end:
        rebalance_dates.add(d)
        d += dt.timedelta(days=spec.rebalance_days)

    rate = spec.cost_bps / 10_000.0
    units: dict[str, float] = {}
    last_price: dict[str, float] = {}
    cash = 1.0
    book = 1.0
    invested = False
    any_universe = False

    net: Series = []
    gross: Series = []
    turnover: Series = []
    curve: Series = []
    skipped: list[tuple[dt.date, str]] = []

    t = start
    while t <= end:
        if t == start:
            r_gross = 0.0
            value = book
        else:
            for asset in sorted(units):
                rec = panel.record(asset, t)
                if rec is None:
                    cash += units[asset] * last_price[asset]
                    del units[asset]
                    del last_price[asset]
                else:
                    last_price[asset] = rec.price_usd
            value = cash + sum(units[a] * panel.record(a, t).price_usd for a in units)
            r_gross = value / book - 1.0

        cost = 0.0
        if t in rebalance_dates:
            if _scan_universe(panel, t, criteria):
                any_universe = True
            members = _members_at(panel, t, spec, criteria, cfg, mom_label, liq_label)
            if members is None:
                skipped.append((t, "empty"))
            else:
                if spec.weighting is Weighting.CAP:
                    caps = {a: panel.record(a, t).marketcap_usd for a in members}
                    total_cap = sum(caps.values())
                    target_w = {a: caps[a] / total_cap for a in members}
                else:
                    target_w = {a: 1.0 / len(members) for a in members}
                drifted_w = {a: units[a] * panel.record(a, t).price_usd / value
                             for a in units}
                traded = sum(abs(target_w.get(a, 0.0) - drifted_w.get(a, 0.0))
                             for a in sorted(set(target_w) | set(drifted_w)))
                turnover.append((t, traded))
                if invested or charge_inception_costs:
                    cost = rate * traded
                book_after = book * (1.0 + r_gross - cost)
                units = {}
                last_price = {}
                for a in members:
                    price = panel.record(a, t).price_usd
                    units[a] = target_w[a] * book_after / price
                    last_price[a] = price
                cash = book_after * (1.0 - sum(target_w.values()))
                invested = True
                book = book_after
                net.append((t, r_gross - cost))
                gross.append((t, r_gross))
                curve.append((t, book))
                t += ONE_DAY
                continue

        book = book * (1.0 + r_gross - cost)
        net.append((t, r_gross - cost))
        gross.append((t, r_gross))
        curve.append((t, book))
        t += ONE_DAY

    if not any_universe:
        raise WindowTooShortError(
            f"no rebalance date in [{start}, {end}] admits a non-empty universe"
        )
    return BacktestResult(daily_returns=net, gross_returns=gross,
                          turnover=turnover, equity_curve=curve,
                          skipped_rebalances=skipped)


def oracle_backtest(panel: Panel, spec: PortfolioSpec, criteria: InclusionCriteria,
                    cfg: SignalConfig, start: dt.date, end: dt.date,
                    charge_inception_costs: bool = True) -> BacktestResult:
    """Reference implementation matching run_backtest's contract."""
    if spec.kind in (SelectionKind.MARKET, SelectionKind.CELL):
        return _single_leg(panel, spec, criteria, cfg, start, end,
                           charge_inception_costs,
                           spec.momentum_label, spec.liquidity_label)

    if spec.kind is SelectionKind.UMD:
        pairs = ((TercileLabel.HIGH, spec.liquidity_label),
                 (TercileLabel.LOW, spec.liquidity_label))
        tags = ("winners", "losers")
    else:
        pairs = ((spec.momentum_label, TercileLabel.HIGH),
                 (spec.momentum_label, TercileLabel.LOW))
        tags = ("illiquid", "liquid")

    leg_spec = PortfolioSpec.cell(TercileLabel.MID, TercileLabel.MID,
                                  rebalance_days=spec.rebalance_days,
                                  cost_bps=spec.cost_bps)
    long = _single_leg(panel, leg_spec, criteria, cfg, start, end,
                       charge_inception_costs, pairs[0][0], pairs[0][1])
    short = _single_leg(panel, leg_spec, criteria, cfg, start, end,
                        charge_inception_costs, pairs[1][0], pairs[1][1])

    net = [(d, rl - rs) for (d, rl), (_, rs) in
           zip(long.daily_returns, short.daily_returns)]
    gross = [(d, gl - gs) for (d, gl), (_, gs) in
             zip(long.gross_returns, short.gross_returns)]
    merged: dict[dt.date, float] = {}
    for d, v in long.turnover + short.turnover:
        merged[d] = merged.get(d, 0.0) + v
    equity = 1.0
    curve: Series = []
    for d, r in net:
        equity *= 1.0 + r
        curve.append((d, equity))
    skipped = sorted(
        [(d, f"{tags[0]}:{why}") for d, why in long.skipped_rebalances]
        + [(d, f"{tags[1]}:{why}") for d, why in short.skipped_rebalances]
    )
    return BacktestResult(daily_returns=net, gross_returns=gross,
                          turnover=sorted(merged.items()), equity_curve=curve,
                          skipped_rebalances=skipped)
