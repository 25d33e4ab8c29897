"""Portfolio formation, drift accounting, rebalancing, and trading costs.

Between rebalances holdings are buy-and-hold: weights drift with returns.
At each rebalance date the target book is rebuilt from that date's
universe, signals, and sort; proportional costs are charged on the traded
weight against the drifted book and deducted from that day's return.

Timing convention: the book formed at a rebalance date t uses signals
through t's close, so it starts earning on t+1. The daily series runs
from start to end inclusive, with the formation day carrying a gross
return of zero (there is no prior exposure) minus any inception cost.

Zero-investment specs (UMD, IML) are the per-date difference of two
separately run long-only cell legs; costs apply within each leg.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field
from enum import Enum

from .errors import (
    AxisMismatchError,
    EmptyInputError,
    EmptyPortfolioError,
    MissingDataError,
    WindowTooShortError,
)
from .panel import ONE_DAY, Panel, day_range, try_daily_return
from .signals import SignalConfig, SignalSnapshot, snapshot
from .sorting import SortResult, TercileLabel, bivariate_sort
from .universe import InclusionCriteria, select_universe

Series = list[tuple[dt.date, float]]


class Weighting(Enum):
    EQUAL = "EQUAL"
    CAP = "CAP"


class SelectionKind(Enum):
    CELL = "cell"
    UMD = "umd"
    IML = "iml"
    MARKET = "market"


@dataclass(frozen=True)
class PortfolioSpec:
    """What to hold and how: a 3x3 cell, a UMD/IML difference, or the market.

    Cells default to equal weighting; MARKET is always cap-weighted over the
    full universe; UMD/IML are derived long-minus-short series whose legs are
    equal-weighted cells.
    """

    kind: SelectionKind
    momentum_label: TercileLabel | None = None
    liquidity_label: TercileLabel | None = None
    weighting: Weighting = Weighting.EQUAL
    rebalance_days: int = 14
    cost_bps: float = 0.0

    def __post_init__(self):
        if self.rebalance_days < 1:
            raise ValueError("rebalance_days must be >= 1")
        if self.cost_bps < 0:
            raise ValueError("cost_bps must be >= 0")
        if self.kind is SelectionKind.CELL:
            if self.momentum_label is None or self.liquidity_label is None:
                raise ValueError("cell spec needs both tercile labels")
        elif self.kind is SelectionKind.UMD:
            if self.liquidity_label is None:
                raise ValueError("UMD spec needs a liquidity label")
        elif self.kind is SelectionKind.IML:
            if self.momentum_label is None:
                raise ValueError("IML spec needs a momentum label")
        elif self.kind is SelectionKind.MARKET:
            if self.weighting is not Weighting.CAP:
                object.__setattr__(self, "weighting", Weighting.CAP)

    @classmethod
    def cell(cls, momentum_label: TercileLabel, liquidity_label: TercileLabel,
             weighting: Weighting = Weighting.EQUAL, rebalance_days: int = 14,
             cost_bps: float = 0.0) -> "PortfolioSpec":
        return cls(SelectionKind.CELL, momentum_label, liquidity_label,
                   weighting, rebalance_days, cost_bps)

    @classmethod
    def umd(cls, liquidity_label: TercileLabel, rebalance_days: int = 14,
            cost_bps: float = 0.0) -> "PortfolioSpec":
        return cls(SelectionKind.UMD, None, liquidity_label,
                   Weighting.EQUAL, rebalance_days, cost_bps)

    @classmethod
    def iml(cls, momentum_label: TercileLabel, rebalance_days: int = 14,
            cost_bps: float = 0.0) -> "PortfolioSpec":
        return cls(SelectionKind.IML, momentum_label, None,
                   Weighting.EQUAL, rebalance_days, cost_bps)

    @classmethod
    def market(cls, rebalance_days: int = 14, cost_bps: float = 0.0) -> "PortfolioSpec":
        return cls(SelectionKind.MARKET, None, None, Weighting.CAP,
                   rebalance_days, cost_bps)

    def name(self) -> str:
        if self.kind is SelectionKind.CELL:
            return f"cell_{self.momentum_label.value}_{self.liquidity_label.value}"
        if self.kind is SelectionKind.UMD:
            return f"umd_{self.liquidity_label.value}"
        if self.kind is SelectionKind.IML:
            return f"iml_{self.momentum_label.value}"
        return "market"


@dataclass(frozen=True)
class Holding:
    """Portfolio state between rebalances: asset weights plus a cash sleeve.

    For long-only books all weights are >= 0 and weights + cash sum to 1.
    """

    weights: dict[str, float] = field(default_factory=dict)
    cash: float = 1.0

    def gross_weight(self) -> float:
        return sum(self.weights.values())


@dataclass(frozen=True)
class BacktestResult:
    """Daily accounting for one portfolio spec over [start, end]."""

    daily_returns: Series          # net of costs
    gross_returns: Series          # before costs
    turnover: Series               # executed rebalance dates only
    equity_curve: Series           # cumulative product of (1 + net)
    skipped_rebalances: list[tuple[dt.date, str]]

    def dates(self) -> list[dt.date]:
        return [d for d, _ in self.daily_returns]

    def net_values(self) -> list[float]:
        return [v for _, v in self.daily_returns]

    def gross_values(self) -> list[float]:
        return [v for _, v in self.gross_returns]


def build_weights(members: set[str] | list[str], weighting: Weighting,
                  marketcaps: dict[str, float] | None = None) -> Holding:
    """Equal weights 1/N, or weights proportional to market cap. No cash."""
    members = sorted(members)
    if not members:
        raise EmptyPortfolioError("cannot build weights over an empty member set")
    if weighting is Weighting.EQUAL:
        w = 1.0 / len(members)
        return Holding(weights={a: w for a in members}, cash=0.0)
    caps = marketcaps or {}
    for a in members:
        if caps.get(a, 0.0) <= 0:
            raise MissingDataError(a, None, detail="positive marketcap required for CAP weighting")
    total = sum(caps[a] for a in members)
    return Holding(weights={a: caps[a] / total for a in members}, cash=0.0)


def portfolio_day_return(holding: Holding, asset_returns: dict[str, float]) -> float:
    """Weighted sum of returns; assets without a return contribute zero."""
    return sum(w * asset_returns[a]
               for a, w in holding.weights.items() if a in asset_returns)


def drift(holding: Holding, asset_returns: dict[str, float]) -> Holding:
    """One day of buy-and-hold: scale weights by (1+R), renormalize by growth.

    Assets with no return available are liquidated to cash at their last
    observed value, i.e. their weight moves to the cash sleeve unchanged
    before the renormalization.
    """
    growth = 1.0 + portfolio_day_return(holding, asset_returns)
    new_weights: dict[str, float] = {}
    cash = holding.cash
    for a, w in holding.weights.items():
        r = asset_returns.get(a)
        if r is None:
            cash += w
        else:
            new_weights[a] = w * (1.0 + r) / growth
    return Holding(weights=new_weights, cash=cash / growth)


def turnover_between(old: Holding, new: Holding) -> float:
    """Sum of absolute weight changes across all assets (cash excluded).

    Summed in sorted asset order so the result is bit-identical across
    processes regardless of hash randomization.
    """
    assets = sorted(set(old.weights) | set(new.weights))
    return sum(abs(new.weights.get(a, 0.0) - old.weights.get(a, 0.0)) for a in assets)


def rebalance_cost(old_drifted: Holding, new_target: Holding, cost_bps: float) -> float:
    """Proportional one-way cost: (bps/10000) x traded weight."""
    return (cost_bps / 10_000.0) * turnover_between(old_drifted, new_target)


def rebalance_schedule(start: dt.date, end: dt.date, step_days: int) -> list[dt.date]:
    """start, start + step, start + 2*step, ... up to end inclusive."""
    dates = []
    d = start
    while d <= end:
        dates.append(d)
        d += dt.timedelta(days=step_days)
    return dates


@dataclass(frozen=True)
class RebalancePoint:
    """Precomputed universe / signals / sort at one rebalance date."""

    date: dt.date
    universe: frozenset[str]
    snapshot: SignalSnapshot | None
    sort: SortResult | None


def build_rebalance_plan(panel: Panel, dates: list[dt.date],
                         criteria: InclusionCriteria,
                         cfg: SignalConfig) -> list[RebalancePoint]:
    """Run selection, signals, and the bivariate sort at each rebalance date.

    Shared by every spec in a study; a single backtest builds its own plan.
    """
    plan = []
    for t in dates:
        universe = select_universe(panel, t, criteria)
        snap = None
        sort = None
        if universe:
            snap = snapshot(panel, universe, t, cfg)
            if len(snap) > 0:
                sort = bivariate_sort(snap)
        plan.append(RebalancePoint(date=t, universe=frozenset(universe),
                                   snapshot=snap, sort=sort))
    return plan


def _cell_members(point: RebalancePoint, mom: TercileLabel,
                  liq: TercileLabel) -> tuple[list[str], str | None]:
    if not point.universe:
        return [], "empty_universe"
    if point.sort is None:
        return [], "empty_snapshot"
    members = point.sort.cell_members(mom, liq)
    if not members:
        return [], "empty_cell"
    return members, None


def _market_members(point: RebalancePoint) -> tuple[list[str], str | None]:
    if not point.universe:
        return [], "empty_universe"
    return sorted(point.universe), None


def _run_long_only(panel: Panel, plan: list[RebalancePoint], start: dt.date,
                   end: dt.date, members_fn, weighting: Weighting,
                   cost_bps: float, charge_inception_costs: bool) -> BacktestResult:
    """The daily accounting loop for one long-only book."""
    by_date = {p.date: p for p in plan}
    rate = cost_bps / 10_000.0
    holding = Holding(weights={}, cash=1.0)
    invested_once = False

    net: Series = []
    gross: Series = []
    turnover: Series = []
    equity_points: Series = []
    skipped: list[tuple[dt.date, str]] = []
    equity = 1.0

    for t in day_range(start, end):
        if t == start:
            r_gross = 0.0
        else:
            returns = {a: r for a in holding.weights
                       if (r := try_daily_return(panel, a, t)) is not None}
            r_gross = portfolio_day_return(holding, returns)
            holding = drift(holding, returns)

        cost = 0.0
        point = by_date.get(t)
        if point is not None:
            members, reason = members_fn(point)
            if reason is not None:
                skipped.append((t, reason))
            else:
                caps = None
                if weighting is Weighting.CAP:
                    caps = {a: panel.record(a, t).marketcap_usd for a in members}
                target = build_weights(members, weighting, caps)
                traded = turnover_between(holding, target)
                turnover.append((t, traded))
                if invested_once or charge_inception_costs:
                    cost = rate * traded
                holding = target
                invested_once = True

        r_net = r_gross - cost
        net.append((t, r_net))
        gross.append((t, r_gross))
        equity *= 1.0 + r_net
        equity_points.append((t, equity))

    return BacktestResult(daily_returns=net, gross_returns=gross,
                          turnover=turnover, equity_curve=equity_points,
                          skipped_rebalances=skipped)


def _combine_legs(long: BacktestResult, short: BacktestResult,
                  long_tag: str, short_tag: str) -> BacktestResult:
    """Zero-investment series: per-date difference of two legs."""
    net = long_short_series(long, short)
    gross = [(d, gl - gs) for (d, gl), (_, gs) in
             zip(long.gross_returns, short.gross_returns)]
    merged: dict[dt.date, float] = {}
    for d, v in long.turnover + short.turnover:
        merged[d] = merged.get(d, 0.0) + v
    turnover = sorted(merged.items())
    equity = 1.0
    curve: Series = []
    for d, r in net:
        equity *= 1.0 + r
        curve.append((d, equity))
    skipped = sorted(
        [(d, f"{long_tag}:{why}") for d, why in long.skipped_rebalances]
        + [(d, f"{short_tag}:{why}") for d, why in short.skipped_rebalances]
    )
    return BacktestResult(daily_returns=net, gross_returns=gross,
                          turnover=turnover, equity_curve=curve,
                          skipped_rebalances=skipped)


def run_backtest_on_plan(panel: Panel, spec: PortfolioSpec,
                         plan: list[RebalancePoint], start: dt.date,
                         end: dt.date,
                         charge_inception_costs: bool = True) -> BacktestResult:
    """Run one spec against a precomputed rebalance plan."""
    if not any(p.universe for p in plan):
        raise WindowTooShortError(
            f"no rebalance date in [{start}, {end}] admits a non-empty universe"
        )
    if spec.kind is SelectionKind.MARKET:
        return _run_long_only(panel, plan, start, end, _market_members,
                              Weighting.CAP, spec.cost_bps, charge_inception_costs)
    if spec.kind is SelectionKind.CELL:
        fn = lambda p: _cell_members(p, spec.momentum_label, spec.liquidity_label)
        return _run_long_only(panel, plan, start, end, fn, spec.weighting,
                              spec.cost_bps, charge_inception_costs)
    if spec.kind is SelectionKind.UMD:
        long = PortfolioSpec.cell(TercileLabel.HIGH, spec.liquidity_label,
                                  rebalance_days=spec.rebalance_days,
                                  cost_bps=spec.cost_bps)
        short = PortfolioSpec.cell(TercileLabel.LOW, spec.liquidity_label,
                                   rebalance_days=spec.rebalance_days,
                                   cost_bps=spec.cost_bps)
        return _combine_legs(
            run_backtest_on_plan(panel, long, plan, start, end, charge_inception_costs),
            run_backtest_on_plan(panel, short, plan, start, end, charge_inception_costs),
            "winners", "losers",
        )
    if spec.kind is SelectionKind.IML:
        long = PortfolioSpec.cell(spec.momentum_label, TercileLabel.HIGH,
                                  rebalance_days=spec.rebalance_days,
                                  cost_bps=spec.cost_bps)
        short = PortfolioSpec.cell(spec.momentum_label, TercileLabel.LOW,
                                   rebalance_days=spec.rebalance_days,
                                   cost_bps=spec.cost_bps)
        return _combine_legs(
            run_backtest_on_plan(panel, long, plan, start, end, charge_inception_costs),
            run_backtest_on_plan(panel, short, plan, start, end, charge_inception_costs),
            "illiquid", "liquid",
        )
    raise ValueError(f"unknown selection kind: {spec.kind}")


def run_backtest(panel: Panel, spec: PortfolioSpec, criteria: InclusionCriteria,
                 cfg: SignalConfig, start: dt.date, end: dt.date,
                 charge_inception_costs: bool = True) -> BacktestResult:
    """Full pipeline for one spec: select, signal, sort, form, drift, account.

    Rebalance dates are start, start + rebalance_days, ... up to end. A
    rebalance whose selection comes up empty holds the prior book and is
    logged in skipped_rebalances.
    """
    if start >= end:
        raise ValueError("start must be before end")
    if panel.date_span is None:
        raise EmptyInputError("panel has no records")
    lo, hi = panel.date_span
    if start < lo or end > hi:
        raise ValueError(f"[{start}, {end}] outside panel span [{lo}, {hi}]")
    dates = rebalance_schedule(start, end, spec.rebalance_days)
    plan = build_rebalance_plan(panel, dates, criteria, cfg)
    return run_backtest_on_plan(panel, spec, plan, start, end, charge_inception_costs)


def long_short_series(long: BacktestResult, short: BacktestResult) -> Series:
    """Per-date difference of net daily returns (long minus short)."""
    if long.dates() != short.dates():
        raise AxisMismatchError("long and short legs have different date axes")
    return [(d, rl - rs) for (d, rl), (_, rs) in
            zip(long.daily_returns, short.daily_returns)]
