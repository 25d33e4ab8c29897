"""Full-study orchestration and CSV report emission.

A study run does one pass of universe selection / signals / sorting per
rebalance date (the plan), then runs every portfolio spec against that
shared plan: the 9 momentum x liquidity cells, the three UMD and three IML
difference series, the cap-weighted market benchmark, and the trading-cost
sweep for the two headline long-only strategies (illiquid losers and
liquid winners).

Report rule: every number in a rendered table must be re-derivable from
the emitted raw series files, so alongside the formatted tables the run
writes the full per-strategy daily return series.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass
from pathlib import Path

from .config import RunConfig
from .errors import EmptyInputError, IncompleteGridError, WindowTooShortError
from .panel import Panel, day_range, read_exclusions, read_panel_csv
from .perfstats import PerfStats, Series, compute_perf_stats
from .portfolio import (
    BacktestResult,
    PortfolioSpec,
    RebalancePoint,
    build_rebalance_plan,
    rebalance_schedule,
    run_backtest_on_plan,
)
from .signals import SignalConfig, snapshot
from .sorting import TercileLabel
from .universe import InclusionCriteria, select_universe

LABELS = (TercileLabel.LOW, TercileLabel.MID, TercileLabel.HIGH)
MOM_DISPLAY = {TercileLabel.LOW: "Losers", TercileLabel.MID: "Neutral",
               TercileLabel.HIGH: "Winners"}
LIQ_DISPLAY = {TercileLabel.LOW: "Liquid", TercileLabel.MID: "Neutral",
               TercileLabel.HIGH: "Illiquid"}

# The two strategies the cost sweep follows: losers in the illiquid
# tercile and winners in the liquid tercile.
ILLIQUID_LOSERS = (TercileLabel.LOW, TercileLabel.HIGH)
LIQUID_WINNERS = (TercileLabel.HIGH, TercileLabel.LOW)

GRID_FILE = "grid_stats.csv"
COST_FILE = "cost_table.csv"
UNIVERSE_FILE = "universe_counts.csv"
EQUITY_FILE = "equity_curves.csv"
AUDIT_FILE = "sort_audit.csv"
DAILY_FILE = "daily_returns.csv"


@dataclass(frozen=True)
class GridStats:
    """PerfStats for the 3x3 cells plus the UMD row and IML column."""

    cells: dict[tuple[TercileLabel, TercileLabel], PerfStats]  # (mom, liq)
    umd: dict[TercileLabel, PerfStats]                         # by liquidity
    iml: dict[TercileLabel, PerfStats]                         # by momentum


@dataclass(frozen=True)
class CostRow:
    strategy: str
    cost_bps: float
    stats: PerfStats


@dataclass(frozen=True)
class ReportBundle:
    """Everything a study run produced, before/independent of file output."""

    start: dt.date
    end: dt.date
    grid: GridStats
    cost_table: list[CostRow]
    universe_series: list[tuple[dt.date, int]]
    equity_series: dict[str, Series]          # figure curves, by strategy
    results: dict[str, BacktestResult]        # every raw series, by name
    sort_rows: list[tuple[dt.date, str, TercileLabel, TercileLabel]]


def find_default_start(panel: Panel, criteria: InclusionCriteria,
                       cfg: SignalConfig) -> dt.date:
    """First date with a non-empty universe and at least one signal pair.

    Nothing can qualify before history_days have elapsed, so scanning
    starts there.
    """
    if panel.date_span is None:
        raise EmptyInputError("panel has no records")
    lo, hi = panel.date_span
    first_candidate = lo + dt.timedelta(days=criteria.history_days)
    if first_candidate > hi:
        raise WindowTooShortError(
            f"panel spans [{lo}, {hi}]; no date clears the "
            f"{criteria.history_days}-day history requirement"
        )
    for t in day_range(first_candidate, hi):
        universe = select_universe(panel, t, criteria)
        if universe and len(snapshot(panel, universe, t, cfg)) > 0:
            return t
    raise WindowTooShortError(
        f"no date in [{lo}, {hi}] yields a universe with computable signals"
    )


def _bps_tag(bps: float) -> str:
    return f"{bps:g}bps"


def _fmt_pct(value: float) -> str:
    return f"{100.0 * value:.2f}"


def _fmt_ir(value: float | None) -> str:
    return "NA" if value is None else f"{value:.2f}"


def _starred(stats: PerfStats) -> str:
    """Mean as percent with the significance asterisk at alpha = 0.05."""
    star = "*" if stats.p_value is not None and stats.p_value < 0.05 else ""
    return _fmt_pct(stats.mean_daily) + star


def run_full_study(config: RunConfig) -> ReportBundle:
    """Run every spec of the study against one shared rebalance plan."""
    exclusions = (read_exclusions(config.exclusions_path)
                  if config.exclusions_path else frozenset())
    panel = read_panel_csv(config.panel_path, exclusions=exclusions)
    if panel.date_span is None:
        raise EmptyInputError(f"panel {config.panel_path} has no records")
    lo, hi = panel.date_span

    criteria = config.criteria()
    cfg = config.signal_config()
    start = config.start or find_default_start(panel, criteria, cfg)
    end = config.end or hi
    if not (lo <= start < end <= hi):
        raise WindowTooShortError(
            f"study window [{start}, {end}] does not fit panel span [{lo}, {hi}]"
        )

    dates = rebalance_schedule(start, end, config.rebalance_days)
    plan = build_rebalance_plan(panel, dates, criteria, cfg)
    charge = config.charge_inception_costs

    def run(spec: PortfolioSpec) -> BacktestResult:
        return run_backtest_on_plan(panel, spec, plan, start, end, charge)

    results: dict[str, BacktestResult] = {}
    for mom in LABELS:
        for liq in LABELS:
            spec = PortfolioSpec.cell(mom, liq, rebalance_days=config.rebalance_days)
            results[spec.name()] = run(spec)
    for liq in LABELS:
        spec = PortfolioSpec.umd(liq, rebalance_days=config.rebalance_days)
        results[spec.name()] = run(spec)
    for mom in LABELS:
        spec = PortfolioSpec.iml(mom, rebalance_days=config.rebalance_days)
        results[spec.name()] = run(spec)
    market = run(PortfolioSpec.market(rebalance_days=config.rebalance_days))
    results["market"] = market

    for bps in config.cost_bps_list:
        il = PortfolioSpec.cell(*ILLIQUID_LOSERS,
                                rebalance_days=config.rebalance_days, cost_bps=bps)
        lw = PortfolioSpec.cell(*LIQUID_WINNERS,
                                rebalance_days=config.rebalance_days, cost_bps=bps)
        results[f"illiquid_losers_{_bps_tag(bps)}"] = run(il)
        results[f"liquid_winners_{_bps_tag(bps)}"] = run(lw)

    bench = market.daily_returns
    ppy = config.periods_per_year

    def stats_for(name: str) -> PerfStats:
        return compute_perf_stats(results[name].daily_returns, bench, ppy)

    grid = GridStats(
        cells={(m, l): stats_for(f"cell_{m.value}_{l.value}")
               for m in LABELS for l in LABELS},
        umd={l: stats_for(f"umd_{l.value}") for l in LABELS},
        iml={m: stats_for(f"iml_{m.value}") for m in LABELS},
    )

    cost_table = []
    for strategy, cell in (("illiquid_losers", ILLIQUID_LOSERS),
                           ("liquid_winners", LIQUID_WINNERS)):
        for bps in config.cost_bps_list:
            name = f"{strategy}_{_bps_tag(bps)}"
            cost_table.append(CostRow(strategy=strategy, cost_bps=bps,
                                      stats=stats_for(name)))

    universe_series = [(p.date, len(p.universe)) for p in plan]
    equity_series = {
        "illiquid_losers": results[f"cell_{ILLIQUID_LOSERS[0].value}_{ILLIQUID_LOSERS[1].value}"].equity_curve,
        "liquid_winners": results[f"cell_{LIQUID_WINNERS[0].value}_{LIQUID_WINNERS[1].value}"].equity_curve,
        "market": market.equity_curve,
    }
    sort_rows = _sort_audit_rows(plan)

    return ReportBundle(start=start, end=end, grid=grid, cost_table=cost_table,
                        universe_series=universe_series,
                        equity_series=equity_series, results=results,
                        sort_rows=sort_rows)


def _sort_audit_rows(plan: list[RebalancePoint]) -> list[tuple[dt.date, str, TercileLabel, TercileLabel]]:
    rows = []
    for point in plan:
        if point.sort is None:
            continue
        for asset in point.sort.assets():
            rows.append((point.date, asset,
                         point.sort.momentum_group[asset],
                         point.sort.liquidity_group[asset]))
    return rows


def render_grid(grid: GridStats) -> str:
    """Three CSV blocks (mean %, std %, IR) in the 3x3-plus-marginals layout.

    Rows are Losers/Neutral/Winners plus the UMD marginal; columns are
    Liquid/Neutral/Illiquid plus the IML marginal. Zero-investment means
    carry an asterisk when significant at the 0.05 level. The UMD x IML
    corner has no defined series and stays empty.
    """
    missing = [f"cell {m.value}/{l.value}" for m in LABELS for l in LABELS
               if (m, l) not in grid.cells]
    missing += [f"umd {l.value}" for l in LABELS if l not in grid.umd]
    missing += [f"iml {m.value}" for m in LABELS if m not in grid.iml]
    if missing:
        raise IncompleteGridError("grid is missing: " + ", ".join(missing))

    header = "," + ",".join(LIQ_DISPLAY[l] for l in LABELS) + ",IML"
    lines = ["Mean return [%]", header]
    for m in LABELS:
        cells = [_fmt_pct(grid.cells[(m, l)].mean_daily) for l in LABELS]
        lines.append(",".join([MOM_DISPLAY[m]] + cells + [_starred(grid.iml[m])]))
    lines.append(",".join(["UMD"] + [_starred(grid.umd[l]) for l in LABELS] + [""]))

    lines += ["", "Standard deviation [%]", header]
    for m in LABELS:
        cells = [_fmt_pct(grid.cells[(m, l)].std_daily) for l in LABELS]
        lines.append(",".join([MOM_DISPLAY[m]] + cells
                              + [_fmt_pct(grid.iml[m].std_daily)]))
    lines.append(",".join(["UMD"] + [_fmt_pct(grid.umd[l].std_daily)
                                     for l in LABELS] + [""]))

    lines += ["", "Information ratio", header]
    for m in LABELS:
        cells = [_fmt_ir(grid.cells[(m, l)].ir_annualized) for l in LABELS]
        lines.append(",".join([MOM_DISPLAY[m]] + cells
                              + [_fmt_ir(grid.iml[m].ir_annualized)]))
    lines.append(",".join(["UMD"] + [_fmt_ir(grid.umd[l].ir_annualized)
                                     for l in LABELS] + [""]))

    return "\n".join(lines) + "\n"


def render_cost_table(rows: list[CostRow]) -> str:
    lines = ["strategy,cost_bps,mean_daily_pct,std_daily_pct,ir_annualized"]
    for row in rows:
        lines.append(",".join([
            row.strategy,
            f"{row.cost_bps:g}",
            _fmt_pct(row.stats.mean_daily),
            _fmt_pct(row.stats.std_daily),
            _fmt_ir(row.stats.ir_annualized),
        ]))
    return "\n".join(lines) + "\n"


def render_universe_counts(series: list[tuple[dt.date, int]]) -> str:
    lines = ["date,count"]
    lines += [f"{d.isoformat()},{n}" for d, n in series]
    return "\n".join(lines) + "\n"


def render_equity_curves(curves: dict[str, Series]) -> str:
    lines = ["date,strategy,equity"]
    for strategy in sorted(curves):
        for d, v in curves[strategy]:
            lines.append(f"{d.isoformat()},{strategy},{v!r}")
    return "\n".join(lines) + "\n"


def render_sort_audit(rows: list[tuple[dt.date, str, TercileLabel, TercileLabel]]) -> str:
    lines = ["date,asset_id,momentum_group,liquidity_group"]
    lines += [f"{d.isoformat()},{asset},{m.value},{l.value}"
              for d, asset, m, l in rows]
    return "\n".join(lines) + "\n"


def render_daily_returns(results: dict[str, BacktestResult]) -> str:
    lines = ["date,strategy,gross_return,net_return"]
    for name in sorted(results):
        result = results[name]
        for (d, g), (_, n) in zip(result.gross_returns, result.daily_returns):
            lines.append(f"{d.isoformat()},{name},{g!r},{n!r}")
    return "\n".join(lines) + "\n"


def render_backtest_csv(result: BacktestResult) -> str:
    lines = ["date,gross_return,net_return,equity"]
    for (d, g), (_, n), (_, e) in zip(result.gross_returns,
                                      result.daily_returns,
                                      result.equity_curve):
        lines.append(f"{d.isoformat()},{g!r},{n!r},{e!r}")
    return "\n".join(lines) + "\n"


def render_turnover_csv(result: BacktestResult) -> str:
    lines = ["rebalance_date,turnover"]
    lines += [f"{d.isoformat()},{v!r}" for d, v in result.turnover]
    return "\n".join(lines) + "\n"


def _write(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8", newline="\n")
    return path


def write_study_outputs(bundle: ReportBundle, out_dir) -> list[Path]:
    """Emit every CSV artifact of a study run into out_dir."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return [
        _write(out / GRID_FILE, render_grid(bundle.grid)),
        _write(out / COST_FILE, render_cost_table(bundle.cost_table)),
        _write(out / UNIVERSE_FILE, render_universe_counts(bundle.universe_series)),
        _write(out / EQUITY_FILE, render_equity_curves(bundle.equity_series)),
        _write(out / AUDIT_FILE, render_sort_audit(bundle.sort_rows)),
        _write(out / DAILY_FILE, render_daily_returns(bundle.results)),
    ]
