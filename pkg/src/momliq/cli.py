"""Command-line interface.

Subcommands:
  run       full study: grid, cost table, universe counts, equity curves
  universe  universe-size series only
  backtest  a single portfolio spec, exported as CSV
  synth     write a seeded synthetic panel CSV
"""

from __future__ import annotations

import argparse
import datetime as dt
import sys
from pathlib import Path

from .config import RunConfig, apply_overrides, load_config
from .errors import ConfigError, EngineError
from .panel import read_exclusions, read_panel_csv, write_panel_csv
from .portfolio import PortfolioSpec, Weighting, run_backtest
from .reporting import (
    find_default_start,
    render_backtest_csv,
    render_turnover_csv,
    render_universe_counts,
    run_full_study,
    write_study_outputs,
)
from .sorting import TercileLabel
from .synth import SynthParams, gen_panel
from .universe import universe_counts


def parse_spec_string(text: str, rebalance_days: int = 14,
                      cost_bps: float = 0.0,
                      weighting: Weighting = Weighting.EQUAL) -> PortfolioSpec:
    """Spec strings: "market", "cell:LOW,HIGH", "umd:LOW", "iml:HIGH".

    Cell labels are momentum then liquidity tercile; umd takes the
    liquidity tercile its legs live in, iml the momentum tercile.
    """
    head, _, rest = text.strip().partition(":")
    kind = head.strip().lower()

    def label(token: str) -> TercileLabel:
        try:
            return TercileLabel[token.strip().upper()]
        except KeyError:
            raise ConfigError(
                f"bad tercile label {token.strip()!r} in spec {text!r}; "
                "use LOW, MID, or HIGH"
            ) from None

    if kind == "market":
        if rest:
            raise ConfigError(f"market spec takes no labels, got {text!r}")
        return PortfolioSpec.market(rebalance_days=rebalance_days, cost_bps=cost_bps)
    if kind == "cell":
        parts = rest.split(",")
        if len(parts) != 2:
            raise ConfigError(f"cell spec needs two labels, e.g. cell:LOW,HIGH; got {text!r}")
        return PortfolioSpec.cell(label(parts[0]), label(parts[1]),
                                  weighting=weighting,
                                  rebalance_days=rebalance_days, cost_bps=cost_bps)
    if kind == "umd":
        if not rest or "," in rest:
            raise ConfigError(f"umd spec needs one liquidity label, e.g. umd:LOW; got {text!r}")
        return PortfolioSpec.umd(label(rest), rebalance_days=rebalance_days,
                                 cost_bps=cost_bps)
    if kind == "iml":
        if not rest or "," in rest:
            raise ConfigError(f"iml spec needs one momentum label, e.g. iml:HIGH; got {text!r}")
        return PortfolioSpec.iml(label(rest), rebalance_days=rebalance_days,
                                 cost_bps=cost_bps)
    raise ConfigError(f"unknown spec kind {head!r}; use market, cell, umd, or iml")


def _add_config_args(sub: argparse.ArgumentParser, with_costs: bool) -> None:
    sub.add_argument("--config", required=True, help="path to the run-config file")
    sub.add_argument("--out", help="output directory (overrides output_dir)")
    sub.add_argument("--start", help="first rebalance date, YYYY-MM-DD")
    sub.add_argument("--end", help="last backtest date, YYYY-MM-DD")
    if with_costs:
        sub.add_argument("--costs", help="comma-separated bps levels, e.g. 0,10,50,100")


def _load(args, with_costs: bool) -> RunConfig:
    config = load_config(args.config)
    return apply_overrides(config, out=args.out,
                           costs=(args.costs if with_costs else None),
                           start=args.start, end=args.end)


def _cmd_run(args) -> int:
    config = _load(args, with_costs=True)
    bundle = run_full_study(config)
    paths = write_study_outputs(bundle, config.output_dir)
    if not args.no_figures:
        from .figures import render_study_figures
        paths += render_study_figures(bundle.universe_series,
                                      bundle.equity_series, config.output_dir)
    print(f"study window {bundle.start} .. {bundle.end}")
    for path in paths:
        print(f"wrote {path}")
    return 0


def _cmd_universe(args) -> int:
    config = _load(args, with_costs=False)
    exclusions = (read_exclusions(config.exclusions_path)
                  if config.exclusions_path else frozenset())
    panel = read_panel_csv(config.panel_path, exclusions=exclusions)
    criteria = config.criteria()
    cfg = config.signal_config()
    start = config.start or find_default_start(panel, criteria, cfg)
    end = config.end or panel.date_span[1]
    from .portfolio import rebalance_schedule
    dates = rebalance_schedule(start, end, config.rebalance_days)
    series = universe_counts(panel, dates, criteria)

    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "universe_counts.csv"
    path.write_text(render_universe_counts(series), encoding="utf-8", newline="\n")
    paths = [path]
    if not args.no_figures:
        from .figures import UNIVERSE_FIGURE, render_universe_figure
        paths.append(render_universe_figure(series, out / UNIVERSE_FIGURE))
    for p in paths:
        print(f"wrote {p}")
    return 0


def _cmd_backtest(args) -> int:
    config = _load(args, with_costs=False)
    weighting = Weighting[args.weighting]
    spec = parse_spec_string(args.spec, rebalance_days=config.rebalance_days,
                             cost_bps=args.cost_bps, weighting=weighting)
    exclusions = (read_exclusions(config.exclusions_path)
                  if config.exclusions_path else frozenset())
    panel = read_panel_csv(config.panel_path, exclusions=exclusions)
    criteria = config.criteria()
    cfg = config.signal_config()
    start = config.start or find_default_start(panel, criteria, cfg)
    end = config.end or panel.date_span[1]
    result = run_backtest(panel, spec, criteria, cfg, start, end,
                          config.charge_inception_costs)

    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    name = spec.name()
    returns_path = out / f"backtest_{name}.csv"
    turnover_path = out / f"turnover_{name}.csv"
    returns_path.write_text(render_backtest_csv(result), encoding="utf-8", newline="\n")
    turnover_path.write_text(render_turnover_csv(result), encoding="utf-8", newline="\n")

    values = result.net_values()
    mean = sum(values) / len(values)
    final = result.equity_curve[-1][1]
    print(f"{name}: {len(values)} days, mean daily {100 * mean:.4f}%, "
          f"final equity {final:.6f}, {len(result.skipped_rebalances)} skipped rebalances")
    print(f"wrote {returns_path}")
    print(f"wrote {turnover_path}")
    return 0


def _cmd_synth(args) -> int:
    offsets: tuple[int, ...] = ()
    if args.listing_offsets:
        try:
            offsets = tuple(int(p) for p in args.listing_offsets.split(",") if p.strip())
        except ValueError as exc:
            raise ConfigError(f"bad listing offsets {args.listing_offsets!r}") from exc
    try:
        start_date = dt.date.fromisoformat(args.start_date)
    except ValueError as exc:
        raise ConfigError(f"bad start date {args.start_date!r}") from exc
    try:
        params = SynthParams(seed=args.seed, n_assets=args.assets, n_days=args.days,
                             daily_vol=args.daily_vol,
                             momentum_strength=args.momentum_strength,
                             liquidity_spread=args.liquidity_spread,
                             listing_schedule=offsets,
                             marketcap_base=args.marketcap_base,
                             start_date=start_date)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    panel = gen_panel(params)
    out = Path(args.out)
    if out.parent != Path("."):
        out.parent.mkdir(parents=True, exist_ok=True)
    write_panel_csv(panel, out)
    print(f"wrote {out} ({len(panel.assets())} assets, {panel.n_records()} records)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="momliq",
        description="Momentum x liquidity double-sort backtests on daily asset panels.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    run = subs.add_parser("run", help="full study: grid, cost table, series files")
    _add_config_args(run, with_costs=True)
    run.add_argument("--no-figures", action="store_true", help="skip PNG rendering")
    run.set_defaults(func=_cmd_run)

    uni = subs.add_parser("universe", help="universe-size series only")
    _add_config_args(uni, with_costs=False)
    uni.add_argument("--no-figures", action="store_true", help="skip PNG rendering")
    uni.set_defaults(func=_cmd_universe)

    bt = subs.add_parser("backtest", help="run one portfolio spec")
    _add_config_args(bt, with_costs=False)
    bt.add_argument("--spec", required=True,
                    help='"market", "cell:LOW,HIGH", "umd:LOW", or "iml:HIGH"')
    bt.add_argument("--cost-bps", type=float, default=0.0,
                    help="one-way trading cost in basis points")
    bt.add_argument("--weighting", choices=("EQUAL", "CAP"), default="EQUAL",
                    help="cell weighting scheme")
    bt.set_defaults(func=_cmd_backtest)

    synth = subs.add_parser("synth", help="write a seeded synthetic panel CSV")
    synth.add_argument("--seed", type=int, required=True)
    synth.add_argument("--assets", type=int, default=20)
    synth.add_argument("--days", type=int, default=120)
    synth.add_argument("--daily-vol", type=float, default=0.02)
    synth.add_argument("--momentum-strength", type=float, default=0.0)
    synth.add_argument("--liquidity-spread", type=float, default=1.0)
    synth.add_argument("--listing-offsets", default="",
                       help="comma-separated listing-day offsets, cycled over assets")
    synth.add_argument("--marketcap-base", type=float, default=5.0e8)
    synth.add_argument("--start-date", default="2020-01-01")
    synth.add_argument("--out", default="panel.csv", help="output CSV path")
    synth.set_defaults(func=_cmd_synth)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
