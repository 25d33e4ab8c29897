"""Momentum x liquidity double-sort backtesting on daily asset panels.

The pipeline: load a validated daily panel, select a point-in-time
universe, compute trailing-return momentum and Amihud-style illiquidity,
double-sort into 3x3 tercile portfolios, run buy-and-hold accounting with
periodic rebalancing and proportional trading costs, and report the
standard performance statistics.
"""

from .config import RunConfig, config_from_text, load_config
from .errors import (
    AxisMismatchError,
    ConfigError,
    EmptyInputError,
    EmptyPortfolioError,
    EngineError,
    IncompleteGridError,
    InsufficientVolumeDataError,
    MissingDataError,
    PanelLoadError,
    TooFewSamplesError,
    WindowTooShortError,
    ZeroTrackingError,
    ZeroVarianceError,
)
from .oracle import oracle_backtest
from .panel import (
    DailyRecord,
    Panel,
    daily_return,
    load_panel,
    read_exclusions,
    read_panel_csv,
    write_panel_csv,
)
from .perfstats import (
    PerfStats,
    compute_perf_stats,
    equity_curve,
    information_ratio,
    ttest_zero,
)
from .portfolio import (
    BacktestResult,
    Holding,
    PortfolioSpec,
    SelectionKind,
    Weighting,
    build_weights,
    drift,
    long_short_series,
    portfolio_day_return,
    rebalance_schedule,
    run_backtest,
    turnover_between,
)
from .reporting import ReportBundle, render_grid, run_full_study, write_study_outputs
from .signals import SignalConfig, SignalSnapshot, amihud, momentum, snapshot
from .sorting import SortResult, TercileLabel, assign_terciles, bivariate_sort
from .synth import SynthParams, gen_panel
from .universe import InclusionCriteria, select_universe, universe_counts

__version__ = "0.1.0"

__all__ = [
    "AxisMismatchError",
    "BacktestResult",
    "ConfigError",
    "DailyRecord",
    "EmptyInputError",
    "EmptyPortfolioError",
    "EngineError",
    "Holding",
    "IncompleteGridError",
    "InclusionCriteria",
    "InsufficientVolumeDataError",
    "MissingDataError",
    "Panel",
    "PanelLoadError",
    "PerfStats",
    "PortfolioSpec",
    "ReportBundle",
    "RunConfig",
    "SelectionKind",
    "SignalConfig",
    "SignalSnapshot",
    "SortResult",
    "SynthParams",
    "TercileLabel",
    "TooFewSamplesError",
    "Weighting",
    "WindowTooShortError",
    "ZeroTrackingError",
    "ZeroVarianceError",
    "amihud",
    "assign_terciles",
    "bivariate_sort",
    "build_weights",
    "compute_perf_stats",
    "config_from_text",
    "daily_return",
    "drift",
    "equity_curve",
    "gen_panel",
    "information_ratio",
    "load_config",
    "load_panel",
    "long_short_series",
    "momentum",
    "oracle_backtest",
    "portfolio_day_return",
    "read_exclusions",
    "read_panel_csv",
    "rebalance_schedule",
    "render_grid",
    "run_backtest",
    "run_full_study",
    "select_universe",
    "snapshot",
    "turnover_between",
    "ttest_zero",
    "universe_counts",
    "write_panel_csv",
    "write_study_outputs",
    "__version__",
]
