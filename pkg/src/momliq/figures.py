"""PNG figures rendered next to the CSV artifacts.

The CSVs are the canonical outputs; these charts are the convenience view
of the same series (universe size over time, equity curves). Rendering is
headless (Agg) so runs work without a display.
"""

from __future__ import annotations

import datetime as dt
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .perfstats import Series

UNIVERSE_FIGURE = "universe_counts.png"
EQUITY_FIGURE = "equity_curves.png"

# Keep PNG output stable across runs: no mutable metadata.
_PNG_KWARGS = {"dpi": 150, "metadata": {"Software": None}}


def render_universe_figure(series: list[tuple[dt.date, int]], path) -> Path:
    """Universe size at each rebalance date."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(8.0, 4.5))
    ax.plot([d for d, _ in series], [n for _, n in series],
            marker="o", markersize=3, linewidth=1.2)
    ax.set_xlabel("rebalance date")
    ax.set_ylabel("assets in universe")
    ax.set_title("Universe size")
    ax.grid(True, alpha=0.3)
    fig.autofmt_xdate()
    fig.tight_layout()
    fig.savefig(path, **_PNG_KWARGS)
    plt.close(fig)
    return path


def render_equity_figure(curves: dict[str, Series], path) -> Path:
    """Equity curves on a log scale, one line per strategy."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(8.0, 4.5))
    for strategy in sorted(curves):
        series = curves[strategy]
        ax.plot([d for d, _ in series], [v for _, v in series],
                linewidth=1.2, label=strategy)
    ax.set_yscale("log")
    ax.set_xlabel("date")
    ax.set_ylabel("equity (start = 1)")
    ax.set_title("Equity curves")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.autofmt_xdate()
    fig.tight_layout()
    fig.savefig(path, **_PNG_KWARGS)
    plt.close(fig)
    return path


def render_study_figures(universe_series, equity_series, out_dir) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return [
        render_universe_figure(universe_series, out / UNIVERSE_FIGURE),
        render_equity_figure(equity_series, out / EQUITY_FIGURE),
    ]
