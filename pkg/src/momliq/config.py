"""Run configuration: a flat key = value text file plus CLI overrides.

The file format is deliberately dumb: one `key = value` per line, blank
lines and `#` comments ignored. Unknown keys are rejected so typos fail
loudly instead of silently running with defaults.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, replace

from .errors import ConfigError
from .signals import SignalConfig
from .universe import InclusionCriteria

DEFAULT_COST_BPS = (0.0, 10.0, 50.0, 100.0)


@dataclass(frozen=True)
class RunConfig:
    """Everything a full study run needs, resolved and validated."""

    panel_path: str
    exclusions_path: str | None = None
    start: dt.date | None = None        # None: first viable rebalance date
    end: dt.date | None = None          # None: last panel date
    history_days: int = 182
    min_marketcap_usd: float = 1_000_000.0
    min_coverage: float = 0.95
    momentum_days: int = 14
    illiq_days: int = 14
    min_volume_days: int = 7
    rebalance_days: int = 14
    cost_bps_list: tuple[float, ...] = DEFAULT_COST_BPS
    periods_per_year: int = 365
    charge_inception_costs: bool = True
    output_dir: str = "out"
    seed: int | None = None             # used by synthetic-mode helpers only

    def __post_init__(self):
        if not self.panel_path:
            raise ConfigError("panel_path is required")
        if not self.cost_bps_list:
            raise ConfigError("cost_bps_list must not be empty")
        if any(c < 0 for c in self.cost_bps_list):
            raise ConfigError("cost_bps_list entries must be >= 0")
        if self.rebalance_days < 1:
            raise ConfigError("rebalance_days must be >= 1")
        if self.periods_per_year < 1:
            raise ConfigError("periods_per_year must be >= 1")
        if self.start is not None and self.end is not None and self.start >= self.end:
            raise ConfigError("start must be before end")
        try:
            self.criteria()
            self.signal_config()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def criteria(self) -> InclusionCriteria:
        return InclusionCriteria(history_days=self.history_days,
                                 min_marketcap_usd=self.min_marketcap_usd,
                                 min_coverage=self.min_coverage)

    def signal_config(self) -> SignalConfig:
        return SignalConfig(momentum_days=self.momentum_days,
                            illiq_days=self.illiq_days,
                            min_volume_days=self.min_volume_days)


def _parse_date(key: str, raw: str) -> dt.date:
    try:
        return dt.date.fromisoformat(raw)
    except ValueError as exc:
        raise ConfigError(f"{key}: expected YYYY-MM-DD, got {raw!r}") from exc


def _parse_int(key: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"{key}: expected an integer, got {raw!r}") from exc


def _parse_float(key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"{key}: expected a number, got {raw!r}") from exc


def _parse_bool(key: str, raw: str) -> bool:
    low = raw.lower()
    if low in ("true", "yes", "1", "on"):
        return True
    if low in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"{key}: expected true/false, got {raw!r}")


def parse_cost_list(raw: str) -> tuple[float, ...]:
    """Comma-separated bps levels, e.g. "0,10,50,100"."""
    parts = [p.strip() for p in raw.split(",") if p.strip()]
    if not parts:
        raise ConfigError("cost_bps_list must not be empty")
    return tuple(_parse_float("cost_bps_list", p) for p in parts)


def read_config_text(text: str) -> dict[str, str]:
    """Raw key -> value strings from flat `key = value` lines."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected key = value, got {line!r}")
        key, value = stripped.split("=", 1)
        key = key.strip()
        value = value.strip()
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value
    return raw


_PARSERS = {
    "panel_path": lambda k, v: v,
    "exclusions_path": lambda k, v: v,
    "start": _parse_date,
    "end": _parse_date,
    "history_days": _parse_int,
    "min_marketcap_usd": _parse_float,
    "min_coverage": _parse_float,
    "momentum_days": _parse_int,
    "illiq_days": _parse_int,
    "min_volume_days": _parse_int,
    "rebalance_days": _parse_int,
    "cost_bps_list": lambda k, v: parse_cost_list(v),
    "periods_per_year": _parse_int,
    "charge_inception_costs": _parse_bool,
    "output_dir": lambda k, v: v,
    "seed": _parse_int,
}


def config_from_text(text: str) -> RunConfig:
    raw = read_config_text(text)
    kwargs = {}
    for key, value in raw.items():
        parser = _PARSERS.get(key)
        if parser is None:
            raise ConfigError(f"unknown config key {key!r}")
        kwargs[key] = parser(key, value)
    if "panel_path" not in kwargs:
        raise ConfigError("panel_path is required")
    return RunConfig(**kwargs)


def load_config(path) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return config_from_text(text)


def apply_overrides(config: RunConfig, out: str | None = None,
                    costs: str | None = None, start: str | None = None,
                    end: str | None = None) -> RunConfig:
    """Command-line overrides layered on top of a parsed config."""
    changes: dict = {}
    if out is not None:
        changes["output_dir"] = out
    if costs is not None:
        changes["cost_bps_list"] = parse_cost_list(costs)
    if start is not None:
        changes["start"] = _parse_date("start", start)
    if end is not None:
        changes["end"] = _parse_date("end", end)
    return replace(config, **changes) if changes else config
