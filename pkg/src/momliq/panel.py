"""Daily asset panel: ingestion, validation, and basic return arithmetic.

The panel is the single source of truth for everything downstream. It maps
(asset_id, date) to one validated daily record and is immutable after load.
Gaps in an asset's history are allowed; operations that need a missing day
raise MissingDataError rather than synthesizing prices.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import MissingDataError, PanelLoadError

CSV_COLUMNS = ("date", "asset_id", "price_usd", "volume_usd", "marketcap_usd")

ONE_DAY = dt.timedelta(days=1)


@dataclass(frozen=True)
class DailyRecord:
    """One asset-day observation, all values in USD."""

    date: dt.date
    price_usd: float
    volume_usd: float
    marketcap_usd: float


class Panel:
    """Validated daily (asset, date) -> DailyRecord store.

    Treat instances as immutable: every reader may share one Panel freely.
    """

    def __init__(self, records_by_asset: Mapping[str, Mapping[dt.date, DailyRecord]],
                 exclusions: frozenset[str] = frozenset()):
        self._records: dict[str, dict[dt.date, DailyRecord]] = {
            a: dict(recs) for a, recs in records_by_asset.items() if recs
        }
        self._dates: dict[str, list[dt.date]] = {
            a: sorted(recs) for a, recs in self._records.items()
        }
        self.exclusions = frozenset(exclusions)
        all_dates = [d for ds in self._dates.values() for d in (ds[0], ds[-1])]
        self.date_span: tuple[dt.date, dt.date] | None = (
            (min(all_dates), max(all_dates)) if all_dates else None
        )

    def assets(self) -> list[str]:
        return sorted(self._records)

    def record(self, asset: str, date: dt.date) -> DailyRecord | None:
        recs = self._records.get(asset)
        return recs.get(date) if recs else None

    def has_record(self, asset: str, date: dt.date) -> bool:
        return self.record(asset, date) is not None

    def first_date(self, asset: str) -> dt.date | None:
        ds = self._dates.get(asset)
        return ds[0] if ds else None

    def last_date(self, asset: str) -> dt.date | None:
        ds = self._dates.get(asset)
        return ds[-1] if ds else None

    def n_records(self) -> int:
        return sum(len(r) for r in self._records.values())

    def count_records_between(self, asset: str, lo: dt.date, hi: dt.date) -> int:
        """Number of records for asset with lo <= date <= hi."""
        ds = self._dates.get(asset)
        if not ds:
            return 0
        return bisect_right(ds, hi) - bisect_left(ds, lo)

    def records_between(self, asset: str, lo: dt.date, hi: dt.date) -> list[DailyRecord]:
        ds = self._dates.get(asset)
        if not ds:
            return []
        recs = self._records[asset]
        return [recs[d] for d in ds[bisect_left(ds, lo):bisect_right(ds, hi)]]

    def iter_records(self) -> Iterator[tuple[str, DailyRecord]]:
        """All records, sorted by (asset_id, date). Deterministic."""
        for asset in self.assets():
            for d in self._dates[asset]:
                yield asset, self._records[asset][d]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Panel):
            return NotImplemented
        return self._records == other._records and self.exclusions == other.exclusions

    def __repr__(self) -> str:
        return f"Panel(assets={len(self._records)}, records={self.n_records()})"


def _parse_row(row: Mapping[str, str], rownum: int) -> tuple[str, DailyRecord]:
    missing = [c for c in CSV_COLUMNS if row.get(c) in (None, "")]
    if missing:
        raise PanelLoadError(f"row {rownum}: missing field(s) {', '.join(missing)}")
    try:
        date = dt.date.fromisoformat(row["date"].strip())
    except ValueError:
        raise PanelLoadError(f"row {rownum}: malformed date {row['date']!r}") from None
    asset = row["asset_id"].strip()
    if not asset:
        raise PanelLoadError(f"row {rownum}: empty asset_id")
    values = {}
    for col in ("price_usd", "volume_usd", "marketcap_usd"):
        try:
            v = float(row[col])
        except ValueError:
            raise PanelLoadError(f"row {rownum}: malformed number {row[col]!r} in {col}") from None
        if not math.isfinite(v):
            raise PanelLoadError(f"row {rownum}: non-finite {col}")
        values[col] = v
    if values["price_usd"] <= 0:
        raise PanelLoadError(f"row {rownum}: non-positive price_usd for {asset} on {date}")
    if values["volume_usd"] < 0:
        raise PanelLoadError(f"row {rownum}: negative volume_usd for {asset} on {date}")
    if values["marketcap_usd"] < 0:
        raise PanelLoadError(f"row {rownum}: negative marketcap_usd for {asset} on {date}")
    return asset, DailyRecord(date=date, **values)


def load_panel(rows: Iterable[Mapping[str, str]], exclusions: Iterable[str] = ()) -> Panel:
    """Build a Panel from raw row mappings (CSV schema keys).

    Rows for excluded assets are dropped. Duplicate (asset, date) pairs,
    non-positive prices, and malformed fields are hard errors.
    """
    excl = frozenset(exclusions)
    records: dict[str, dict[dt.date, DailyRecord]] = {}
    for rownum, row in enumerate(rows, start=1):
        asset, rec = _parse_row(row, rownum)
        if asset in excl:
            continue
        by_date = records.setdefault(asset, {})
        if rec.date in by_date:
            raise PanelLoadError(f"duplicate record for ({asset}, {rec.date})")
        by_date[rec.date] = rec
    return Panel(records, exclusions=excl)


def read_exclusions(path) -> frozenset[str]:
    """Read an exclusion list: one asset id per line, '#' starts a comment."""
    out = set()
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            token = line.split("#", 1)[0].strip()
            if token:
                out.add(token)
    return frozenset(out)


def read_panel_csv(path, exclusions: Iterable[str] = ()) -> Panel:
    """Load a panel from a CSV file with the canonical header."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise PanelLoadError(f"{path}: empty file, expected header {','.join(CSV_COLUMNS)}")
        got = tuple(name.strip() for name in reader.fieldnames)
        if got != CSV_COLUMNS:
            raise PanelLoadError(
                f"{path}: bad header {','.join(got)!r}, expected {','.join(CSV_COLUMNS)!r}"
            )
        return load_panel(reader, exclusions)


def panel_to_csv_text(panel: Panel) -> str:
    """Serialize back to the input CSV schema, sorted by (asset_id, date).

    Floats are written with repr so a reload reproduces the panel exactly.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for asset, rec in panel.iter_records():
        writer.writerow([
            rec.date.isoformat(), asset,
            repr(rec.price_usd), repr(rec.volume_usd), repr(rec.marketcap_usd),
        ])
    return buf.getvalue()


def write_panel_csv(panel: Panel, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(panel_to_csv_text(panel))


def daily_return(panel: Panel, asset: str, t: dt.date) -> float:
    """Simple return P(t)/P(t-1) - 1. Raises MissingDataError at gaps."""
    today = panel.record(asset, t)
    if today is None:
        raise MissingDataError(asset, t)
    prev = panel.record(asset, t - ONE_DAY)
    if prev is None:
        raise MissingDataError(asset, t - ONE_DAY, detail="needed for return at t")
    return today.price_usd / prev.price_usd - 1.0


def try_daily_return(panel: Panel, asset: str, t: dt.date) -> float | None:
    """daily_return, or None when either endpoint record is absent."""
    today = panel.record(asset, t)
    if today is None:
        return None
    prev = panel.record(asset, t - ONE_DAY)
    if prev is None:
        return None
    return today.price_usd / prev.price_usd - 1.0


def has_history(panel: Panel, asset: str, t: dt.date, window_days: int,
                min_coverage: float = 0.95) -> tuple[bool, float]:
    """Coverage of [t - window_days, t] and whether it clears min_coverage.

    Coverage counts days carrying a record out of the window_days + 1 days
    in the closed window. Unknown assets get coverage 0.0.
    """
    if window_days < 1:
        raise ValueError("window_days must be >= 1")
    n_have = panel.count_records_between(asset, t - dt.timedelta(days=window_days), t)
    coverage = n_have / (window_days + 1)
    return coverage >= min_coverage, coverage


def day_range(start: dt.date, end: dt.date) -> Iterator[dt.date]:
    """Every calendar day from start to end inclusive."""
    d = start
    while d <= end:
        yield d
        d += ONE_DAY
