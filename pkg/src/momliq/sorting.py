"""Rank-based tercile assignment and the independent bivariate sort.

Assets are sorted ascending by (value, asset_id); the bottom round(0.3 N)
names are LOW and the top round(0.3 N) are HIGH. Labels therefore depend
only on ranks, ties break lexicographically, and the same inputs always
produce the same assignment.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping

from .errors import EmptyInputError
from .signals import SignalSnapshot


class TercileLabel(Enum):
    LOW = "LOW"
    MID = "MID"
    HIGH = "HIGH"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SortResult:
    """Tercile labels per asset for both sort dimensions at one date.

    liquidity_group orders by illiquidity ascending, so LOW = most liquid
    and HIGH = most illiquid.
    """

    date: dt.date
    momentum_group: dict[str, TercileLabel]
    liquidity_group: dict[str, TercileLabel]

    def assets(self) -> list[str]:
        return sorted(self.momentum_group)

    def cell_members(self, mom: TercileLabel, liq: TercileLabel) -> list[str]:
        return [a for a in self.assets()
                if self.momentum_group[a] is mom and self.liquidity_group[a] is liq]


def _tail_count(frac: float, n: int) -> int:
    # round(frac * n) with half rounding up, on exact rationals so results
    # like 0.3 * 15 = 4.5 do not flip with floating-point noise
    exact = Fraction(str(frac)) * n
    return int(exact + Fraction(1, 2)) if exact >= 0 else 0


def assign_terciles(values: Mapping[str, float], low_frac: float = 0.30,
                    high_frac: float = 0.30) -> dict[str, TercileLabel]:
    """Label each asset LOW / MID / HIGH by rank of its value.

    Sort ascending by (value, asset_id); the first round(low_frac*N) are LOW
    and the last round(high_frac*N) are HIGH. Degenerate sizes fall out of
    the rounding: N=1 is all MID, N=2 splits LOW/HIGH with an empty MID.
    """
    if not values:
        raise EmptyInputError("assign_terciles needs at least one value")
    if low_frac < 0 or high_frac < 0:
        raise ValueError("tercile fractions must be >= 0")
    if low_frac + high_frac >= 1:
        raise ValueError("low_frac + high_frac must be < 1")
    ranked = sorted(values, key=lambda a: (values[a], a))
    n = len(ranked)
    n_low = _tail_count(low_frac, n)
    n_high = _tail_count(high_frac, n)
    labels: dict[str, TercileLabel] = {}
    for idx, asset in enumerate(ranked):
        if idx < n_low:
            labels[asset] = TercileLabel.LOW
        elif idx >= n - n_high:
            labels[asset] = TercileLabel.HIGH
        else:
            labels[asset] = TercileLabel.MID
    return labels


def bivariate_sort(snap: SignalSnapshot) -> SortResult:
    """Independent 30/70 sorts on momentum and on illiquidity.

    Each dimension is cut against the full keyed set with its own
    percentiles; an asset's 3x3 cell is just its pair of labels.
    """
    if len(snap) == 0:
        raise EmptyInputError(f"empty signal snapshot at {snap.date}")
    return SortResult(
        date=snap.date,
        momentum_group=assign_terciles(snap.momentum),
        liquidity_group=assign_terciles(snap.illiquidity),
    )
