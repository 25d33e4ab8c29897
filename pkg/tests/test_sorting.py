"""Rank-based tercile assignment and the bivariate sort."""

import datetime as dt

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from momliq.errors import EmptyInputError
from momliq.signals import SignalSnapshot
from momliq.sorting import TercileLabel, _tail_count, assign_terciles, bivariate_sort

LOW, MID, HIGH = TercileLabel.LOW, TercileLabel.MID, TercileLabel.HIGH


def names(n):
    return [f"A{i:02d}" for i in range(n)]


def counts(labels):
    return (sum(1 for v in labels.values() if v is LOW),
            sum(1 for v in labels.values() if v is MID),
            sum(1 for v in labels.values() if v is HIGH))


def test_distinct_values_ten_assets():
    values = {a: float(i + 1) for i, a in enumerate(names(10))}
    labels = assign_terciles(values)
    assert counts(labels) == (3, 4, 3)
    assert [labels[a] for a in names(10)[:3]] == [LOW, LOW, LOW]
    assert [labels[a] for a in names(10)[-3:]] == [HIGH, HIGH, HIGH]


def test_all_ties_split_by_asset_id():
    values = {a: 7.0 for a in names(10)}
    labels = assign_terciles(values)
    assert counts(labels) == (3, 4, 3)
    ordered = sorted(values)  # ties fall back to lexicographic asset id
    assert all(labels[a] is LOW for a in ordered[:3])
    assert all(labels[a] is MID for a in ordered[3:7])
    assert all(labels[a] is HIGH for a in ordered[7:])


def test_degenerate_sizes():
    assert assign_terciles({"A": 1.0}) == {"A": MID}
    two = assign_terciles({"A": 1.0, "B": 2.0})
    assert two == {"A": LOW, "B": HIGH}
    three = assign_terciles({"A": 1.0, "B": 2.0, "C": 3.0})
    assert three == {"A": LOW, "B": MID, "C": HIGH}


def test_tail_count_rounds_half_up_on_exact_rationals():
    # 0.3 * 15 is exactly 4.5 in rational arithmetic: half rounds up.
    assert _tail_count(0.30, 15) == 5
    assert _tail_count(0.30, 10) == 3
    assert _tail_count(0.30, 5) == 2      # 1.5 -> 2
    assert _tail_count(0.30, 1) == 0      # 0.3 -> 0
    assert _tail_count(0.30, 2) == 1      # 0.6 -> 1
    assert _tail_count(0.30, 3) == 1      # 0.9 -> 1
    assert _tail_count(0.30, 4) == 1      # 1.2 -> 1


def test_empty_input_raises():
    with pytest.raises(EmptyInputError):
        assign_terciles({})


def test_invalid_fractions():
    with pytest.raises(ValueError):
        assign_terciles({"A": 1.0}, low_frac=0.5, high_frac=0.5)
    with pytest.raises(ValueError):
        assign_terciles({"A": 1.0}, low_frac=-0.1)


@given(st.lists(st.floats(min_value=-1e6, max_value=1e6,
                          allow_nan=False), min_size=1, max_size=60))
@settings(max_examples=200, deadline=None)
def test_partition_property(values_list):
    values = {f"A{i:03d}": v for i, v in enumerate(values_list)}
    labels = assign_terciles(values)
    assert set(labels) == set(values)
    n_low, n_mid, n_high = counts(labels)
    n = len(values)
    assert n_low + n_mid + n_high == n
    assert n_low == n_high == _tail_count(0.30, n)


@given(st.lists(st.floats(min_value=-100, max_value=100, allow_nan=False),
                min_size=1, max_size=40),
       st.sampled_from(["affine", "cube", "exp"]))
@settings(max_examples=100, deadline=None)
def test_monotone_transform_invariance(values_list, transform):
    values = {f"A{i:03d}": v for i, v in enumerate(values_list)}
    fn = {"affine": lambda v: 3.0 * v + 11.0,
          "cube": lambda v: v ** 3,
          "exp": lambda v: 2.0 ** v}[transform]
    # Rounding can collapse distinct inputs (3*eps + 11 == 11), which turns
    # an order into a tie; only strictly order-preserving samples qualify.
    distinct = sorted(set(values_list))
    ordered = [fn(v) for v in distinct]
    assume(all(a < b for a, b in zip(ordered, ordered[1:])))
    mapped = {a: fn(v) for a, v in values.items()}
    assert assign_terciles(values) == assign_terciles(mapped)


def test_label_order_tracks_value_order():
    values = {"A": -5.0, "B": 0.0, "C": 5.0, "D": 10.0}
    labels = assign_terciles(values)
    assert labels["A"] is LOW and labels["D"] is HIGH


def snap(date, mom, illiq):
    return SignalSnapshot(date=date, momentum=mom, illiquidity=illiq, dropped={})


def test_bivariate_sort_crossed_ranks():
    # 9 assets with fully crossed ranks: each 3x3 cell holds exactly one.
    date = dt.date(2020, 7, 1)
    mom = {f"A{k}": float(k // 3) + (k % 3) * 0.01 for k in range(9)}
    illiq = {f"A{k}": float(k % 3) + (k // 3) * 0.01 for k in range(9)}
    result = bivariate_sort(snap(date, mom, illiq))
    for m in (LOW, MID, HIGH):
        for l in (LOW, MID, HIGH):
            assert len(result.cell_members(m, l)) == 1
    assert result.cell_members(LOW, LOW) == ["A0"]
    assert result.cell_members(HIGH, HIGH) == ["A8"]


def test_bivariate_sort_illiquid_losers_cell():
    date = dt.date(2020, 7, 1)
    mom = {f"A{k}": float(k) for k in range(10)}
    illiq = {f"A{k}": float(9 - k) for k in range(10)}
    result = bivariate_sort(snap(date, mom, illiq))
    # Lowest momentum = A0, which also has the highest illiquidity.
    assert result.momentum_group["A0"] is LOW
    assert result.liquidity_group["A0"] is HIGH
    assert "A0" in result.cell_members(LOW, HIGH)


def test_bivariate_sort_is_order_insensitive():
    date = dt.date(2020, 7, 1)
    mom = {f"A{k}": float(k % 4) for k in range(12)}
    illiq = {f"A{k}": float(k % 5) for k in range(12)}
    fwd = bivariate_sort(snap(date, mom, illiq))
    rev = bivariate_sort(snap(date, dict(reversed(mom.items())),
                              dict(reversed(illiq.items()))))
    assert fwd == rev


def test_bivariate_sort_empty_raises():
    with pytest.raises(EmptyInputError):
        bivariate_sort(snap(dt.date(2020, 7, 1), {}, {}))


def test_sort_result_assets_sorted():
    date = dt.date(2020, 7, 1)
    mom = {"B": 1.0, "A": 2.0, "C": 0.0}
    illiq = {"B": 1.0, "A": 2.0, "C": 0.0}
    result = bivariate_sort(snap(date, mom, illiq))
    assert result.assets() == ["A", "B", "C"]
