"""Flat config file parsing, validation, and CLI override layering."""

import datetime as dt

import pytest

from momliq.config import (
    DEFAULT_COST_BPS,
    RunConfig,
    apply_overrides,
    config_from_text,
    load_config,
    parse_cost_list,
    read_config_text,
)
from momliq.errors import ConfigError

MINIMAL = "panel_path = panel.csv\n"


def test_minimal_config_uses_defaults():
    cfg = config_from_text(MINIMAL)
    assert cfg.panel_path == "panel.csv"
    assert cfg.exclusions_path is None
    assert cfg.start is None and cfg.end is None
    assert cfg.history_days == 182
    assert cfg.min_marketcap_usd == 1_000_000.0
    assert cfg.min_coverage == 0.95
    assert cfg.momentum_days == 14
    assert cfg.illiq_days == 14
    assert cfg.min_volume_days == 7
    assert cfg.rebalance_days == 14
    assert cfg.cost_bps_list == DEFAULT_COST_BPS
    assert cfg.periods_per_year == 365
    assert cfg.charge_inception_costs is True
    assert cfg.output_dir == "out"


def test_full_config_round_trip():
    text = """
    # study window
    panel_path = data/panel.csv
    exclusions_path = data/stables.txt
    start = 2020-07-01
    end = 2021-07-01
    history_days = 90
    min_marketcap_usd = 5e6
    min_coverage = 0.9
    momentum_days = 10
    illiq_days = 10
    min_volume_days = 5
    rebalance_days = 7      # weekly
    cost_bps_list = 0, 25, 75
    periods_per_year = 252
    charge_inception_costs = no
    output_dir = results
    seed = 7
    """
    cfg = config_from_text(text)
    assert cfg.start == dt.date(2020, 7, 1)
    assert cfg.end == dt.date(2021, 7, 1)
    assert cfg.history_days == 90
    assert cfg.min_marketcap_usd == 5e6
    assert cfg.cost_bps_list == (0.0, 25.0, 75.0)
    assert cfg.rebalance_days == 7
    assert cfg.charge_inception_costs is False
    assert cfg.seed == 7
    crit = cfg.criteria()
    assert crit.history_days == 90 and crit.min_coverage == 0.9
    sig = cfg.signal_config()
    assert sig.momentum_days == 10 and sig.min_volume_days == 5


def test_comments_and_blank_lines_ignored():
    raw = read_config_text("# top\n\npanel_path = p.csv  # trailing\n\n")
    assert raw == {"panel_path": "p.csv"}


def test_line_without_equals_rejected():
    with pytest.raises(ConfigError, match="line 2"):
        read_config_text("panel_path = p.csv\njust words\n")


def test_duplicate_key_rejected():
    with pytest.raises(ConfigError, match="duplicate key 'seed'"):
        read_config_text("seed = 1\nseed = 2\n")


def test_empty_key_rejected():
    with pytest.raises(ConfigError, match="empty key"):
        read_config_text("= 3\n")


def test_unknown_key_rejected():
    with pytest.raises(ConfigError, match="unknown config key 'panel'"):
        config_from_text("panel = p.csv\n")


def test_panel_path_required():
    with pytest.raises(ConfigError, match="panel_path"):
        config_from_text("seed = 1\n")


def test_bad_date_rejected():
    with pytest.raises(ConfigError, match="expected YYYY-MM-DD"):
        config_from_text(MINIMAL + "start = 01/07/2020\n")


def test_bad_int_and_float_rejected():
    with pytest.raises(ConfigError, match="expected an integer"):
        config_from_text(MINIMAL + "rebalance_days = fortnight\n")
    with pytest.raises(ConfigError, match="expected a number"):
        config_from_text(MINIMAL + "min_coverage = most\n")


def test_bad_bool_rejected():
    with pytest.raises(ConfigError, match="expected true/false"):
        config_from_text(MINIMAL + "charge_inception_costs = maybe\n")


def test_parse_cost_list():
    assert parse_cost_list("0,10,50,100") == (0.0, 10.0, 50.0, 100.0)
    assert parse_cost_list(" 5 , 15 ") == (5.0, 15.0)
    with pytest.raises(ConfigError):
        parse_cost_list(" , ")
    with pytest.raises(ConfigError):
        parse_cost_list("ten")


def test_negative_cost_rejected():
    with pytest.raises(ConfigError, match=">= 0"):
        config_from_text(MINIMAL + "cost_bps_list = -5\n")


def test_start_must_precede_end():
    with pytest.raises(ConfigError, match="start must be before end"):
        config_from_text(MINIMAL + "start = 2021-01-01\nend = 2020-01-01\n")


def test_criteria_validation_surfaces_as_config_error():
    with pytest.raises(ConfigError):
        config_from_text(MINIMAL + "min_coverage = 1.5\n")
    with pytest.raises(ConfigError):
        config_from_text(MINIMAL + "momentum_days = 0\n")


def test_load_config(tmp_path):
    path = tmp_path / "study.cfg"
    path.write_text(MINIMAL + "seed = 3\n", encoding="utf-8")
    cfg = load_config(path)
    assert cfg.seed == 3
    with pytest.raises(ConfigError, match="cannot read config"):
        load_config(tmp_path / "absent.cfg")


def test_apply_overrides():
    base = config_from_text(MINIMAL)
    same = apply_overrides(base)
    assert same is base
    out = apply_overrides(base, out="elsewhere", costs="0,40",
                          start="2020-09-01", end="2021-02-01")
    assert out.output_dir == "elsewhere"
    assert out.cost_bps_list == (0.0, 40.0)
    assert out.start == dt.date(2020, 9, 1)
    assert out.end == dt.date(2021, 2, 1)
    # Untouched fields survive.
    assert out.panel_path == base.panel_path
    assert base.output_dir == "out"


def test_override_validation_still_applies():
    base = config_from_text(MINIMAL)
    with pytest.raises(ConfigError):
        apply_overrides(base, costs="")
    with pytest.raises(ConfigError):
        apply_overrides(base, start="2022-01-01", end="2021-01-01")
