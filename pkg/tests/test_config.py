"""Tests for config module."""

import logging

import pytest

from UWCell.cli import build_parser
from UWCell.config import apply_config_defaults, load_config
from UWCell.models import CellShape
from UWCell.parsers import InputParseError

PLAN_ARGS = ["plan", "--r-bs", "1", "--min", "0,0,0", "--max", "1,1,1"]


class TestLoadConfig:
    def test_reads_file(self, tmp_path):
        path = tmp_path / "run.conf"
        path.write_text("# survey\nseed = 7\nr-bb = 1.5\n", encoding="utf-8")
        assert load_config(path) == {"seed": "7", "r_bb": "1.5"}

    def test_error_names_file(self, tmp_path):
        path = tmp_path / "bad.conf"
        path.write_text("seed 7\n", encoding="utf-8")
        with pytest.raises(InputParseError, match="bad.conf: Line 1"):
            load_config(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_config(tmp_path / "absent.conf")


class TestApplyConfigDefaults:
    def test_fills_required_option(self):
        parser = build_parser()
        apply_config_defaults(parser, {"r_bb": "1.5"})
        args = parser.parse_args(PLAN_ARGS)
        assert args.r_bb == 1.5

    def test_flag_wins(self):
        parser = build_parser()
        apply_config_defaults(parser, {"r_bb": "1.5"})
        args = parser.parse_args([*PLAN_ARGS, "--r-bb", "2"])
        assert args.r_bb == 2.0

    def test_flag_name_alias(self):
        parser = build_parser()
        apply_config_defaults(parser, {"format": "json", "verbose": "2"})
        args = parser.parse_args(["energy"])
        assert args.output_format == "json"
        assert args.verbose == 2

    def test_typed_values(self):
        parser = build_parser()
        apply_config_defaults(parser, {"n": "1, 8 27", "model": "to", "no_absorption": "yes"})
        args = parser.parse_args(["sir"])
        assert args.n == [1, 8, 27]
        assert args.no_absorption is True
        args = parser.parse_args([*PLAN_ARGS, "--r-bb", "1"])
        assert args.model is CellShape.TO

    def test_invalid_value(self):
        with pytest.raises(InputParseError, match="Config value for seed is invalid"):
            apply_config_defaults(build_parser(), {"seed": "many"})

    def test_invalid_choice(self):
        with pytest.raises(InputParseError, match="must be one of"):
            apply_config_defaults(build_parser(), {"format": "xml"})

    def test_unknown_key_warns(self, caplog):
        with caplog.at_level(logging.WARNING, logger="UWCell.config"):
            apply_config_defaults(build_parser(), {"bogus": "1", "config": "x"})
        assert "Ignoring unknown config key: bogus" in caplog.text
        assert "Ignoring unknown config key: config" not in caplog.text
