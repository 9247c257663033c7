"""Tests for render module."""

import json

import numpy as np
import pytest

from UWCell.render import (
    format_length,
    format_probability,
    format_ratio,
    render_record,
    render_table,
)


class TestFormatters:
    def test_length(self):
        assert format_length(0.5) == "0.5"
        assert format_length(1 / 3) == "0.333333333"

    def test_probability(self):
        assert format_probability(0.96163251) == "0.9616325"
        assert format_probability(1.0) == "1.0000000"

    def test_ratio(self):
        assert format_ratio(2.0) == "2.0"
        assert format_ratio(8 / 3) == "2.6666667"


class TestRenderTable:
    def test_csv(self):
        text = render_table(["k", "p"], [("1", "0.5"), ("2", None)])
        assert text == "k,p\n1,0.5\n2,"

    def test_csv_header_only(self):
        assert render_table(["u", "v", "w"], []) == "u,v,w"

    def test_json(self):
        records = json.loads(render_table(["k", "p"], [(1, "0.5"), (2, None)], fmt="json"))
        assert records == [{"k": "1", "p": "0.5"}, {"k": "2", "p": None}]

    def test_unknown_format(self):
        with pytest.raises(ValueError, match="Unknown output format"):
            render_table(["a"], [], fmt="xml")


class TestRenderRecord:
    def test_json_keeps_numbers(self):
        record = {"nodes": np.int64(46), "coverage_fraction": 1.0, "connected": True, "mode": None}
        assert json.loads(render_record(record, fmt="json")) == {
            "nodes": 46, "coverage_fraction": 1.0, "connected": True, "mode": None,
        }

    def test_csv_applies_formatters(self):
        record = {"model": "TO", "coverage_fraction": 0.5, "mode": None}
        text = render_record(record, formatters={"coverage_fraction": format_probability})
        assert text == "key,value\nmodel,TO\ncoverage_fraction,0.5000000\nmode,"
