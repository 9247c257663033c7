"""Tests for quadrature module."""

import math

import numpy as np
import pytest

from UWCell.quadrature import QuadratureError, simpson_refined


class TestSimpsonRefined:
    def test_sine(self):
        value, intervals = simpson_refined(np.sin, 0.0, math.pi)
        assert value == pytest.approx(2.0, rel=1e-8)
        assert intervals >= 16

    def test_exponential(self):
        value, _ = simpson_refined(np.exp, 0.0, 1.0, rtol=1e-10)
        assert value == pytest.approx(math.e - 1, rel=1e-10)

    def test_cubic_is_exact(self):
        value, intervals = simpson_refined(lambda x: x**3, 0.0, 2.0)
        assert value == pytest.approx(4.0, rel=1e-12)
        assert intervals == 16

    def test_empty_interval(self):
        assert simpson_refined(np.exp, 1.0, 1.0) == (0.0, 0)

    def test_reversed_interval(self):
        value, _ = simpson_refined(np.sin, math.pi, 0.0)
        assert value == pytest.approx(-2.0, rel=1e-8)

    def test_odd_minimum_rounded_up(self):
        _, intervals = simpson_refined(lambda x: x**2, 0.0, 1.0, min_intervals=5)
        assert intervals == 12

    def test_budget_exhausted(self):
        with pytest.raises(QuadratureError, match="did not converge"):
            simpson_refined(np.sqrt, 0.0, 1.0, rtol=1e-15, max_doublings=2)
