"""Composite Simpson integration with interval doubling."""

from __future__ import annotations

import logging
from collections.abc import Callable

import numpy as np
from scipy.integrate import simpson

logger = logging.getLogger(__name__)


class QuadratureError(ArithmeticError):
    """Raised when refinement stops before the estimate converges."""


def simpson_refined(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    rtol: float = 1e-8,
    atol: float = 0.0,
    min_intervals: int = 8,
    max_doublings: int = 20,
) -> tuple[float, int]:
    """Integrate a vectorized ``f`` over [a, b].

    The number of Simpson intervals doubles until two successive estimates
    differ by at most ``max(atol, rtol * |estimate|)``.

    Returns:
        Tuple of (integral_value, intervals_used).

    Raises:
        QuadratureError: if ``max_doublings`` refinements do not converge.
    """
    if a == b:
        return 0.0, 0
    n = max(2, min_intervals + (min_intervals % 2))
    x = np.linspace(a, b, n + 1)
    previous = float(simpson(f(x), x=x))
    current = previous
    for step in range(max_doublings):
        n *= 2
        x = np.linspace(a, b, n + 1)
        current = float(simpson(f(x), x=x))
        if abs(current - previous) <= max(atol, rtol * abs(current)):
            logger.debug("Simpson converged on [%g, %g] with %d intervals", a, b, n)
            return current, n
        if step < max_doublings - 1:
            previous = current
    raise QuadratureError(
        f"Simpson rule did not converge on [{a}, {b}] after {n} intervals: "
        f"last estimates {previous!r} and {current!r}"
    )
