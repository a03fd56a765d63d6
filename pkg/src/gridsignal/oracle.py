"""Brute-force reference implementations, independent of the solvers.

Used by the test suite and the verification CLI path to cross-check the
closed-form routes.  Nothing here imports from the equilibrium module: best
actions come from exhaustive grid search over Riemann sums, and the babbling
threshold from a scalar bisection written out locally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import Interval, ModelParams

__all__ = ["GridSpec", "grid_best_action", "grid_best_message", "babbling_threshold"]

# Midpoint-rule sample count for the per-cell expected payoff.
_RIEMANN_POINTS = 10_000


@dataclass(frozen=True)
class GridSpec:
    """Resolution of the exhaustive search grids."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 10:
            raise ValueError(f"grid resolution must be >= 10, got {self.n}")


def grid_best_action(p: ModelParams, cell: Interval, g: GridSpec) -> float:
    """Argmax over the action grid {0, 1/n, ..., 1} of the cell-expected payoff.

    The expectation is a midpoint Riemann sum of -(s - a)^2 + K - b*e^a over
    the cell.  Expanding the square lets the sum over samples be taken once
    (mean of s and of s^2) instead of per action, which is an exact algebraic
    rearrangement of the same Riemann sum.  Ties go to the smallest action.
    """
    actions = np.linspace(0.0, 1.0, g.n + 1)
    if cell.width == 0.0:
        mean_s, mean_s2 = cell.lo, cell.lo**2
    else:
        samples = cell.lo + (np.arange(_RIEMANN_POINTS) + 0.5) * (
            cell.width / _RIEMANN_POINTS
        )
        mean_s = float(samples.mean())
        mean_s2 = float((samples**2).mean())
    values = p.K - p.b * np.exp(actions) - (mean_s2 - 2.0 * actions * mean_s + actions**2)
    return float(actions[int(np.argmax(values))])


def grid_best_message(p: ModelParams, s: float, actions: list[float]) -> int:
    """Index of the allocation the consumer prefers for need s.

    Maximizing -(s - a)^2 + K is minimizing the squared mismatch; ties go to
    the lowest index (boundary states are exactly indifferent).
    """
    if not actions:
        raise ValueError("need at least one action")
    best = 0
    best_gap = (s - actions[0]) ** 2
    for m in range(1, len(actions)):
        gap = (s - actions[m]) ** 2
        if gap < best_gap:
            best, best_gap = m, gap
    return best


def babbling_threshold(tol: float = 1e-9) -> float:
    """Bias above which only the uninformative equilibrium remains.

    In the limit of the smallest admissible first boundary (s1 -> b), the
    two-cell recursion reaches 3b + b*e^{2b}; the threshold is the bias where
    that reach equals 1, found by bisection on [0, 1] to width tol.
    """
    if tol <= 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if 3.0 * mid + mid * math.exp(2.0 * mid) < 1.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
