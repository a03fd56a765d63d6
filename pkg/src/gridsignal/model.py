"""Payoffs of the consumer-aggregator signaling game and their cell integrals.

The consumer needs power s in [0, 1] and values the allocation a through a
quadratic mismatch payoff -(s - a)^2 + K.  The aggregator shares that payoff
but additionally pays an exponential grid-operating cost b * e^a (transformer
ageing accelerates exponentially above nominal load), so the two sides want
different allocations whenever b > 0.  The power need is uniform on [0, 1];
cell integrals below are taken with unit density so that sums over the cells
of a partition give ex-ante expectations without reweighting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "ModelParams",
    "Interval",
    "consumer_payoff",
    "aggregator_payoff",
    "interval_integral_consumer",
    "interval_integral_aggregator",
    "single_crossing_check",
]


@dataclass(frozen=True)
class ModelParams:
    """Game parameterization: grid-cost weight b >= 0 and payoff constant K."""

    b: float
    K: float = 1.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.b) and self.b >= 0):
            raise ValueError(f"bias b must be finite and >= 0, got {self.b}")
        if not math.isfinite(self.K):
            raise ValueError(f"payoff constant K must be finite, got {self.K}")


@dataclass(frozen=True)
class Interval:
    """A cell [lo, hi] of the normalized power-need space [0, 1]."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.lo <= self.hi <= 1.0):
            raise ValueError(f"need 0 <= lo <= hi <= 1, got [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)


def _check_unit(name: str, value: float) -> None:
    if not (0.0 <= value <= 1.0):
        raise ValueError(f"{name} must be in [0, 1], got {value}")


def consumer_payoff(p: ModelParams, s: float, a: float) -> float:
    """Consumer payoff -(s - a)^2 + K for need s and allocation a."""
    _check_unit("s", s)
    _check_unit("a", a)
    return -((s - a) ** 2) + p.K


def aggregator_payoff(p: ModelParams, s: float, a: float) -> float:
    """Aggregator payoff: the consumer payoff minus the grid cost b * e^a."""
    return consumer_payoff(p, s, a) - p.b * math.exp(a)


def interval_integral_consumer(p: ModelParams, cell: Interval, a: float) -> float:
    """Integral of the consumer payoff over the cell at fixed action a.

    Closed form under the unit-density uniform prior:
    K * width - [(hi - a)^3 - (lo - a)^3] / 3.
    """
    return p.K * cell.width - ((cell.hi - a) ** 3 - (cell.lo - a) ** 3) / 3.0


def interval_integral_aggregator(p: ModelParams, cell: Interval, a: float) -> float:
    """Integral of the aggregator payoff over the cell at fixed action a."""
    return interval_integral_consumer(p, cell, a) - p.b * math.exp(a) * cell.width


# Finite-difference step and interior clipping for the curvature checks.
_FD_STEP = 1e-4
_GRID_LO = 0.01
_GRID_HI = 0.99
_SCAN_POINTS = 2001


def single_crossing_check(p: ModelParams, grid_n: int) -> bool:
    """Numerically verify the curvature conditions behind interval equilibria.

    On a grid_n x grid_n grid over (s, a) in [0.01, 0.99]^2, checks for both
    payoffs, via central differences with step 1e-4:

      * strict concavity in s (second s-derivative < 0 everywhere),
      * strictly positive s-a cross-partial everywhere,
      * for every s, some a in a fine scan of [0, 1] makes |du/ds| <= 1e-3.

    The grid stays clear of the boundary so the central stencils never leave
    the payoff domain [0, 1]^2.
    """
    if grid_n < 3:
        raise ValueError(f"grid_n must be >= 3, got {grid_n}")
    h = _FD_STEP
    step = (_GRID_HI - _GRID_LO) / (grid_n - 1)
    grid = [_GRID_LO + i * step for i in range(grid_n)]
    scan = [j / (_SCAN_POINTS - 1) for j in range(_SCAN_POINTS)]

    for u in (consumer_payoff, aggregator_payoff):
        for s in grid:
            for a in grid:
                d2s = (u(p, s + h, a) - 2.0 * u(p, s, a) + u(p, s - h, a)) / (h * h)
                if not d2s < 0.0:
                    return False
                cross = (
                    u(p, s + h, a + h)
                    - u(p, s + h, a - h)
                    - u(p, s - h, a + h)
                    + u(p, s - h, a - h)
                ) / (4.0 * h * h)
                if not cross > 0.0:
                    return False
        for s in grid:
            best = min(
                abs(u(p, s + h, a) - u(p, s - h, a)) / (2.0 * h) for a in scan
            )
            if best > 1e-3:
                return False
    return True
