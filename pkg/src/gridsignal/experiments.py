"""Ex-ante payoff studies: six information scenarios swept over the bias.

For each bias value the aggregator's expected payoff is computed under no
message, under the most-informative equilibrium, and under full information;
the consumer's under self-allocation (a = s), full information, and the
equilibrium.  All expectations are over the uniform need prior.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .equilibrium import (
    DEFAULT_CELL_CAP,
    DEFAULT_EPSILON,
    EquilibriumProfile,
    best_response_action,
    equilibrium_profile,
    max_messages,
    pointwise_best_action,
)
from .model import (
    Interval,
    ModelParams,
    aggregator_payoff,
    consumer_payoff,
    interval_integral_aggregator,
    interval_integral_consumer,
)
from .numerics import Tolerance, integrate

__all__ = ["ScenarioPayoffs", "ex_ante_payoffs", "scenario_payoffs", "sweep"]

_ORDER_SLACK = 1e-9


@dataclass(frozen=True)
class ScenarioPayoffs:
    """The six scenario expectations at one bias value, plus M*."""

    b: float
    m_star: int
    agg_no_message: float
    agg_equilibrium: float
    agg_full_info: float
    cons_self_serve: float
    cons_full_info: float
    cons_equilibrium: float

    def __post_init__(self) -> None:
        if self.m_star < 1:
            raise ValueError(f"m_star must be >= 1, got {self.m_star}")
        if self.agg_no_message > self.agg_equilibrium + _ORDER_SLACK:
            raise ValueError(
                f"aggregator ordering violated at b={self.b}: "
                f"no_message {self.agg_no_message} > equilibrium {self.agg_equilibrium}"
            )
        if self.agg_equilibrium > self.agg_full_info + _ORDER_SLACK:
            raise ValueError(
                f"aggregator ordering violated at b={self.b}: "
                f"equilibrium {self.agg_equilibrium} > full_info {self.agg_full_info}"
            )
        if self.cons_equilibrium > self.cons_self_serve + _ORDER_SLACK:
            raise ValueError(
                f"consumer ordering violated at b={self.b}: "
                f"equilibrium {self.cons_equilibrium} > self_serve {self.cons_self_serve}"
            )


def ex_ante_payoffs(p: ModelParams, profile: EquilibriumProfile) -> tuple[float, float]:
    """(aggregator, consumer) expected payoffs of a profile, summed over cells."""
    agg = 0.0
    cons = 0.0
    for cell, action in zip(profile.partition.cells, profile.actions):
        agg += interval_integral_aggregator(p, cell, action)
        cons += interval_integral_consumer(p, cell, action)
    return agg, cons


def _full_info_payoffs(p: ModelParams, quad_tol: float) -> tuple[float, float]:
    """Expected payoffs when the aggregator observes the need exactly.

    The optimal allocation rule switches branch at s = b/2, so the integral
    is split there (the integrand is continuous but kinked).
    """
    kink = 0.5 * p.b
    pieces = [(0.0, kink), (kink, 1.0)] if 0.0 < kink < 1.0 else [(0.0, 1.0)]
    tol = Tolerance(abs_tol=quad_tol / len(pieces))
    agg = sum(
        integrate(
            lambda s: aggregator_payoff(p, s, pointwise_best_action(p, s)),
            lo,
            hi,
            tol,
        )
        for lo, hi in pieces
    )
    cons = sum(
        integrate(
            lambda s: consumer_payoff(p, s, pointwise_best_action(p, s)),
            lo,
            hi,
            tol,
        )
        for lo, hi in pieces
    )
    return agg, cons


def scenario_payoffs(
    p: ModelParams,
    epsilon: float = DEFAULT_EPSILON,
    cap: int = DEFAULT_CELL_CAP,
    quad_tol: float = 1e-10,
    cells: int | None = None,
) -> ScenarioPayoffs:
    """Compute all six scenario expectations at bias p.b.

    The equilibrium scenario uses the most-informative equilibrium
    (L = M*, capped) unless cells overrides it; overrides above M* raise
    the usual infeasibility error.
    """
    m_star = max_messages(p, epsilon, cap)
    n_cells = min(m_star, cap) if cells is None else cells

    full = Interval(0.0, 1.0)
    agg_no_message = interval_integral_aggregator(
        p, full, best_response_action(p, full)
    )

    profile = equilibrium_profile(p, n_cells, epsilon)
    agg_equilibrium, cons_equilibrium = ex_ante_payoffs(p, profile)
    agg_full_info, cons_full_info = _full_info_payoffs(p, quad_tol)

    return ScenarioPayoffs(
        b=p.b,
        m_star=m_star,
        agg_no_message=agg_no_message,
        agg_equilibrium=agg_equilibrium,
        agg_full_info=agg_full_info,
        cons_self_serve=p.K,
        cons_full_info=cons_full_info,
        cons_equilibrium=cons_equilibrium,
    )


def sweep(
    p_template: ModelParams,
    b_min: float,
    b_max: float,
    steps: int,
    epsilon: float = DEFAULT_EPSILON,
    cap: int = DEFAULT_CELL_CAP,
) -> list[ScenarioPayoffs]:
    """Scenario payoffs on a uniform bias grid, endpoints included.

    Rows are independent and returned in grid order; K is taken from
    p_template.
    """
    if not (0.0 <= b_min < b_max) or not math.isfinite(b_max):
        raise ValueError(f"need 0 <= b_min < b_max, got [{b_min}, {b_max}]")
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps}")
    h = (b_max - b_min) / (steps - 1)
    grid = [b_min + i * h for i in range(steps - 1)] + [b_max]
    return [
        scenario_payoffs(ModelParams(b=b, K=p_template.K), epsilon, cap)
        for b in grid
    ]
