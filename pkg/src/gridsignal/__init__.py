"""Partition equilibria of a consumer-aggregator demand-signaling game.

A consumer with a private power need in [0, 1] sends a cheap-talk message to
an aggregator who allocates power but also bears an exponential grid cost.
This package solves, verifies, and reports the interval (partition)
equilibria of that game: closed-form best responses through the Lambert W
function, a shooting solver for the equilibrium boundaries, best-response
dynamics as an independent cross-check, and scenario payoff sweeps.
"""

from .equilibrium import (
    EquilibriumProfile,
    InfeasiblePartitionError,
    Partition,
    VerificationReport,
    best_response_action,
    equilibrium_profile,
    foc_map,
    foc_map_inverse,
    foc_map_inverse_bisect,
    forward_partition,
    max_messages,
    pointwise_best_action,
    solve_partition,
    verify_equilibrium,
)
from .experiments import ScenarioPayoffs, ex_ante_payoffs, scenario_payoffs, sweep
from .model import (
    Interval,
    ModelParams,
    aggregator_payoff,
    consumer_payoff,
    interval_integral_aggregator,
    interval_integral_consumer,
    single_crossing_check,
)
from .numerics import (
    BracketError,
    ConvergenceError,
    Tolerance,
    integrate,
    lambert_w0,
    solve_increasing,
)
from .oracle import GridSpec, babbling_threshold, grid_best_action, grid_best_message
from .quantizer import BrDynamicsResult, br_dynamics, consumer_boundaries_br

__version__ = "0.1.0"

__all__ = [
    "BracketError",
    "BrDynamicsResult",
    "ConvergenceError",
    "EquilibriumProfile",
    "GridSpec",
    "InfeasiblePartitionError",
    "Interval",
    "ModelParams",
    "Partition",
    "ScenarioPayoffs",
    "Tolerance",
    "VerificationReport",
    "aggregator_payoff",
    "babbling_threshold",
    "best_response_action",
    "br_dynamics",
    "consumer_boundaries_br",
    "consumer_payoff",
    "equilibrium_profile",
    "ex_ante_payoffs",
    "foc_map",
    "foc_map_inverse",
    "foc_map_inverse_bisect",
    "forward_partition",
    "grid_best_action",
    "grid_best_message",
    "integrate",
    "interval_integral_aggregator",
    "interval_integral_consumer",
    "lambert_w0",
    "max_messages",
    "pointwise_best_action",
    "scenario_payoffs",
    "single_crossing_check",
    "solve_increasing",
    "solve_partition",
    "sweep",
    "verify_equilibrium",
]
