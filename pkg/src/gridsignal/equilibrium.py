"""Partition (Nash) equilibria of the demand-signaling game.

An equilibrium here has interval structure: the consumer only reveals which
cell [s_m, s_{m+1}] of [0, 1] its need lies in, and the aggregator answers
each cell with one allocation.  Two facts drive everything in this module:

* Aggregator side.  Against a uniform belief on a cell with midpoint s_mid,
  the optimal allocation solves the first-order condition
  2*a + b*e^a = 2*s_mid, i.e. a = s_mid - W(b*e^{s_mid}/2) with W the Lambert
  W function, clamped to 0 when s_mid <= b/2 (the marginal grid cost already
  exceeds the marginal mismatch gain at a = 0).

* Consumer side.  At an interior boundary s_m the consumer must be
  indifferent between the two adjacent allocations, which for the quadratic
  payoff means a_{m-1} + a_m = 2*s_m ("arbitrage" condition).  Writing the
  aggregator FOC through the increasing map foc_map(x) = 2x + b*e^x turns
  indifference into a second-order recursion on the boundaries: given
  (s_{m-1}, s_m), the next boundary is

      s_{m+1} = foc_map(2*s_m - foc_map_inverse(s_{m-1} + s_m)) - s_m.

Running the recursion from a trial first boundary s_1 and shooting for
s_L = 1 yields the L-cell equilibrium partition; counting how many recursion
steps fit inside [0, 1] from the smallest admissible start s_1 = b + eps
yields the maximum number of messages M* supportable at bias b.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .model import Interval, ModelParams, consumer_payoff, interval_integral_aggregator
from .numerics import Tolerance, lambert_w0, solve_increasing

__all__ = [
    "InfeasiblePartitionError",
    "Partition",
    "EquilibriumProfile",
    "VerificationReport",
    "foc_map",
    "foc_map_inverse",
    "foc_map_inverse_bisect",
    "best_response_action",
    "pointwise_best_action",
    "forward_partition",
    "max_messages",
    "solve_partition",
    "equilibrium_profile",
    "verify_equilibrium",
]

logger = logging.getLogger(__name__)

# Recursion iterates above this are hopeless overshoots; stopping there keeps
# exp() arguments small while preserving the sign of (s_L - 1).
_BLOWUP = 4.0

DEFAULT_EPSILON = 1e-6
DEFAULT_CELL_CAP = 64


class InfeasiblePartitionError(ValueError):
    """Requested more cells than the bias supports in equilibrium."""


@dataclass(frozen=True)
class Partition:
    """Ordered boundaries 0 = s_0 < s_1 < ... < s_L = 1 of the need space."""

    boundaries: tuple[float, ...]

    def __post_init__(self) -> None:
        bs = self.boundaries
        if len(bs) < 2:
            raise ValueError("a partition needs at least one cell")
        if bs[0] != 0.0 or bs[-1] != 1.0:
            raise ValueError(f"boundaries must span [0, 1], got {bs[0]}..{bs[-1]}")
        if any(bs[i] >= bs[i + 1] for i in range(len(bs) - 1)):
            raise ValueError("boundaries must be strictly increasing")

    @property
    def n_cells(self) -> int:
        return len(self.boundaries) - 1

    @property
    def cells(self) -> tuple[Interval, ...]:
        bs = self.boundaries
        return tuple(Interval(bs[i], bs[i + 1]) for i in range(len(bs) - 1))

    @classmethod
    def uniform(cls, n_cells: int) -> "Partition":
        if n_cells < 1:
            raise ValueError(f"n_cells must be >= 1, got {n_cells}")
        return cls(tuple(i / n_cells for i in range(n_cells + 1)))


@dataclass(frozen=True)
class EquilibriumProfile:
    """A partition together with the aggregator's per-cell allocations."""

    partition: Partition
    actions: tuple[float, ...]

    def __post_init__(self) -> None:
        acts = self.actions
        if len(acts) != self.partition.n_cells:
            raise ValueError(
                f"{len(acts)} actions for {self.partition.n_cells} cells"
            )
        if any(not (0.0 <= a < 1.0) for a in acts):
            raise ValueError(f"actions must lie in [0, 1), got {acts}")
        if any(acts[i] > acts[i + 1] for i in range(len(acts) - 1)):
            raise ValueError("actions must be nondecreasing")


@dataclass(frozen=True)
class VerificationReport:
    """Epsilon-best-response residuals for a candidate profile.

    max_action_residual:  worst payoff loss of a prescribed allocation
        against the best allocation on a fine grid, over all cells.
    max_message_residual: worst payoff loss of the prescribed cell choice
        against the best available allocation, over sampled states.
    arbitrage_residual:   worst consumer-indifference violation at interior
        boundaries.
    """

    max_action_residual: float
    max_message_residual: float
    arbitrage_residual: float
    passed: bool


def foc_map(p: ModelParams, x: float) -> float:
    """The increasing map 2x + b*e^x from the aggregator's first-order condition."""
    return 2.0 * x + p.b * math.exp(x)


def foc_map_inverse(p: ModelParams, y: float) -> float:
    """Invert foc_map on x >= 0 in closed form: x = y/2 - W(b*e^{y/2}/2).

    Defined for y >= b only, since foc_map(0) = b; smaller targets mean the
    cell's allocation is pinned at the boundary action 0.
    """
    if y < p.b:
        raise ValueError(
            f"foc_map_inverse needs y >= b (interior action), got y={y} < b={p.b}"
        )
    x = 0.5 * y - lambert_w0(0.5 * p.b * math.exp(0.5 * y))
    return max(x, 0.0)


def foc_map_inverse_bisect(
    p: ModelParams, y: float, tol: Tolerance = Tolerance()
) -> float:
    """Invert foc_map by bracketed root finding; cross-check for the W route."""
    if y < p.b:
        raise ValueError(
            f"foc_map_inverse needs y >= b (interior action), got y={y} < b={p.b}"
        )
    # foc_map(y/2) = y + b*e^{y/2} >= y, so [0, y/2] brackets the inverse.
    return solve_increasing(lambda x: foc_map(p, x), 0.0, 0.5 * y, y, tol)


def best_response_action(p: ModelParams, cell: Interval) -> float:
    """Aggregator's optimal allocation for a uniform belief on the cell.

    Equals midpoint - W(b*e^{midpoint}/2) when the midpoint exceeds b/2,
    otherwise 0.  For b = 0 this is the plain centroid.
    """
    s_mid = cell.midpoint
    if s_mid <= 0.5 * p.b:
        return 0.0
    return s_mid - lambert_w0(0.5 * p.b * math.exp(s_mid))


def pointwise_best_action(p: ModelParams, s: float) -> float:
    """Optimal allocation when the aggregator knows the need s exactly.

    Continuous at s = b/2, where the interior formula meets the 0 branch.
    """
    if not (0.0 <= s <= 1.0):
        raise ValueError(f"s must be in [0, 1], got {s}")
    if s <= 0.5 * p.b:
        return 0.0
    return s - lambert_w0(0.5 * p.b * math.exp(s))


def forward_partition(
    p: ModelParams,
    s1: float,
    max_cells: int,
    cap: float = 2.0,
) -> list[float]:
    """Run the boundary recursion from first boundary s1.

    Returns [0, s1, s2, ...], extending while the next boundary stays at or
    below cap and at most max_cells + 1 boundaries exist.  Requires
    s1 in (b, 1]: starts at or below b would pin the first cell's allocation
    to the boundary action 0, outside the interior-action regime this
    recursion describes.
    """
    if max_cells < 1:
        raise ValueError(f"max_cells must be >= 1, got {max_cells}")
    if s1 <= p.b:
        raise ValueError(
            f"need s1 > b for interior actions, got s1={s1}, b={p.b}"
        )
    if s1 > 1.0:
        raise ValueError(f"s1 must be <= 1, got {s1}")
    bounds = [0.0, s1]
    while len(bounds) < max_cells + 1:
        action = 2.0 * bounds[-1] - foc_map_inverse(p, bounds[-2] + bounds[-1])
        nxt = foc_map(p, action) - bounds[-1]
        if nxt > cap:
            break
        bounds.append(nxt)
    return bounds


def max_messages(
    p: ModelParams,
    epsilon: float = DEFAULT_EPSILON,
    cap: int = DEFAULT_CELL_CAP,
) -> int:
    """Maximum number of messages M* supportable in equilibrium at bias b.

    Runs the recursion from the smallest admissible first boundary
    s1 = b + epsilon and returns the largest L with s_L <= 1, clamped to cap
    (M* diverges as b -> 0).  M* = 1 means only the uninformative (babbling)
    equilibrium exists.
    """
    if epsilon <= 0:
        raise ValueError(f"epsilon must be > 0, got {epsilon}")
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    if p.b >= 1.0 or p.b + epsilon > 1.0:
        return 1
    seq = forward_partition(p, p.b + epsilon, max_cells=cap)
    m_star = max(m for m in range(1, len(seq)) if seq[m] <= 1.0)
    if m_star == cap:
        logger.warning(
            "message count saturated at cap=%d for b=%g; true M* may be larger",
            cap,
            p.b,
        )
    return m_star


def _shoot(p: ModelParams, s1: float, n_cells: int) -> float:
    """Value of s_L after exactly n_cells recursion steps from s1.

    Iterates past 1 freely so the shooting solver can see the overshoot;
    aborts early once an iterate clears _BLOWUP (the sign of s_L - 1 is
    already decided and further exponentials would be pointless).
    """
    prev, cur = 0.0, s1
    for _ in range(n_cells - 1):
        action = 2.0 * cur - foc_map_inverse(p, prev + cur)
        prev, cur = cur, foc_map(p, action) - cur
        if cur > _BLOWUP:
            return cur
    return cur


def solve_partition(
    p: ModelParams,
    n_cells: int,
    epsilon: float = DEFAULT_EPSILON,
) -> Partition:
    """Equilibrium partition with exactly n_cells cells.

    Solves the two-point boundary problem s_0 = 0, s_L = 1 by shooting on
    the first boundary: s_L(s1) is increasing in s1 (asserted at the bracket
    endpoints), so a safeguarded root search on [b + epsilon, 1] pins s1.
    """
    if n_cells < 1:
        raise ValueError(f"n_cells must be >= 1, got {n_cells}")
    if n_cells == 1:
        return Partition((0.0, 1.0))
    m_star = max_messages(p, epsilon, cap=max(DEFAULT_CELL_CAP, n_cells))
    if n_cells > m_star:
        raise InfeasiblePartitionError(
            f"cells exceeds M*: requested {n_cells}, but M*={m_star} at b={p.b}"
        )
    lo = p.b + epsilon
    hi = 1.0
    reach_lo = _shoot(p, lo, n_cells)
    reach_hi = _shoot(p, hi, n_cells)
    if not reach_lo < reach_hi:
        raise RuntimeError(
            f"shooting map not increasing on bracket: {reach_lo} !< {reach_hi}"
        )
    s1 = solve_increasing(
        lambda t: _shoot(p, t, n_cells), lo, hi, 1.0, Tolerance(1e-12, 200)
    )
    bounds = forward_partition(p, s1, max_cells=n_cells)
    if len(bounds) != n_cells + 1:
        raise RuntimeError("shooting solution lost boundaries on reconstruction")
    bounds[-1] = 1.0
    return Partition(tuple(bounds))


def equilibrium_profile(
    p: ModelParams,
    n_cells: int,
    epsilon: float = DEFAULT_EPSILON,
) -> EquilibriumProfile:
    """Solve for the n_cells partition and attach per-cell best responses.

    The constructed profile satisfies the boundary indifference identity
    a_{m-1} + a_m = 2 s_m at every interior boundary (checked to 1e-8).
    """
    part = solve_partition(p, n_cells, epsilon)
    actions = tuple(best_response_action(p, cell) for cell in part.cells)
    for m in range(1, part.n_cells):
        gap = actions[m - 1] + actions[m] - 2.0 * part.boundaries[m]
        if abs(gap) > 1e-8:
            raise RuntimeError(
                f"indifference identity violated at boundary {m}: residual {gap:g}"
            )
    return EquilibriumProfile(part, actions)


def _cell_index(boundaries: tuple[float, ...], s: float) -> int:
    """Index of the cell containing s; states on a boundary take the lower cell."""
    n_cells = len(boundaries) - 1
    lo, hi = 0, n_cells
    while lo < hi:
        mid = (lo + hi) // 2
        if boundaries[mid + 1] < s:
            lo = mid + 1
        else:
            hi = mid
    return min(lo, n_cells - 1)


def verify_equilibrium(
    p: ModelParams,
    profile: EquilibriumProfile,
    grid_n: int = 2000,
    tol: float = 1e-6,
) -> VerificationReport:
    """Check a profile for epsilon-best-response on a grid, both sides.

    Three residuals, all payoff losses (clamped at zero):

      (i)  per cell, prescribed allocation vs the best of grid_n candidate
           allocations in [0, 1], under the cell-expected aggregator payoff;
      (ii) per sampled state, the prescribed cell's allocation vs the best
           allocation among all cells, under the consumer payoff;
      (iii) consumer indifference between adjacent allocations at each
           interior boundary (a state exactly on a boundary may use either
           side, so (iii) is exactly the tie-breaking slack).

    passed is true iff all three residuals are <= tol.
    """
    if grid_n < 100:
        raise ValueError(f"grid_n must be >= 100, got {grid_n}")
    bounds = profile.partition.boundaries
    actions = profile.actions
    cells = profile.partition.cells

    action_residual = 0.0
    for cell, a in zip(cells, actions):
        prescribed = interval_integral_aggregator(p, cell, a)
        best = max(
            interval_integral_aggregator(p, cell, i / (grid_n - 1))
            for i in range(grid_n)
        )
        action_residual = max(action_residual, best - prescribed)

    message_residual = 0.0
    for i in range(grid_n):
        s = i / (grid_n - 1)
        own = consumer_payoff(p, s, actions[_cell_index(bounds, s)])
        best = max(consumer_payoff(p, s, a) for a in actions)
        message_residual = max(message_residual, best - own)

    arbitrage_residual = 0.0
    for m in range(1, len(bounds) - 1):
        gap = abs(
            consumer_payoff(p, bounds[m], actions[m - 1])
            - consumer_payoff(p, bounds[m], actions[m])
        )
        arbitrage_residual = max(arbitrage_residual, gap)

    action_residual = max(action_residual, 0.0)
    message_residual = max(message_residual, 0.0)
    passed = (
        action_residual <= tol
        and message_residual <= tol
        and arbitrage_residual <= tol
    )
    return VerificationReport(
        max_action_residual=action_residual,
        max_message_residual=message_residual,
        arbitrage_residual=arbitrage_residual,
        passed=passed,
    )
