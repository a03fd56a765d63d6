"""Best-response dynamics: the Lloyd-Max route to the same equilibria.

With aligned interests (b = 0) the game is a scalar quantization problem and
alternating the two best responses is exactly the Lloyd-Max algorithm, which
descends a common distortion and converges.  For b > 0 the payoffs differ,
no potential function is available, and the iteration is best-effort: it is
kept here as an independent cross-check of the shooting solver, with cell
collapse detected and reported rather than raised.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .equilibrium import EquilibriumProfile, Partition, best_response_action
from .model import Interval, ModelParams

__all__ = ["BrDynamicsResult", "consumer_boundaries_br", "br_dynamics"]

# Implied cell widths below this count as a collapse of the message set.
_MERGE_WIDTH = 1e-9


@dataclass(frozen=True)
class BrDynamicsResult:
    """Outcome of the alternating best-response iteration.

    profile is the last non-degenerate iterate; merged_cells reports that the
    boundary update tried to shrink some cell below width 1e-9 (the dynamics
    effectively use fewer messages than requested).
    """

    profile: EquilibriumProfile
    iterations: int
    converged: bool
    merged_cells: bool


def consumer_boundaries_br(actions: Sequence[float]) -> list[float]:
    """Consumer's best-response boundaries to a fixed set of allocations.

    For the quadratic payoff the indifference point between two adjacent
    allocations is their midpoint, so the optimal cells are the nearest-
    allocation regions: [0, midpoints..., 1].
    """
    acts = list(actions)
    if not acts:
        raise ValueError("need at least one action")
    if any(not (0.0 <= a <= 1.0) for a in acts):
        raise ValueError(f"actions must lie in [0, 1], got {acts}")
    if any(acts[i] >= acts[i + 1] for i in range(len(acts) - 1)):
        raise ValueError(f"actions must be strictly increasing, got {acts}")
    mids = [0.5 * (acts[i] + acts[i + 1]) for i in range(len(acts) - 1)]
    return [0.0, *mids, 1.0]


def br_dynamics(
    p: ModelParams,
    n_cells: int,
    init: Partition | None = None,
    max_iter: int = 500,
    tol: float = 1e-10,
) -> BrDynamicsResult:
    """Alternate per-cell best responses and indifference boundaries.

    Starts from init (uniform partition by default), stops when the sup-norm
    boundary change drops to tol, the iteration budget runs out, or cells
    merge.  Non-convergence and merging are reported in the result, never
    raised.
    """
    if n_cells < 1:
        raise ValueError(f"n_cells must be >= 1, got {n_cells}")
    if init is None:
        init = Partition.uniform(n_cells)
    if init.n_cells != n_cells:
        raise ValueError(f"init has {init.n_cells} cells, expected {n_cells}")

    bounds = list(init.boundaries)
    converged = False
    merged = False
    iterations = 0
    for _ in range(max_iter):
        actions = [
            best_response_action(p, Interval(bounds[m], bounds[m + 1]))
            for m in range(n_cells)
        ]
        if any(actions[m + 1] - actions[m] <= 0.0 for m in range(n_cells - 1)):
            # tied allocations: the implied nearest-allocation cells collapse
            merged = True
            break
        new_bounds = consumer_boundaries_br(actions)
        if any(
            new_bounds[m + 1] - new_bounds[m] < _MERGE_WIDTH for m in range(n_cells)
        ):
            merged = True
            break
        iterations += 1
        delta = max(abs(nb - ob) for nb, ob in zip(new_bounds, bounds))
        bounds = new_bounds
        if delta <= tol:
            converged = True
            break

    final_actions = tuple(
        best_response_action(p, Interval(bounds[m], bounds[m + 1]))
        for m in range(n_cells)
    )
    profile = EquilibriumProfile(Partition(tuple(bounds)), final_actions)
    return BrDynamicsResult(
        profile=profile,
        iterations=iterations,
        converged=converged,
        merged_cells=merged,
    )
