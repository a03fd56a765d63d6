"""Scalar numerical kernels: Lambert W, bracketed root finding, adaptive quadrature.

Everything in this module is a pure function of its arguments, so the game
logic built on top can call it from any thread without coordination.  The
problems solved here are tiny (scalar roots, 1-D integrals on [0, 1]), which
is why accuracy is favored over speed throughout: defaults target 1e-12.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass

__all__ = [
    "BracketError",
    "ConvergenceError",
    "Tolerance",
    "DEFAULT_TOL",
    "lambert_w0",
    "solve_increasing",
    "integrate",
]


class BracketError(ValueError):
    """The target value is not bracketed by the supplied interval."""


class ConvergenceError(RuntimeError):
    """An iterative routine failed to meet its tolerance within max_iter."""


@dataclass(frozen=True)
class Tolerance:
    """Absolute tolerance plus an iteration budget for iterative solvers."""

    abs_tol: float = 1e-12
    max_iter: int = 200

    def __post_init__(self) -> None:
        if not (math.isfinite(self.abs_tol) and self.abs_tol > 0):
            raise ValueError(f"abs_tol must be > 0, got {self.abs_tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")


DEFAULT_TOL = Tolerance()


def lambert_w0(x: float) -> float:
    """Principal branch of the Lambert W function on the nonnegative axis.

    Solves w * exp(w) = x for w >= 0.  Uses a branch-appropriate seed
    (log1p for small arguments, the asymptotic log(x) - log(log(x)) past e)
    refined by Halley iteration, which typically lands at machine precision
    in under six steps.  The result satisfies
    |w * exp(w) - x| <= 1e-12 * max(1, x).

    Raises:
        ValueError: if x < 0 (only the nonnegative axis is supported).
        ConvergenceError: if the residual bound cannot be met (not expected
            for finite nonnegative input).
    """
    if x < 0:
        raise ValueError(f"lambert_w0 requires x >= 0, got {x}")
    if x == 0.0:
        return 0.0
    if x <= math.e:
        w = math.log1p(x)
    else:
        lx = math.log(x)
        w = lx - math.log(lx)
    for _ in range(100):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        # Halley step for f(w) = w e^w - x
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        if abs(dw) <= 1e-16 * (2.0 + abs(w)):
            break
    if abs(w * math.exp(w) - x) > 1e-12 * max(1.0, x):
        raise ConvergenceError(f"lambert_w0 residual above bound at x={x}")
    return w


def solve_increasing(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    target: float,
    tol: Tolerance = DEFAULT_TOL,
) -> float:
    """Solve f(x) = target for f strictly increasing on [lo, hi].

    Safeguarded root finder: false-position steps accelerate convergence and
    every other iteration falls back to plain bisection, so the bracket is
    guaranteed to shrink.  The returned x always lies in [lo, hi] and
    satisfies |f(x) - target| <= tol.abs_tol.

    Raises:
        BracketError: if target is outside [f(lo), f(hi)].
        ConvergenceError: if max_iter evaluations do not meet the tolerance.
    """
    if lo > hi:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    g_lo = f(lo) - target
    g_hi = f(hi) - target
    if g_lo > 0 or g_hi < 0:
        raise BracketError(
            f"target {target} not bracketed: f({lo})-target={g_lo}, f({hi})-target={g_hi}"
        )
    if abs(g_lo) <= tol.abs_tol:
        return lo
    if abs(g_hi) <= tol.abs_tol:
        return hi
    a, b = lo, hi
    g_a, g_b = g_lo, g_hi
    for it in range(tol.max_iter):
        if it % 2 == 0 and g_b > g_a:
            x = a - g_a * (b - a) / (g_b - g_a)
            if not (a < x < b):
                x = 0.5 * (a + b)
        else:
            x = 0.5 * (a + b)
        g_x = f(x) - target
        if abs(g_x) <= tol.abs_tol:
            return x
        if g_x < 0:
            a, g_a = x, g_x
        else:
            b, g_b = x, g_x
    raise ConvergenceError(
        f"no root to tolerance {tol.abs_tol} within {tol.max_iter} iterations"
    )


def integrate(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: Tolerance = DEFAULT_TOL,
) -> float:
    """Adaptive Simpson quadrature of f over [lo, hi].

    The estimated absolute error is at most tol.abs_tol.  The rule is exact
    for polynomials up to degree three on any subinterval.  Integrands must
    be continuous; callers are responsible for splitting the range at known
    kinks and integrating the pieces separately.

    Raises:
        ValueError: if lo > hi.
        ConvergenceError: if the recursion depth limit is hit before the
            local error budget is met.
    """
    if lo > hi:
        raise ValueError(f"integrate requires lo <= hi, got [{lo}, {hi}]")
    if lo == hi:
        return 0.0

    max_depth = 60

    def recurse(
        a: float,
        b: float,
        fa: float,
        fm: float,
        fb: float,
        whole: float,
        eps: float,
        depth: int,
    ) -> float:
        m = 0.5 * (a + b)
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        flm = f(lm)
        frm = f(rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - whole
        if abs(delta) <= 15.0 * eps:
            return left + right + delta / 15.0
        if depth >= max_depth:
            raise ConvergenceError(
                f"adaptive Simpson depth limit on [{a}, {b}], error {abs(delta) / 15.0:g}"
            )
        return recurse(a, m, fa, flm, fm, left, 0.5 * eps, depth + 1) + recurse(
            m, b, fm, frm, fb, right, 0.5 * eps, depth + 1
        )

    fa, fb = f(lo), f(hi)
    mid = 0.5 * (lo + hi)
    fm = f(mid)
    whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb)
    return recurse(lo, hi, fa, fm, fb, whole, tol.abs_tol, 0)
