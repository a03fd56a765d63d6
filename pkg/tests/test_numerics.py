import math

import pytest

from gridsignal.numerics import (
    BracketError,
    ConvergenceError,
    Tolerance,
    integrate,
    lambert_w0,
    solve_increasing,
)


def w_reference(x: float) -> float:
    """Independent oracle: bisection on w * e^w = x, no shared code."""
    if x == 0.0:
        return 0.0
    lo, hi = 0.0, 1.0
    while hi * math.exp(hi) < x:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid * math.exp(mid) < x:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


class TestLambertW:
    def test_zero(self):
        assert lambert_w0(0.0) == 0.0

    def test_at_e(self):
        assert lambert_w0(math.e) == pytest.approx(1.0, abs=1e-14)

    def test_at_one(self):
        # bisection oracle gives 0.5671432904097838
        assert lambert_w0(1.0) == pytest.approx(0.5671432904097838, abs=1e-12)
        assert lambert_w0(1.0) == pytest.approx(w_reference(1.0), abs=1e-12)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            lambert_w0(-1e-9)

    def test_residual_bound_on_grid(self):
        for i in range(2001):
            x = 10.0 * i / 2000
            w = lambert_w0(x)
            assert abs(w * math.exp(w) - x) <= 1e-12 * max(1.0, x)

    def test_nondecreasing(self):
        prev = -1.0
        for i in range(1001):
            w = lambert_w0(10.0 * i / 1000)
            assert w >= prev
            prev = w

    def test_zero_only_at_zero(self):
        assert lambert_w0(1e-12) > 0.0


class TestSolveIncreasing:
    def test_linear(self):
        assert solve_increasing(lambda x: 2 * x, 0.0, 1.0, 1.0) == pytest.approx(0.5)

    def test_cubic_through_zero(self):
        x = solve_increasing(lambda x: x**3, -1.0, 1.0, 0.0)
        assert abs(x**3) <= 1e-12
        assert abs(x) <= 1e-3

    def test_exp_affine(self):
        # bisection to 1e-12 gives 0.5162162360210125
        x = solve_increasing(lambda x: 2 * x + 0.1 * math.exp(x), 0.0, 1.0, 1.2)
        assert x == pytest.approx(0.5162162360210125, abs=1e-9)

    def test_bracket_violation(self):
        with pytest.raises(BracketError):
            solve_increasing(lambda x: 2 * x, 0.0, 1.0, 5.0)
        with pytest.raises(BracketError):
            solve_increasing(lambda x: 2 * x, 0.0, 1.0, -0.5)

    def test_max_iter_exhausted(self):
        with pytest.raises(ConvergenceError):
            solve_increasing(
                lambda x: math.exp(x), 0.0, 1.0, 2.0, Tolerance(1e-15, 3)
            )

    def test_result_stays_in_bounds(self):
        for k in range(17):
            root = 0.3 + 0.1 * k  # stays inside [0, 2]
            target = root + math.sin(root)
            x = solve_increasing(lambda t: t + math.sin(t), 0.0, 2.0, target)
            assert 0.0 <= x <= 2.0
            assert x == pytest.approx(root, abs=1e-9)

    def test_target_at_endpoint(self):
        assert solve_increasing(lambda x: x, 0.25, 1.0, 0.25) == 0.25


class TestIntegrate:
    def test_identity(self):
        assert integrate(lambda s: s, 0.0, 1.0) == pytest.approx(0.5, abs=1e-13)

    def test_constant(self):
        assert integrate(lambda s: 1.0, 0.0, 1.0) == pytest.approx(1.0, abs=1e-13)

    def test_exponential(self):
        assert integrate(math.exp, 0.0, 1.0) == pytest.approx(
            math.e - 1.0, abs=1e-12
        )

    @pytest.mark.parametrize(
        "coeffs,exact",
        [
            ((0.0, 0.0, 0.0, 1.0), 0.25),  # x^3
            ((1.0, -2.0, 3.0, -4.0), 1.0 - 1.0 + 1.0 - 1.0),
            ((2.0, 0.0, -6.0, 0.0), 0.0),
        ],
    )
    def test_cubic_exactness(self, coeffs, exact):
        c0, c1, c2, c3 = coeffs
        val = integrate(
            lambda x: c0 + c1 * x + c2 * x**2 + c3 * x**3, 0.0, 1.0
        )
        assert val == pytest.approx(exact, abs=1e-12)

    def test_empty_interval(self):
        assert integrate(math.exp, 0.3, 0.3) == 0.0

    def test_reversed_interval_rejected(self):
        with pytest.raises(ValueError):
            integrate(math.exp, 1.0, 0.0)


class TestTolerance:
    def test_defaults(self):
        tol = Tolerance()
        assert tol.abs_tol == 1e-12
        assert tol.max_iter == 200

    @pytest.mark.parametrize("abs_tol,max_iter", [(0.0, 10), (-1e-3, 10), (1e-9, 0)])
    def test_invalid(self, abs_tol, max_iter):
        with pytest.raises(ValueError):
            Tolerance(abs_tol, max_iter)
