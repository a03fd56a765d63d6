import pytest

from gridsignal.equilibrium import equilibrium_profile, max_messages
from gridsignal.experiments import (
    ScenarioPayoffs,
    ex_ante_payoffs,
    scenario_payoffs,
    sweep,
)
from gridsignal.model import ModelParams


class TestScenarioPayoffs:
    def test_zero_bias_values(self):
        rec = scenario_payoffs(ModelParams(b=0.0, K=1.0))
        assert rec.agg_no_message == pytest.approx(1 - 1 / 12, abs=1e-12)
        assert rec.agg_full_info == pytest.approx(1.0, abs=1e-10)
        assert rec.cons_full_info == pytest.approx(1.0, abs=1e-10)
        assert rec.cons_self_serve == 1.0
        # cap=64 cells: quantization loss 1/(12 * 64^2)
        assert rec.m_star == 64
        assert rec.agg_equilibrium == pytest.approx(
            1 - 1 / (12 * 64**2), abs=1e-12
        )

    def test_babbling_regime_collapses_scenarios(self):
        rec = scenario_payoffs(ModelParams(b=0.5, K=1.0))
        assert rec.m_star == 1
        assert rec.agg_equilibrium == rec.agg_no_message

    def test_full_info_cross_check(self):
        # frozen from an independent adaptive-quadrature run at b = 0.1
        rec = scenario_payoffs(ModelParams(b=0.1, K=1.0))
        assert rec.agg_full_info == pytest.approx(0.8354187795761242, abs=1e-8)
        assert rec.cons_full_info == pytest.approx(0.9934084851555912, abs=1e-8)

    def test_cells_override(self):
        p = ModelParams(b=0.05, K=1.0)
        rec_top = scenario_payoffs(p)
        rec_one = scenario_payoffs(p, cells=1)
        assert rec_one.m_star == rec_top.m_star == 4
        assert rec_one.agg_equilibrium == rec_one.agg_no_message
        assert rec_one.agg_equilibrium < rec_top.agg_equilibrium

    def test_ordering_enforced_by_type(self):
        with pytest.raises(ValueError):
            ScenarioPayoffs(
                b=0.1,
                m_star=2,
                agg_no_message=0.9,
                agg_equilibrium=0.8,
                agg_full_info=1.0,
                cons_self_serve=1.0,
                cons_full_info=0.99,
                cons_equilibrium=0.95,
            )


class TestWelfareRanking:
    @pytest.mark.parametrize("b", [0.05, 0.1, 0.2])
    def test_payoffs_increase_with_cells(self, b):
        p = ModelParams(b=b, K=1.0)
        m_star = max_messages(p)
        values = [
            ex_ante_payoffs(p, equilibrium_profile(p, n)) for n in range(1, m_star + 1)
        ]
        for (agg_lo, cons_lo), (agg_hi, cons_hi) in zip(values, values[1:]):
            assert agg_hi > agg_lo + 1e-6
            assert cons_hi > cons_lo + 1e-6


class TestSweep:
    def test_grid_validation(self):
        p = ModelParams(b=0.0)
        with pytest.raises(ValueError):
            sweep(p, 0.2, 0.2, 10)
        with pytest.raises(ValueError):
            sweep(p, 0.3, 0.2, 10)
        with pytest.raises(ValueError):
            sweep(p, 0.0, 0.5, 1)

    def test_rows_match_pointwise_evaluation(self):
        rows = sweep(ModelParams(b=0.0, K=1.0), 0.0, 0.3, 4)
        assert [r.b for r in rows] == pytest.approx([0.0, 0.1, 0.2, 0.3])
        single = scenario_payoffs(ModelParams(b=0.0, K=1.0))
        assert rows[0] == single

    def test_message_count_transition(self):
        rows = sweep(ModelParams(b=0.0, K=1.0), 0.2, 0.25, 2)
        assert rows[0].m_star == 2
        assert rows[1].m_star == 1

    def test_orderings_hold_along_grid(self):
        rows = sweep(ModelParams(b=0.0, K=1.0), 0.0, 0.45, 10)
        slack = 1e-9
        for r in rows:
            assert r.agg_no_message <= r.agg_equilibrium + slack
            assert r.agg_equilibrium <= r.agg_full_info + slack
            assert r.cons_equilibrium <= r.cons_full_info + slack
            assert r.cons_full_info <= r.cons_self_serve + slack
        ms = [r.m_star for r in rows]
        assert ms == sorted(ms, reverse=True)
