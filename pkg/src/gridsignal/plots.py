"""Figure rendering for the report path (headless, file output only)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .experiments import ScenarioPayoffs

__all__ = ["plot_max_messages", "plot_scenario_payoffs"]


def plot_max_messages(records: list[ScenarioPayoffs], path: str | Path) -> Path:
    """Step plot of the maximum supportable message count against the bias."""
    path = Path(path)
    b = [r.b for r in records]
    m = [r.m_star for r in records]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.step(b, m, where="post", color="tab:blue")
    ax.set_xlabel("bias b")
    ax.set_ylabel("max messages M*")
    ax.set_title("Maximum equilibrium message count vs bias")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_scenario_payoffs(records: list[ScenarioPayoffs], path: str | Path) -> Path:
    """The six expected-payoff curves against the bias.

    Bottom three: aggregator under no message / equilibrium / full
    information.  Top three: consumer under a = s / full information /
    equilibrium.
    """
    path = Path(path)
    b = [r.b for r in records]
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    ax.plot(b, [r.agg_no_message for r in records], "C0--", label="aggregator, no message")
    ax.plot(b, [r.agg_equilibrium for r in records], "C0-", label="aggregator, equilibrium")
    ax.plot(b, [r.agg_full_info for r in records], "C0:", label="aggregator, full info")
    ax.plot(b, [r.cons_self_serve for r in records], "C3--", label="consumer, a = s")
    ax.plot(b, [r.cons_full_info for r in records], "C3:", label="consumer, full info")
    ax.plot(b, [r.cons_equilibrium for r in records], "C3-", label="consumer, equilibrium")
    ax.set_xlabel("bias b")
    ax.set_ylabel("expected payoff")
    ax.set_title("Expected payoffs vs bias")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
