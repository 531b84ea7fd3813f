"""Independent numerical oracles used by the tests.

These deliberately avoid the closed-form expressions in the package: the
battery oracle integrates the raw two-tank dynamics with fine Euler
steps, and the Pareto oracle is a literal O(n^2) double loop over the
dominance definition.
"""

from __future__ import annotations

import numpy as np

from mgdesign.metrics import MetricVector


def integrate_tanks(q1, q2, power, k: float, c: float, dt: float, step: float = 1e-3):
    """Euler-integrate dq1/dt = flow - power, dq2/dt = -flow with
    flow = k*(c*q2 - (1-c)*q1); accepts scalars or arrays."""
    q1 = np.asarray(q1, dtype=float).copy()
    q2 = np.asarray(q2, dtype=float).copy()
    steps = int(round(dt / step))
    for _ in range(steps):
        flow = k * (c * q2 - (1.0 - c) * q1)
        q1 += step * (flow - power)
        q2 += step * (-flow)
    return q1, q2


def ode_max_discharge(q1, q2, k: float, c: float, dt: float = 1.0, step: float = 1e-3):
    """Largest constant power with q1 >= 0 at the end of the interval.

    q1(dt) is affine in the power, so two integrations pin the line and
    the root is exact up to the integrator's own error.
    """
    a, _ = integrate_tanks(q1, q2, 0.0, k, c, dt, step)
    b, _ = integrate_tanks(q1, q2, 1.0, k, c, dt, step)
    slope = a - b  # q1 drop per unit power
    return a / slope


def ode_max_charge(q1, q2, q_max, k: float, c: float, dt: float = 1.0, step: float = 1e-3):
    """Largest constant charging power with q1 <= c*q_max at the end."""
    a, _ = integrate_tanks(q1, q2, 0.0, k, c, dt, step)
    b, _ = integrate_tanks(q1, q2, -1.0, k, c, dt, step)
    slope = b - a  # q1 rise per unit charging power
    return (c * np.asarray(q_max, dtype=float) - a) / slope


def brute_force_pareto_mask(points: list[MetricVector]) -> np.ndarray:
    """Literal pairwise dominance filter (lower npc/co2, higher
    reliability/efficiency better)."""
    n = len(points)
    keep = np.ones(n, dtype=bool)
    for i in range(n):
        pi = points[i]
        for j in range(n):
            if i == j:
                continue
            pj = points[j]
            at_least_as_good = (
                pj.npc_usd <= pi.npc_usd
                and pj.reliability >= pi.reliability
                and pj.efficiency_pct >= pi.efficiency_pct
                and pj.co2_kg_per_yr <= pi.co2_kg_per_yr
            )
            strictly_better = (
                pj.npc_usd < pi.npc_usd
                or pj.reliability > pi.reliability
                or pj.efficiency_pct > pi.efficiency_pct
                or pj.co2_kg_per_yr < pi.co2_kg_per_yr
            )
            if at_least_as_good and strictly_better:
                keep[i] = False
                break
    return keep


def toy_two_action_space():
    """One live axis with two choices; everything else fixed at zero."""
    from mgdesign.optimize import Range, SearchSpace

    return SearchSpace(
        pv_kw=Range(0.0, 100.0, 100.0),
        wt_kw=Range.fixed(0.0), dg_kw=Range.fixed(0.0),
        bess_kwh=Range.fixed(0.0), converter_kw=Range.fixed(0.0))


def toy_two_action_eval(design) -> MetricVector:
    """Stub evaluator where the pv=100 action dominates pv=0 in all four
    objectives."""
    good = design.pv_kw > 0.0
    return MetricVector(
        npc_usd=1e6 if good else 2e6,
        reliability=1.0 if good else 0.8,
        efficiency_pct=95.0 if good else 60.0,
        co2_kg_per_yr=-1000.0 if good else 5000.0,
        lcoe_usd_per_kwh=0.0, capital_usd=0.0, om_usd_per_yr=0.0, lpsp=0.0)


def random_metric_vectors(seed: int, n: int, distinct_levels: int | None = None) -> list[MetricVector]:
    """Random 4-objective points; ``distinct_levels`` quantizes values to
    force ties and duplicates."""
    rng = np.random.default_rng(seed)
    raw = rng.uniform(0.0, 1.0, size=(n, 4))
    if distinct_levels:
        raw = np.round(raw * distinct_levels) / distinct_levels
    return [
        MetricVector(
            npc_usd=4e6 + 2e6 * row[0], reliability=row[1], efficiency_pct=100.0 * row[2],
            co2_kg_per_yr=1e6 * (row[3] - 0.5), lcoe_usd_per_kwh=0.0, capital_usd=0.0,
            om_usd_per_yr=0.0, lpsp=0.0)
        for row in raw
    ]
