"""Robustness studies for a chosen design.

Two analyses:

* uniform +/- perturbations of the load, PV output, or wind output
  series, reporting the deviation of each metric from the unperturbed
  baseline (the classic resilience table);
* LCOE response curves to economic parameters (electricity purchase
  price, sellback price, battery and PV capital costs).

Dispatch is price-blind, so the economic sweeps reuse one simulated
trace and only re-cost it; the series perturbations re-simulate.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from pathlib import Path

from .dispatch import Design, simulate_year
from .metrics import MetricVector, evaluate, lcoe, npc
from .scenario import Scenario, TimeSeries, scale_series


class PerturbTarget(enum.Enum):
    LOAD = "load"
    PV_OUTPUT = "pv_output"
    WIND_OUTPUT = "wind_output"


@dataclass(frozen=True)
class Perturbation:
    """Uniform multiplicative scaling of one input series by (1 + delta)."""

    target: PerturbTarget
    delta: float

    def __post_init__(self) -> None:
        if not abs(self.delta) < 1.0:
            raise ValueError(f"|delta| must be < 1, got {self.delta}")


@dataclass(frozen=True)
class DeviationRow:
    """Metric deviations of one perturbed run against the baseline.

    Cost, efficiency, and CO2 deviations are percentages of the absolute
    baseline value (CO2 can cross zero, hence the signed-percent-of-
    absolute convention); reliability is an absolute difference because
    its baseline is typically 1.
    """

    target: PerturbTarget
    delta: float
    npc_dev_pct: float
    reliability_dev: float
    efficiency_dev_pct: float
    co2_dev_pct: float
    metrics: MetricVector


def _pct(value: float, baseline: float) -> float:
    if value == baseline:
        return 0.0
    if baseline == 0.0:
        return float("inf") if value > baseline else float("-inf")
    return 100.0 * (value - baseline) / abs(baseline)


def apply_perturbation(scenario: Scenario, perturbation: Perturbation) -> Scenario:
    """Scenario with the targeted input series scaled by (1 + delta).

    Load and irradiance scale their output one-for-one; wind output
    responds nonlinearly through the power curve, so the wind case
    perturbs the resource, not the production.
    """
    return _perturbed_scenario(scenario, perturbation)


def perturb_and_evaluate(scenario: Scenario, design: Design, perturbation: Perturbation,
                         baseline: MetricVector | None = None) -> DeviationRow:
    """Scale the targeted series, re-evaluate, and report deviations."""
    if baseline is None:
        baseline = evaluate(design, scenario)
    perturbed = evaluate(design, _perturbed_scenario(scenario, perturbation))
    return DeviationRow(
        target=perturbation.target,
        delta=perturbation.delta,
        npc_dev_pct=_pct(perturbed.npc_usd, baseline.npc_usd),
        reliability_dev=perturbed.reliability - baseline.reliability,
        efficiency_dev_pct=_pct(perturbed.efficiency_pct, baseline.efficiency_pct),
        co2_dev_pct=_pct(perturbed.co2_kg_per_yr, baseline.co2_kg_per_yr),
        metrics=perturbed,
    )


def _perturbed_scenario(scenario: Scenario, perturbation: Perturbation) -> Scenario:
    factor = 1.0 + perturbation.delta
    if perturbation.target is PerturbTarget.LOAD:
        return scale_series(scenario, load=factor)
    if perturbation.target is PerturbTarget.PV_OUTPUT:
        return scale_series(scenario, irradiance=factor)
    return scale_series(scenario, wind=factor)


def standard_perturbations() -> list[Perturbation]:
    """The +/-5% and +/-10% grid over load, PV output, and wind output."""
    grid = []
    for target in PerturbTarget:
        for delta in (-0.05, 0.05, -0.10, 0.10):
            grid.append(Perturbation(target, delta))
    return grid


def deviation_table(scenario: Scenario, design: Design,
                    perturbations: list[Perturbation] | None = None) -> list[DeviationRow]:
    """Run a perturbation grid against one shared baseline."""
    if perturbations is None:
        perturbations = standard_perturbations()
    baseline = evaluate(design, scenario)
    return [perturb_and_evaluate(scenario, design, p, baseline) for p in perturbations]


def write_deviation_csv(rows: list[DeviationRow], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("parameter,uncertainty_pct,npc_dev_pct,reliability_dev,efficiency_dev_pct,co2_dev_pct\n")
        for row in rows:
            fh.write(f"{row.target.value},{row.delta * 100.0:.6g},{row.npc_dev_pct!r},"
                     f"{row.reliability_dev!r},{row.efficiency_dev_pct!r},{row.co2_dev_pct!r}\n")


# ----------------------------------------------------------------------
# LCOE sweeps
# ----------------------------------------------------------------------

class SweepParameter(enum.Enum):
    PURCHASE_PRICE = "purchase_price"
    SELLBACK_PRICE = "sellback_price"
    BATTERY_CAPITAL = "battery_capital"
    PV_CAPITAL = "pv_capital"


def _scaled_scenario(scenario: Scenario, parameter: SweepParameter, multiplier: float) -> Scenario:
    tariff, catalog = scenario.tariff, scenario.catalog
    if parameter is SweepParameter.PURCHASE_PRICE:
        price = tariff.purchase_usd_per_kwh
        scaled = TimeSeries(price.values * multiplier, price.unit) if isinstance(price, TimeSeries) else price * multiplier
        return replace(scenario, tariff=replace(tariff, purchase_usd_per_kwh=scaled))
    if parameter is SweepParameter.SELLBACK_PRICE:
        price = tariff.sellback_usd_per_kwh
        scaled = TimeSeries(price.values * multiplier, price.unit) if isinstance(price, TimeSeries) else price * multiplier
        return replace(scenario, tariff=replace(tariff, sellback_usd_per_kwh=scaled))
    if parameter is SweepParameter.BATTERY_CAPITAL:
        # Replacement tracks capital: the catalog quotes one figure for both.
        battery = replace(catalog.battery,
                          capital_usd_per_kwh=catalog.battery.capital_usd_per_kwh * multiplier,
                          replacement_usd_per_kwh=catalog.battery.replacement_usd_per_kwh * multiplier)
        return replace(scenario, catalog=replace(catalog, battery=battery))
    pv = replace(catalog.pv,
                 capital_usd_per_kw=catalog.pv.capital_usd_per_kw * multiplier,
                 replacement_usd_per_kw=catalog.pv.replacement_usd_per_kw * multiplier)
    return replace(scenario, catalog=replace(catalog, pv=pv))


def lcoe_sweep(scenario: Scenario, design: Design, parameter: SweepParameter,
               multipliers: list[float]) -> list[tuple[float, float]]:
    """LCOE at each cost multiplier, everything else fixed.

    The dispatch never looks at prices, so the trace is simulated once
    and re-costed per point.
    """
    if any(m <= 0.0 for m in multipliers):
        raise ValueError("multipliers must be > 0")
    trace = simulate_year(scenario, design)
    served = trace.served_kwh
    eco = scenario.economics
    curve = []
    for multiplier in multipliers:
        scaled = _scaled_scenario(scenario, parameter, multiplier)
        total, _ = npc(trace, design, scaled)
        curve.append((multiplier, lcoe(total, served, eco.discount_rate, eco.project_years)))
    return curve


def write_sweep_csv(curve: list[tuple[float, float]], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("multiplier,lcoe_usd_per_kwh\n")
        for multiplier, value in curve:
            fh.write(f"{multiplier!r},{value!r}\n")
