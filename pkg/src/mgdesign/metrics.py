"""Design performance metrics: lifetime cost, reliability, efficiency,
and the annual CO2 balance.

Sign conventions
----------------
* ``npc_usd`` -- discounted lifetime cost in constant dollars; the
  scenario's ``discount_rate`` is the real rate.  Lower is better.
* ``reliability`` -- ``exp(-lambda * LPSP)`` in [0, 1].  Higher is better.
* ``efficiency_pct`` -- served energy over net energy input, <= 100.
  Higher is better.
* ``co2_kg_per_yr`` -- net annual CO2: emissions from diesel fuel and
  grid imports *minus* the grid emissions displaced by renewable
  production.  Negative values mean the design displaces more than it
  emits.  Lower is better.  :func:`co2_delta` returns the same quantity
  with the opposite sign (positive = net avoided emissions).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dispatch import Design, DispatchTrace, simulate_year
from .scenario import Scenario


class ZeroEnergyServedError(ValueError):
    """LCOE is undefined when no energy is served."""


class ZeroInputError(ValueError):
    """Efficiency is undefined without energy input."""


@dataclass(frozen=True)
class CostBreakdown:
    """Components of the net present cost.

    ``capital_usd`` is spent in year 0; the ``*_per_yr`` entries recur in
    years 1..T; ``replacement_usd_pw`` and ``salvage_usd_pw`` are already
    discounted to present value.
    """

    capital_usd: float
    om_usd_per_yr: float
    fuel_usd_per_yr: float
    grid_energy_usd_per_yr: float
    sellback_usd_per_yr: float
    replacement_usd_pw: float
    salvage_usd_pw: float

    @property
    def recurring_usd_per_yr(self) -> float:
        return (self.om_usd_per_yr + self.fuel_usd_per_yr
                + self.grid_energy_usd_per_yr - self.sellback_usd_per_yr)


@dataclass(frozen=True)
class MetricVector:
    """The four design objectives plus auxiliary economics."""

    npc_usd: float
    reliability: float
    efficiency_pct: float
    co2_kg_per_yr: float
    lcoe_usd_per_kwh: float
    capital_usd: float
    om_usd_per_yr: float
    lpsp: float

    def objectives(self) -> tuple[float, float, float, float]:
        """(npc, reliability, efficiency, co2) in the documented orientations."""
        return (self.npc_usd, self.reliability, self.efficiency_pct, self.co2_kg_per_yr)


#: Stable serialization order for CSV rows and key/value records.
METRIC_FIELDS = (
    "npc_usd", "reliability", "efficiency_pct", "co2_kg_per_yr",
    "lcoe_usd_per_kwh", "capital_usd", "om_usd_per_yr", "lpsp",
)

COST_FIELDS = (
    "capital_usd", "om_usd_per_yr", "fuel_usd_per_yr", "grid_energy_usd_per_yr",
    "sellback_usd_per_yr", "replacement_usd_pw", "salvage_usd_pw",
)


def metric_record(m: MetricVector) -> dict[str, float]:
    """Flat field-name -> value mapping in :data:`METRIC_FIELDS` order."""
    return {name: getattr(m, name) for name in METRIC_FIELDS}


def cost_record(c: CostBreakdown) -> dict[str, float]:
    """Flat field-name -> value mapping in :data:`COST_FIELDS` order."""
    return {name: getattr(c, name) for name in COST_FIELDS}


# ----------------------------------------------------------------------
# Cost model
# ----------------------------------------------------------------------

def _component_sizes(design: Design, scenario: Scenario) -> list[tuple[float, float, float, float, int]]:
    """(size, capital rate, replacement rate, om rate, lifetime) per included component."""
    cat = scenario.catalog
    rows = []
    if design.pv_kw > 0:
        rows.append((design.pv_kw, cat.pv.capital_usd_per_kw, cat.pv.replacement_usd_per_kw,
                     cat.pv.om_usd_per_kw_yr, cat.pv.lifetime_years))
    if design.wt_kw > 0:
        rows.append((design.wt_kw, cat.wind.capital_usd_per_kw, cat.wind.replacement_usd_per_kw,
                     cat.wind.om_usd_per_kw_yr, cat.wind.lifetime_years))
    if design.dg_kw > 0:
        rows.append((design.dg_kw, cat.diesel.capital_usd_per_kw, cat.diesel.replacement_usd_per_kw,
                     0.0, cat.diesel.lifetime_years))  # DG O&M accrues per operating hour
    if design.bess_kwh > 0:
        rows.append((design.bess_kwh, cat.battery.capital_usd_per_kwh, cat.battery.replacement_usd_per_kwh,
                     cat.battery.om_usd_per_kwh_yr, cat.battery.lifetime_years))
    if design.converter_kw > 0:
        rows.append((design.converter_kw, cat.converter.capital_usd_per_kw, cat.converter.replacement_usd_per_kw,
                     cat.converter.om_usd_per_kw_yr, cat.converter.lifetime_years))
    return rows


def capital_cost(design: Design, scenario: Scenario) -> float:
    """Year-0 investment for the design's included components."""
    return sum(size * cap for size, cap, _, _, _ in _component_sizes(design, scenario))


def fixed_om_cost(design: Design, scenario: Scenario) -> float:
    """Annual size-based O&M (excludes the diesel per-operating-hour part)."""
    return sum(size * om for size, _, _, om, _ in _component_sizes(design, scenario))


def npc(trace: DispatchTrace, design: Design, scenario: Scenario) -> tuple[float, CostBreakdown]:
    """Net present cost over the project lifetime, with its breakdown.

    Year 0 carries capital; years 1..T carry O&M, fuel, and net grid
    purchases; each component is repurchased when its lifetime expires
    within the project; the remaining-life fraction of the final
    purchase is credited back as salvage at year T.  All cash flows are
    constant-dollar and discounted at the scenario's real rate.
    """
    eco = scenario.economics
    r, T = eco.discount_rate, eco.project_years
    df = lambda t: (1.0 + r) ** -t

    capital = capital_cost(design, scenario)
    om = fixed_om_cost(design, scenario)
    om += (scenario.catalog.diesel.om_usd_per_hr_kw * design.dg_kw * trace.dg_hours
           if design.dg_kw > 0 else 0.0)
    fuel = trace.fuel_l * eco.fuel_price_usd_per_l
    buy = float(trace.grid_import_kw @ scenario.tariff.purchase_series())
    sell = float(trace.grid_export_kw @ scenario.tariff.sellback_series())

    replacement_pw = 0.0
    salvage_pw = 0.0
    for size, _, rep, _, lifetime in _component_sizes(design, scenario):
        year = lifetime
        last_purchase = 0
        while year < T:
            replacement_pw += size * rep * df(year)
            last_purchase = year
            year += lifetime
        remaining = lifetime - (T - last_purchase)
        if remaining > 0:
            salvage_pw += size * rep * (remaining / lifetime) * df(T)

    annuity = sum(df(t) for t in range(1, T + 1))
    recurring = om + fuel + buy - sell
    total = capital + recurring * annuity + replacement_pw - salvage_pw
    breakdown = CostBreakdown(
        capital_usd=capital,
        om_usd_per_yr=om,
        fuel_usd_per_yr=fuel,
        grid_energy_usd_per_yr=buy,
        sellback_usd_per_yr=sell,
        replacement_usd_pw=replacement_pw,
        salvage_usd_pw=salvage_pw,
    )
    return total, breakdown


def crf(rate: float, years: int) -> float:
    """Capital recovery factor; 1/years at zero rate."""
    if years < 1:
        raise ValueError(f"years must be >= 1, got {years}")
    if rate == 0.0:
        return 1.0 / years
    growth = (1.0 + rate) ** years
    return rate * growth / (growth - 1.0)


def lcoe(npc_usd: float, served_kwh_per_yr: float, rate: float, years: int) -> float:
    """Levelized cost of energy: the NPC annuitized over served energy."""
    if served_kwh_per_yr <= 0.0:
        raise ZeroEnergyServedError("no energy served; LCOE undefined")
    return npc_usd * crf(rate, years) / served_kwh_per_yr


# ----------------------------------------------------------------------
# Reliability, efficiency, emissions
# ----------------------------------------------------------------------

def lpsp(trace: DispatchTrace) -> float:
    """Loss of power supply probability: unmet over total demand, as a
    fraction; zero demand counts as perfectly supplied."""
    total = trace.load_kwh
    if total <= 0.0:
        return 0.0
    return trace.unmet_kwh / total


def reliability(lpsp_fraction: float, reliability_lambda: float) -> float:
    """Map LPSP to a [0, 1] reliability score, ``exp(-lambda * LPSP)``."""
    if reliability_lambda <= 0.0:
        raise ValueError(f"lambda must be > 0, got {reliability_lambda}")
    return math.exp(-reliability_lambda * lpsp_fraction)


#: Efficiency denominator: energy input net of losses (curtailment,
#: conversion, and battery losses), or the gross input.
EFFICIENCY_MODES = ("net_of_losses", "gross_input")


def efficiency(trace: DispatchTrace, mode: str = "net_of_losses") -> float:
    """System efficiency in percent, capped at 100.

    ``net_of_losses`` divides served energy by (input - losses), which by
    the hourly energy balance equals served + exports + battery gain;
    ``gross_input`` divides by the raw input from all sources.
    """
    if mode not in EFFICIENCY_MODES:
        raise ValueError(f"mode must be one of {EFFICIENCY_MODES}, got {mode!r}")
    useful = trace.served_kwh
    gross = trace.renewable_kwh + trace.dg_kwh + trace.import_kwh
    denom = gross - trace.loss_kwh if mode == "net_of_losses" else gross
    if denom <= 0.0:
        raise ZeroInputError("no energy input; efficiency undefined")
    return min(100.0 * useful / denom, 100.0)


def co2_delta(trace: DispatchTrace, scenario: Scenario,
              pv_degradation: float | None = None, wt_degradation: float = 0.0,
              year: int = 1) -> float:
    """Annual avoided CO2 in kg: grid emissions displaced by renewable
    production, minus emissions from diesel fuel and grid imports.

    Positive values mean net avoided emissions.  Renewable production is
    taken at the generation bus with degradation compounding by operating
    ``year``.
    """
    if pv_degradation is None:
        pv_degradation = scenario.catalog.pv.degradation_per_yr
    ef_grid = scenario.tariff.emission_kg_per_kwh
    avoided = (trace.pv_kwh * (1.0 - pv_degradation) ** year
               + trace.wt_kwh * (1.0 - wt_degradation) ** year) * ef_grid
    emitted = trace.fuel_l * scenario.economics.dg_emission_kg_per_l + trace.import_kwh * ef_grid
    return avoided - emitted


def evaluate(design: Design, scenario: Scenario,
             efficiency_mode: str = "net_of_losses",
             trace: DispatchTrace | None = None) -> MetricVector:
    """Simulate a design and compute its full metric vector.

    Deterministic: identical inputs give bit-identical results.  A
    pre-computed trace may be supplied to avoid re-simulation.  Designs
    that serve no energy get an infinite LCOE; traces with no energy
    input at all count as vacuously 100% efficient.
    """
    if trace is None:
        trace = simulate_year(scenario, design)
    total, costs = npc(trace, design, scenario)
    lpsp_value = lpsp(trace)
    served = trace.served_kwh
    eco = scenario.economics
    if served > 0.0:
        lcoe_value = lcoe(total, served, eco.discount_rate, eco.project_years)
    else:
        lcoe_value = math.inf
    try:
        eff = efficiency(trace, mode=efficiency_mode)
    except ZeroInputError:
        eff = 100.0
    return MetricVector(
        npc_usd=total,
        reliability=reliability(lpsp_value, scenario.reliability_lambda),
        efficiency_pct=eff,
        co2_kg_per_yr=-co2_delta(trace, scenario),
        lcoe_usd_per_kwh=lcoe_value,
        capital_usd=costs.capital_usd,
        om_usd_per_yr=costs.om_usd_per_yr,
        lpsp=lpsp_value,
    )
