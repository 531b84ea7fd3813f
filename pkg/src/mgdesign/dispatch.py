"""One-year hourly operation of a candidate design against a scenario.

Bus topology: PV and the battery live on the DC bus; the wind turbines,
diesel generator, grid connection, and load live on the AC bus.  The
converter moves power between buses, losing ``1 - efficiency`` per
crossing, with total throughput (measured on its output side) limited by
its rating each hour.

Dispatch priority, fixed and price-blind:

* deficit hours -- battery discharge, then grid import, then diesel
  (only between its minimum load ratio and rating), then unmet;
* surplus hours -- battery charge (PV charges DC-direct first, then
  wind through the converter), then grid export, then curtailment.

The battery state threads sequentially through the hours; everything
else is embarrassingly parallel across (scenario, design) pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .components import (
    AIR_DENSITY_KG_M3,
    BatteryState,
    _kinetic_charge_bound,
    _kinetic_discharge_bound,
    _kinetic_step,
    battery_state_from_spec,
)
from .scenario import Catalog, GridTariff, Scenario

HOURS = 8760


class InvalidDesignError(ValueError):
    """Design capacities are negative or not finite."""


@dataclass(frozen=True)
class Design:
    """Candidate capacities.  A source is included exactly when its
    capacity is positive.

    ``grid_cap_kw = None`` leaves grid exchange limited only by the
    tariff's import/export caps.
    """

    pv_kw: float = 0.0
    wt_kw: float = 0.0
    dg_kw: float = 0.0
    bess_kwh: float = 0.0
    converter_kw: float = 0.0
    grid_cap_kw: float | None = None

    @property
    def include_flags(self) -> dict[str, bool]:
        return {
            "pv": self.pv_kw > 0.0,
            "wt": self.wt_kw > 0.0,
            "dg": self.dg_kw > 0.0,
            "bess": self.bess_kwh > 0.0,
            "converter": self.converter_kw > 0.0,
        }

    def capacities(self) -> dict[str, float]:
        return {
            "pv_kw": self.pv_kw,
            "wt_kw": self.wt_kw,
            "dg_kw": self.dg_kw,
            "bess_kwh": self.bess_kwh,
            "converter_kw": self.converter_kw,
        }

    def violations(self) -> list[str]:
        problems = []
        for name, value in self.capacities().items():
            if not math.isfinite(value) or value < 0.0:
                problems.append(f"{name}: must be finite and >= 0, got {value}")
        if self.grid_cap_kw is not None and (not math.isfinite(self.grid_cap_kw) or self.grid_cap_kw < 0.0):
            problems.append(f"grid_cap_kw: must be finite and >= 0, got {self.grid_cap_kw}")
        return problems

    _FIELD_ALIASES = {
        "pv": "pv_kw", "wt": "wt_kw", "dg": "dg_kw", "bess": "bess_kwh",
        "conv": "converter_kw", "converter": "converter_kw", "grid": "grid_cap_kw",
    }

    @classmethod
    def from_string(cls, text: str) -> "Design":
        """Parse ``pv=418,wt=123,dg=0,bess=704,conv=255[,grid=300]``."""
        kwargs: dict[str, float] = {}
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            if "=" not in part:
                raise InvalidDesignError(f"expected name=value, got {part!r}")
            name, _, value = part.partition("=")
            key = cls._FIELD_ALIASES.get(name.strip().lower())
            if key is None:
                raise InvalidDesignError(f"unknown capacity {name.strip()!r}")
            try:
                kwargs[key] = float(value)
            except ValueError:
                raise InvalidDesignError(f"bad number for {name.strip()!r}: {value!r}") from None
        design = cls(**kwargs)
        problems = design.violations()
        if problems:
            raise InvalidDesignError("; ".join(problems))
        return design


#: Column order of one hour of power flows, shared by PowerFlow, the trace
#: arrays, and the CSV export.
FLOW_FIELDS = (
    "pv_kw", "wt_kw", "dg_kw", "batt_charge_kw", "batt_discharge_kw",
    "grid_import_kw", "grid_export_kw", "unmet_kw", "curtailed_kw",
    "fuel_l_per_hr", "conversion_loss_kw",
)


@dataclass(frozen=True)
class PowerFlow:
    """Power flows for a single hour, all non-negative kW (fuel in L/hr).

    ``pv_kw`` and ``wt_kw`` are the available productions at their bus
    (PV on DC, wind on AC), before any curtailment; ``curtailed_kw`` is
    the unused remainder measured at the source bus.  Charge and
    discharge are measured at the battery terminals and are never both
    positive.
    """

    pv_kw: float
    wt_kw: float
    dg_kw: float
    batt_charge_kw: float
    batt_discharge_kw: float
    grid_import_kw: float
    grid_export_kw: float
    unmet_kw: float
    curtailed_kw: float
    fuel_l_per_hr: float
    conversion_loss_kw: float


@dataclass
class DispatchTrace:
    """Hourly power flows of one simulated year plus aggregates.

    Array attributes are parallel, one entry per hour; ``soc`` is the
    battery state of charge at the end of each hour.
    """

    load_kw: np.ndarray
    pv_kw: np.ndarray
    wt_kw: np.ndarray
    dg_kw: np.ndarray
    batt_charge_kw: np.ndarray
    batt_discharge_kw: np.ndarray
    grid_import_kw: np.ndarray
    grid_export_kw: np.ndarray
    unmet_kw: np.ndarray
    curtailed_kw: np.ndarray
    fuel_l_per_hr: np.ndarray
    conversion_loss_kw: np.ndarray
    soc: np.ndarray
    final_battery: BatteryState
    initial_stored_kwh: float
    roundtrip_efficiency: float

    @property
    def load_kwh(self) -> float:
        return float(self.load_kw.sum())

    @property
    def unmet_kwh(self) -> float:
        return float(self.unmet_kw.sum())

    @property
    def served_kwh(self) -> float:
        return self.load_kwh - self.unmet_kwh

    @property
    def fuel_l(self) -> float:
        return float(self.fuel_l_per_hr.sum())

    @property
    def import_kwh(self) -> float:
        return float(self.grid_import_kw.sum())

    @property
    def export_kwh(self) -> float:
        return float(self.grid_export_kw.sum())

    @property
    def curtailed_kwh(self) -> float:
        return float(self.curtailed_kw.sum())

    @property
    def conversion_loss_kwh(self) -> float:
        return float(self.conversion_loss_kw.sum())

    @property
    def battery_loss_kwh(self) -> float:
        """Energy lost inside the battery to the per-direction efficiency."""
        sq = math.sqrt(self.roundtrip_efficiency)
        charge = float(self.batt_charge_kw.sum())
        discharge = float(self.batt_discharge_kw.sum())
        return charge * (1.0 - sq) + discharge * (1.0 / sq - 1.0)

    @property
    def loss_kwh(self) -> float:
        """All losses: conversion + battery + curtailment."""
        return self.conversion_loss_kwh + self.battery_loss_kwh + self.curtailed_kwh

    @property
    def pv_kwh(self) -> float:
        return float(self.pv_kw.sum())

    @property
    def wt_kwh(self) -> float:
        return float(self.wt_kw.sum())

    @property
    def renewable_kwh(self) -> float:
        return self.pv_kwh + self.wt_kwh

    @property
    def dg_kwh(self) -> float:
        return float(self.dg_kw.sum())

    @property
    def dg_hours(self) -> int:
        return int(np.count_nonzero(self.dg_kw > 0.0))

    @property
    def stored_delta_kwh(self) -> float:
        """Final minus initial stored energy in the battery tanks."""
        return self.final_battery.stored_kwh - self.initial_stored_kwh

    def balance_residual_kw(self) -> np.ndarray:
        """Per-hour energy balance residual; ~0 for a correct dispatch."""
        supply = (self.pv_kw + self.wt_kw + self.dg_kw
                  + self.batt_discharge_kw + self.grid_import_kw)
        use = ((self.load_kw - self.unmet_kw) + self.batt_charge_kw
               + self.grid_export_kw + self.curtailed_kw + self.conversion_loss_kw)
        return supply - use


def pv_series(scenario: Scenario, capacity_kw: float) -> np.ndarray:
    """Available PV production for every hour, kW at the DC bus."""
    spec = scenario.catalog.pv
    g = scenario.irradiance.values
    if scenario.cell_temperature is not None:
        temp_factor = 1.0 + spec.temp_coeff_per_c * (scenario.cell_temperature.values - 25.0)
    else:
        temp_factor = 1.0
    return np.maximum(capacity_kw * spec.derating * g * temp_factor, 0.0)


def wt_series(scenario: Scenario, capacity_kw: float) -> np.ndarray:
    """Available wind production for every hour, kW at the AC bus."""
    spec = scenario.catalog.wind
    if capacity_kw <= 0.0:
        return np.zeros(len(scenario.wind_speed))
    u = scenario.wind_speed.values * (spec.hub_height_m / scenario.anemometer_height_m) ** spec.shear_exponent
    e = spec.curve_exponent
    fraction = np.clip((u**e - spec.cut_in_ms**e) / (spec.rated_ms**e - spec.cut_in_ms**e), 0.0, 1.0)
    power = capacity_kw * fraction
    area = spec.swept_area_m2_per_unit * capacity_kw / spec.nominal_kw
    aero = 0.5 * AIR_DENSITY_KG_M3 * area * u**3 * spec.power_coefficient / 1000.0
    power = np.minimum(np.minimum(power, aero), capacity_kw)
    power[(u < spec.cut_in_ms) | (u > spec.cut_out_ms)] = 0.0
    return power


def _dispatch_hour(
    load: float, pv: float, wt: float, q1: float, q2: float,
    conv_kw: float, eta: float,
    bess_on: bool, k: float, c: float, sq_eta: float,
    floor_q1: float, floor_q2: float, q_max_eff: float,
    import_cap: float, export_cap: float,
    dg_kw: float, dg_min: float, dg_alpha: float, dg_beta: float,
) -> tuple:
    """Route one hour of power.  Returns the updated tanks and flows.

    Pure float arithmetic; shared by :func:`simulate_year` and
    :func:`step_hour` so the two can never disagree.
    """
    conv_used = 0.0   # converter output-side throughput this hour
    conv_loss = 0.0

    # Wind serves load directly on the AC bus.
    wt_to_load = wt if wt < load else load
    residual = load - wt_to_load
    wt_surplus = wt - wt_to_load

    # PV serves the remaining load through the converter.
    pv_surplus = pv
    if residual > 0.0 and pv > 0.0 and conv_kw > 0.0:
        deliverable = pv * eta
        if deliverable > conv_kw:
            deliverable = conv_kw
        if deliverable > residual:
            deliverable = residual
        if deliverable > 0.0:
            used_dc = deliverable / eta
            pv_surplus = pv - used_dc
            conv_used = deliverable
            conv_loss += used_dc - deliverable
            residual -= deliverable

    charge = 0.0
    discharge = 0.0
    grid_import = 0.0
    grid_export = 0.0
    dg_out = 0.0
    fuel = 0.0
    curtailed = 0.0

    if residual > 1e-12:
        # Deficit: battery, then grid, then diesel, then unmet.
        if bess_on:
            internal = _kinetic_discharge_bound(
                max(q1 - floor_q1, 0.0), max(q2 - floor_q2, 0.0), k, c, 1.0)
            deliverable = internal * sq_eta * eta
            room = conv_kw - conv_used
            if deliverable > room:
                deliverable = room
            if deliverable > residual:
                deliverable = residual
            if deliverable > 0.0:
                discharge = deliverable / eta
                conv_used += deliverable
                conv_loss += discharge - deliverable
                residual -= deliverable
        if residual > 1e-12 and import_cap > 0.0:
            grid_import = residual if residual < import_cap else import_cap
            residual -= grid_import
        if residual > 1e-12 and dg_kw > 0.0 and residual >= dg_min * dg_kw:
            dg_out = residual if residual < dg_kw else dg_kw
            fuel = dg_alpha * dg_kw + dg_beta * dg_out
            residual -= dg_out
        unmet = residual if residual > 0.0 else 0.0
        # A converter-saturated hour can leave PV surplus even in deficit;
        # it can still charge the battery DC-direct (discharge is zero then,
        # because discharge also needed converter room).
        if pv_surplus > 0.0:
            if bess_on and discharge == 0.0:
                internal = _kinetic_charge_bound(
                    max(q1 - floor_q1, 0.0), max(q2 - floor_q2, 0.0), q_max_eff, k, c, 1.0)
                bound = internal / sq_eta
                charge = pv_surplus if pv_surplus < bound else bound
                pv_surplus -= charge
            curtailed += pv_surplus
            pv_surplus = 0.0
    else:
        unmet = 0.0
        # Surplus: charge (PV DC-direct first, wind via converter), then
        # export (wind AC-direct first, PV via converter), then curtail.
        if bess_on and (pv_surplus > 0.0 or wt_surplus > 0.0):
            internal = _kinetic_charge_bound(
                max(q1 - floor_q1, 0.0), max(q2 - floor_q2, 0.0), q_max_eff, k, c, 1.0)
            bound = internal / sq_eta
            charge = pv_surplus if pv_surplus < bound else bound
            pv_surplus -= charge
            if wt_surplus > 0.0 and charge < bound and conv_kw > conv_used:
                dc_possible = wt_surplus * eta
                room = conv_kw - conv_used
                if dc_possible > room:
                    dc_possible = room
                if dc_possible > bound - charge:
                    dc_possible = bound - charge
                if dc_possible > 0.0:
                    ac_used = dc_possible / eta
                    wt_surplus -= ac_used
                    conv_used += dc_possible
                    conv_loss += ac_used - dc_possible
                    charge += dc_possible
        if export_cap > 0.0 and (wt_surplus > 0.0 or pv_surplus > 0.0):
            grid_export = wt_surplus if wt_surplus < export_cap else export_cap
            wt_surplus -= grid_export
            room = conv_kw - conv_used
            if pv_surplus > 0.0 and room > 0.0 and grid_export < export_cap:
                ac_possible = pv_surplus * eta
                if ac_possible > room:
                    ac_possible = room
                if ac_possible > export_cap - grid_export:
                    ac_possible = export_cap - grid_export
                if ac_possible > 0.0:
                    dc_used = ac_possible / eta
                    pv_surplus -= dc_used
                    conv_used += ac_possible
                    conv_loss += dc_used - ac_possible
                    grid_export += ac_possible
        curtailed = pv_surplus + wt_surplus

    if bess_on:
        internal_current = discharge / sq_eta - charge * sq_eta
        q1, q2 = _kinetic_step(q1, q2, internal_current, k, c, 1.0)

    return (q1, q2, dg_out, charge, discharge, grid_import, grid_export,
            unmet, curtailed, fuel, conv_loss)


def _battery_params(scenario: Scenario, design: Design) -> tuple:
    spec = scenario.catalog.battery
    q_max = design.bess_kwh
    floor = spec.soc_min * q_max
    return (
        q_max > 0.0,
        spec.rate_constant_per_hr,
        spec.capacity_ratio,
        math.sqrt(spec.roundtrip_efficiency),
        spec.capacity_ratio * floor,
        (1.0 - spec.capacity_ratio) * floor,
        (spec.soc_max - spec.soc_min) * q_max,
    )


def simulate_year(scenario: Scenario, design: Design) -> DispatchTrace:
    """Simulate 8760 hours of operation; deterministic for fixed inputs."""
    problems = design.violations()
    if problems:
        raise InvalidDesignError("; ".join(problems))

    load = scenario.load.values
    pv_avail = pv_series(scenario, design.pv_kw)
    wt_avail = wt_series(scenario, design.wt_kw)
    n = len(load)

    conv_kw = design.converter_kw
    eta = scenario.catalog.converter.efficiency
    bess_on, k, c, sq_eta, floor_q1, floor_q2, q_max_eff = _battery_params(scenario, design)
    tariff = scenario.tariff
    grid_cap = design.grid_cap_kw if design.grid_cap_kw is not None else math.inf
    import_cap = min(grid_cap, tariff.max_import_kw)
    export_cap = min(grid_cap, tariff.max_export_kw)
    dg = scenario.catalog.diesel
    dg_kw, dg_min = design.dg_kw, dg.min_load_ratio
    dg_alpha, dg_beta = dg.fuel_intercept_l_per_hr_kw, dg.fuel_slope_l_per_hr_kw

    initial = battery_state_from_spec(scenario.catalog.battery, design.bess_kwh)
    q1, q2 = initial.q1_kwh, initial.q2_kwh
    q_max = design.bess_kwh

    cols: list[list[float]] = [[] for _ in range(9)]
    (dg_col, chg_col, dis_col, imp_col, exp_col, unmet_col, curt_col,
     fuel_col, loss_col) = cols
    soc = np.empty(n)

    for h in range(n):
        (q1, q2, dg_out, charge, discharge, grid_import, grid_export,
         unmet, curtailed, fuel, conv_loss) = _dispatch_hour(
            load[h], pv_avail[h], wt_avail[h], q1, q2,
            conv_kw, eta, bess_on, k, c, sq_eta,
            floor_q1, floor_q2, q_max_eff,
            import_cap, export_cap, dg_kw, dg_min, dg_alpha, dg_beta)
        dg_col.append(dg_out)
        chg_col.append(charge)
        dis_col.append(discharge)
        imp_col.append(grid_import)
        exp_col.append(grid_export)
        unmet_col.append(unmet)
        curt_col.append(curtailed)
        fuel_col.append(fuel)
        loss_col.append(conv_loss)
        soc[h] = (q1 + q2) / q_max if q_max > 0.0 else 0.0

    final = BatteryState(q1_kwh=q1, q2_kwh=q2, q_max_kwh=q_max,
                         soc_min=scenario.catalog.battery.soc_min,
                         soc_max=scenario.catalog.battery.soc_max)
    return DispatchTrace(
        load_kw=load,
        pv_kw=pv_avail,
        wt_kw=wt_avail,
        dg_kw=np.array(dg_col),
        batt_charge_kw=np.array(chg_col),
        batt_discharge_kw=np.array(dis_col),
        grid_import_kw=np.array(imp_col),
        grid_export_kw=np.array(exp_col),
        unmet_kw=np.array(unmet_col),
        curtailed_kw=np.array(curt_col),
        fuel_l_per_hr=np.array(fuel_col),
        conversion_loss_kw=np.array(loss_col),
        soc=soc,
        final_battery=final,
        initial_stored_kwh=initial.stored_kwh,
        roundtrip_efficiency=scenario.catalog.battery.roundtrip_efficiency,
    )


def step_hour(state: BatteryState, load_kw: float, pv_kw: float, wt_kw: float,
              design: Design, tariff: GridTariff, specs: Catalog) -> tuple[BatteryState, PowerFlow]:
    """Dispatch a single hour; the building block of :func:`simulate_year`."""
    spec = specs.battery
    floor = spec.soc_min * state.q_max_kwh
    grid_cap = design.grid_cap_kw if design.grid_cap_kw is not None else math.inf
    (q1, q2, dg_out, charge, discharge, grid_import, grid_export,
     unmet, curtailed, fuel, conv_loss) = _dispatch_hour(
        load_kw, pv_kw, wt_kw, state.q1_kwh, state.q2_kwh,
        design.converter_kw, specs.converter.efficiency,
        state.q_max_kwh > 0.0, spec.rate_constant_per_hr, spec.capacity_ratio,
        math.sqrt(spec.roundtrip_efficiency),
        spec.capacity_ratio * floor, (1.0 - spec.capacity_ratio) * floor,
        (spec.soc_max - spec.soc_min) * state.q_max_kwh,
        min(grid_cap, tariff.max_import_kw), min(grid_cap, tariff.max_export_kw),
        design.dg_kw, specs.diesel.min_load_ratio,
        specs.diesel.fuel_intercept_l_per_hr_kw, specs.diesel.fuel_slope_l_per_hr_kw)
    new_state = BatteryState(q1_kwh=q1, q2_kwh=q2, q_max_kwh=state.q_max_kwh,
                             soc_min=state.soc_min, soc_max=state.soc_max)
    flow = PowerFlow(
        pv_kw=pv_kw, wt_kw=wt_kw, dg_kw=dg_out,
        batt_charge_kw=charge, batt_discharge_kw=discharge,
        grid_import_kw=grid_import, grid_export_kw=grid_export,
        unmet_kw=unmet, curtailed_kw=curtailed,
        fuel_l_per_hr=fuel, conversion_loss_kw=conv_loss)
    return new_state, flow


def write_trace_csv(trace: DispatchTrace, path: str | Path) -> None:
    """Write the hourly trace: the PowerFlow columns plus ``soc``, one
    row per hour in hour order."""
    arrays = [getattr(trace, name) for name in FLOW_FIELDS] + [trace.soc]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(FLOW_FIELDS + ("soc",)) + "\n")
        for h in range(len(trace.load_kw)):
            fh.write(",".join(f"{float(a[h]):.6f}" for a in arrays) + "\n")
