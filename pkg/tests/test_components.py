import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mgdesign.components import (
    BatteryState,
    BelowMinLoadError,
    BoundViolationError,
    NonPositiveHeightError,
    battery_replacements,
    bess_max_charge,
    bess_max_discharge,
    bess_step,
    converter_transfer,
    dg_fuel,
    hub_wind_speed,
    pv_output,
    wt_output,
)
from mgdesign.scenario import BatterySpec, DieselSpec, PVSpec, WindTurbineSpec

from .helpers import integrate_tanks, ode_max_charge, ode_max_discharge

PV = PVSpec()
WT = WindTurbineSpec()
DG = DieselSpec()


class TestPV:
    def test_stc_point(self):
        # 100 kW at standard irradiance/temperature with 0.8 derating
        assert pv_output(PV, 100.0, 1.0, 25.0) == pytest.approx(80.0)

    def test_zero_irradiance(self):
        assert pv_output(PV, 100.0, 0.0, 25.0) == 0.0

    def test_temperature_correction(self):
        # 1 kW, derating 0.8, half irradiance, 20 degC above standard
        assert pv_output(PV, 1.0, 0.5, 45.0) == pytest.approx(0.368)

    def test_linear_in_irradiance_and_capacity(self):
        base = pv_output(PV, 10.0, 0.4)
        assert pv_output(PV, 10.0, 0.8) == pytest.approx(2.0 * base)
        assert pv_output(PV, 30.0, 0.4) == pytest.approx(3.0 * base)

    def test_clamped_at_zero_for_extreme_heat(self):
        hot = 25.0 + 1.0 / 0.004 + 100.0  # temperature term < 0
        assert pv_output(PV, 100.0, 1.0, hot) == 0.0


class TestHubWindSpeed:
    def test_identity_at_same_height(self):
        assert hub_wind_speed(7.3, 10.0, 10.0) == pytest.approx(7.3)

    def test_power_law_value(self):
        assert hub_wind_speed(5.0, 10.0, 15.0, 0.14) == pytest.approx(5.292035886848778, abs=1e-9)

    def test_zero_wind(self):
        assert hub_wind_speed(0.0, 10.0, 15.0) == 0.0

    def test_bad_heights(self):
        with pytest.raises(NonPositiveHeightError):
            hub_wind_speed(5.0, 0.0, 15.0)
        with pytest.raises(NonPositiveHeightError):
            hub_wind_speed(5.0, 10.0, -2.0)


class TestWTOutput:
    def test_below_cut_in(self):
        assert wt_output(WT, 100.0, 3.0) == 0.0

    def test_above_cut_out(self):
        assert wt_output(WT, 100.0, 25.0) == 0.0

    def test_rated_region_clamps_to_nameplate(self):
        for u in (12.0, 15.0, 20.0, 24.0):
            assert wt_output(WT, 100.0, u) == pytest.approx(100.0)

    def test_mid_curve_regression(self):
        # cubic rise between cut-in 4 and rated 12: (8^3-4^3)/(12^3-4^3)
        assert wt_output(WT, 100.0, 8.0) == pytest.approx(26.923076923076923)

    def test_never_exceeds_nameplate(self):
        for u in np.linspace(0.0, 30.0, 121):
            assert wt_output(WT, 55.0, float(u)) <= 55.0 + 1e-12

    def test_quadratic_curve_variant(self):
        quad = WindTurbineSpec(curve_exponent=2.0)
        expected = 100.0 * (64.0 - 16.0) / (144.0 - 16.0)
        assert wt_output(quad, 100.0, 8.0) == pytest.approx(expected)

    def test_aero_limit_binds_for_small_swept_area(self):
        # starved rotor: aerodynamic ceiling below the curve value
        tiny = WindTurbineSpec(swept_area_m2_per_unit=1.0)
        aero = 0.5 * 1.225 * (1.0 * 100.0 / 3.0) * 8.0**3 * 0.40 / 1000.0
        assert wt_output(tiny, 100.0, 8.0) == pytest.approx(aero)


class TestDieselFuel:
    def test_engine_off(self):
        assert dg_fuel(DG, 60.0, 0.0) == 0.0

    def test_linear_law(self):
        assert dg_fuel(DG, 60.0, 30.0) == pytest.approx(0.08 * 60.0 + 0.25 * 30.0)

    def test_below_min_load(self):
        with pytest.raises(BelowMinLoadError):
            dg_fuel(DG, 60.0, 10.0)

    def test_above_rating_rejected(self):
        with pytest.raises(ValueError):
            dg_fuel(DG, 60.0, 61.0)


class TestBatteryBounds:
    SPEC = BatterySpec()

    def _state(self, q_max=100.0, soc=0.8):
        return BatteryState.at_soc(q_max, soc, capacity_ratio=0.5)

    def test_empty_above_floor_discharge_zero(self):
        state = self._state(soc=0.2)
        assert bess_max_discharge(state) == 0.0

    def test_full_charge_zero(self):
        state = self._state(soc=0.8)
        assert bess_max_charge(state) == 0.0

    def test_discharge_bound_against_ode_oracle(self):
        # q_max=100, soc=0.8 with window [0.2, 0.8]: 30 kWh in each tank
        state = self._state()
        bound = bess_max_discharge(state, 1.0, 1.0, 0.5, roundtrip_efficiency=1.0)
        assert bound == pytest.approx(36.761990206816925, rel=1e-12)
        oracle = ode_max_discharge(30.0, 30.0, k=1.0, c=0.5, dt=1.0)
        assert bound == pytest.approx(float(oracle), rel=5e-3)

    def test_charge_bound_against_ode_oracle(self):
        state = self._state(soc=0.2)  # empty above the floor
        bound = bess_max_charge(state, 1.0, 1.0, 0.5, roundtrip_efficiency=1.0)
        oracle = ode_max_charge(0.0, 0.0, q_max=60.0, k=1.0, c=0.5, dt=1.0)
        assert bound == pytest.approx(float(oracle), rel=5e-3)

    def test_small_dt_matches_oracle(self):
        state = self._state()
        dt = 0.01
        bound = bess_max_discharge(state, dt, 1.0, 0.5, roundtrip_efficiency=1.0)
        oracle = ode_max_discharge(30.0, 30.0, k=1.0, c=0.5, dt=dt, step=1e-5)
        assert bound == pytest.approx(float(oracle), rel=5e-3)

    def test_efficiency_symmetric_bounds(self):
        # with unit efficiency the charge bound at the mirrored state
        # equals the discharge bound
        full = self._state(soc=0.8)
        empty = self._state(soc=0.2)
        d = bess_max_discharge(full, 1.0, 1.0, 0.5, roundtrip_efficiency=1.0)
        c = bess_max_charge(empty, 1.0, 1.0, 0.5, roundtrip_efficiency=1.0)
        assert d == pytest.approx(c, rel=1e-12)

    def test_discharge_monotone_in_q1(self):
        prev = -1.0
        for q1 in np.linspace(10.0, 40.0, 13):
            state = BatteryState(q1_kwh=float(q1), q2_kwh=30.0, q_max_kwh=100.0)
            bound = bess_max_discharge(state)
            assert bound >= prev
            prev = bound

    @settings(max_examples=60, deadline=None)
    @given(
        q_max=st.floats(min_value=10.0, max_value=1000.0),
        u1=st.floats(min_value=0.0, max_value=1.0),
        u2=st.floats(min_value=0.0, max_value=1.0),
        k=st.floats(min_value=0.2, max_value=3.0),
        c=st.floats(min_value=0.2, max_value=0.8),
    )
    def test_bounds_match_oracle_randomized(self, q_max, u1, u2, k, c):
        q_eff_max = 0.6 * q_max
        q1 = 0.2 * q_max * c + u1 * c * q_eff_max
        q2 = 0.2 * q_max * (1.0 - c) + u2 * (1.0 - c) * q_eff_max
        state = BatteryState(q1_kwh=q1, q2_kwh=q2, q_max_kwh=q_max)
        q1e = q1 - 0.2 * q_max * c
        q2e = q2 - 0.2 * q_max * (1.0 - c)
        discharge = bess_max_discharge(state, 1.0, k, c, roundtrip_efficiency=1.0)
        oracle = float(ode_max_discharge(q1e, q2e, k=k, c=c, dt=1.0))
        if oracle > 1e-6 * q_max:
            assert discharge == pytest.approx(oracle, rel=5e-3)
        charge = bess_max_charge(state, 1.0, k, c, roundtrip_efficiency=1.0)
        oracle_c = float(ode_max_charge(q1e, q2e, q_max=q_eff_max, k=k, c=c, dt=1.0))
        if oracle_c > 1e-6 * q_max:
            assert charge == pytest.approx(oracle_c, rel=5e-3)


class TestBatteryStep:
    def test_zero_power_equilibrates(self):
        state = BatteryState(q1_kwh=50.0, q2_kwh=10.0, q_max_kwh=100.0)
        for _ in range(30):
            state = bess_step(state, 0.0, dt_hr=1.0)
        assert state.q1_kwh / state.stored_kwh == pytest.approx(0.5, abs=1e-6)
        assert state.stored_kwh == pytest.approx(60.0, rel=1e-12)

    def test_roundtrip_efficiency(self):
        state = BatteryState.at_soc(100.0, 0.5, capacity_ratio=0.5)
        charged = bess_step(state, +10.0, dt_hr=1.0, roundtrip_efficiency=0.9)
        stored_gain = charged.stored_kwh - state.stored_kwh
        assert stored_gain == pytest.approx(10.0 * math.sqrt(0.9), rel=1e-12)
        # pull the stored gain back out in one hour
        discharge_power = stored_gain * math.sqrt(0.9)
        back = bess_step(charged, -discharge_power, dt_hr=1.0, roundtrip_efficiency=0.9)
        assert back.stored_kwh == pytest.approx(state.stored_kwh, abs=1e-9)
        assert discharge_power / 10.0 == pytest.approx(0.9, rel=1e-9)

    def test_soc_window_respected_on_random_walk(self):
        rng = np.random.default_rng(3)
        state = BatteryState.at_soc(200.0, 0.8, capacity_ratio=0.5)
        for _ in range(500):
            if rng.integers(0, 2):
                power = +rng.uniform(0.0, 1.0) * bess_max_charge(state)
            else:
                power = -rng.uniform(0.0, 1.0) * bess_max_discharge(state)
            state = bess_step(state, power)
            assert 0.2 - 1e-9 <= state.soc <= 0.8 + 1e-9

    def test_energy_conservation_random_sequence(self):
        rng = np.random.default_rng(11)
        state = BatteryState.at_soc(500.0, 0.8, capacity_ratio=0.5)
        initial = state.stored_kwh
        net_internal = 0.0
        sq = math.sqrt(0.9)
        for _ in range(300):
            if rng.integers(0, 2):
                power = rng.uniform(0.0, 1.0) * bess_max_charge(state)
                net_internal += power * sq
            else:
                power = -rng.uniform(0.0, 1.0) * bess_max_discharge(state)
                net_internal += power / sq
            state = bess_step(state, power)
        assert abs(state.stored_kwh - initial - net_internal) < 1e-6 * 500.0

    def test_bound_violation_raises(self):
        state = BatteryState.at_soc(100.0, 0.8, capacity_ratio=0.5)
        bound = bess_max_charge(state)
        with pytest.raises(BoundViolationError):
            bess_step(state, bound + 1.0)

    def test_step_agrees_with_fine_integrator(self):
        state = BatteryState(q1_kwh=35.0, q2_kwh=25.0, q_max_kwh=100.0)
        power = -10.0  # discharge 10 kW delivered
        stepped = bess_step(state, power, dt_hr=1.0, roundtrip_efficiency=1.0)
        q1, q2 = integrate_tanks(35.0, 25.0, 10.0, k=1.0, c=0.5, dt=1.0)
        assert stepped.q1_kwh == pytest.approx(float(q1), rel=1e-3)
        assert stepped.q2_kwh == pytest.approx(float(q2), rel=1e-3)


class TestBatteryReplacements:
    def test_paper_case(self):
        assert battery_replacements(25, 10) == 3

    def test_lifetime_covers_project(self):
        assert battery_replacements(10, 20) == 1

    def test_exact_division(self):
        assert battery_replacements(20, 10) == 2

    def test_invalid(self):
        with pytest.raises(ValueError):
            battery_replacements(0, 10)


class TestConverter:
    def test_zero_input(self):
        assert converter_transfer(0.0, 0.95) == 0.0

    def test_efficiency(self):
        assert converter_transfer(100.0, 0.95) == pytest.approx(95.0)

    def test_fixed_loss_clamp(self):
        assert converter_transfer(1.0, 0.5, fixed_loss_kw=1.0) == 0.0

    def test_negative_input_rejected(self):
        with pytest.raises(ValueError):
            converter_transfer(-1.0, 0.95)
