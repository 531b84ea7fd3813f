import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mgdesign.scenario import (
    DEFAULT_DAILY_LOAD_KW,
    HOURS_PER_YEAR,
    InvalidVariabilityError,
    LengthMismatchError,
    Scenario,
    TimeSeries,
    TimeSeriesParseError,
    ScenarioValidationError,
    Unit,
    load_timeseries,
    synthesize_irradiance,
    synthesize_load,
    synthesize_wind_speed,
    validate_scenario,
    write_timeseries,
)


def _write_lines(path, values):
    path.write_text("\n".join(str(v) for v in values) + "\n", encoding="utf-8")


class TestLoadTimeseries:
    def test_zeros_file(self, tmp_path):
        path = tmp_path / "zeros.txt"
        _write_lines(path, [0.0] * HOURS_PER_YEAR)
        series = load_timeseries(path, Unit.KW)
        assert len(series) == HOURS_PER_YEAR
        assert np.all(series.values == 0.0)

    def test_parse_error_carries_line_number(self, tmp_path):
        path = tmp_path / "bad.txt"
        values = ["1.0"] * HOURS_PER_YEAR
        values[6] = "abc"  # line 7
        _write_lines(path, values)
        with pytest.raises(TimeSeriesParseError) as err:
            load_timeseries(path, Unit.KW)
        assert err.value.line == 7

    def test_length_mismatch(self, tmp_path):
        path = tmp_path / "long.txt"
        _write_lines(path, [1.0] * (HOURS_PER_YEAR + 1))
        with pytest.raises(LengthMismatchError) as err:
            load_timeseries(path, Unit.KW)
        assert err.value.expected == HOURS_PER_YEAR
        assert err.value.got == HOURS_PER_YEAR + 1

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_timeseries(tmp_path / "nope.txt", Unit.KW)

    def test_negative_power_rejected(self, tmp_path):
        path = tmp_path / "neg.txt"
        values = [1.0] * HOURS_PER_YEAR
        values[3] = -5.0
        _write_lines(path, values)
        with pytest.raises(ScenarioValidationError):
            load_timeseries(path, Unit.KW)

    def test_comments_and_blank_lines_skipped(self, tmp_path):
        path = tmp_path / "comments.txt"
        body = "# header\n\n" + "\n".join(["1.5  # inline"] * HOURS_PER_YEAR)
        path.write_text(body, encoding="utf-8")
        series = load_timeseries(path, Unit.KW)
        assert np.all(series.values == 1.5)

    def test_round_trip_bit_exact(self, tmp_path):
        rng = np.random.default_rng(7)
        original = TimeSeries(rng.uniform(0.0, 300.0, HOURS_PER_YEAR), Unit.KW)
        path = tmp_path / "rt.txt"
        write_timeseries(original, path)
        back = load_timeseries(path, Unit.KW)
        assert np.array_equal(back.values, original.values)


class TestSynthesizeLoad:
    def test_zero_variability_tiles_profile(self):
        series = synthesize_load(DEFAULT_DAILY_LOAD_KW, 0.0, 0.0, seed=1)
        tiled = np.tile(DEFAULT_DAILY_LOAD_KW, 365)
        assert np.array_equal(series.values, tiled)

    def test_flat_profile_annual_energy(self):
        flat = (3139.3 / 24.0,) * 24
        series = synthesize_load(flat, 0.0, 0.0, seed=1)
        assert series.values.sum() == pytest.approx(3139.3 * 365, rel=1e-3)

    def test_same_seed_identical(self):
        a = synthesize_load(DEFAULT_DAILY_LOAD_KW, 0.15, 0.1, seed=99)
        b = synthesize_load(DEFAULT_DAILY_LOAD_KW, 0.15, 0.1, seed=99)
        assert np.array_equal(a.values, b.values)

    def test_invalid_variability(self):
        with pytest.raises(InvalidVariabilityError):
            synthesize_load(DEFAULT_DAILY_LOAD_KW, 1.0, 0.0, seed=1)
        with pytest.raises(InvalidVariabilityError):
            synthesize_load(DEFAULT_DAILY_LOAD_KW, 0.0, -0.1, seed=1)

    @settings(max_examples=20, deadline=None)
    @given(v=st.floats(min_value=0.0, max_value=0.5), seed=st.integers(0, 2**20))
    def test_variability_envelope(self, v, seed):
        profile = np.asarray(DEFAULT_DAILY_LOAD_KW)
        series = synthesize_load(profile, v, v, seed=seed)
        per_hour = series.values.reshape(365, 24)
        low = profile * (1.0 - v) ** 2
        high = profile * (1.0 + v) ** 2
        assert np.all(per_hour >= low - 1e-9)
        assert np.all(per_hour <= high + 1e-9)


class TestResourceSynthesis:
    def test_irradiance_monthly_means_exact(self):
        monthly = (7.6, 6.4, 4.7, 3.0, 2.0, 1.7, 1.85, 2.55, 3.7, 5.1, 6.6, 7.7)
        series = synthesize_irradiance(monthly, seed=5)
        month_days = (31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31)
        daily = series.values.reshape(365, 24).sum(axis=1)
        start = 0
        for days, target in zip(month_days, monthly):
            assert daily[start:start + days].mean() == pytest.approx(target, rel=1e-9)
            start += days

    def test_irradiance_zero_at_night(self):
        series = synthesize_irradiance((5.0,) * 12, seed=5)
        by_hour = series.values.reshape(365, 24)
        assert np.all(by_hour[:, 0] == 0.0)
        assert np.all(by_hour[:, 23] == 0.0)

    def test_wind_non_negative_and_monthly_means(self):
        monthly = (4.1, 4.0, 3.9, 4.0, 4.2, 4.7, 4.9, 5.0, 4.9, 4.7, 4.4, 4.2)
        series = synthesize_wind_speed(monthly, seed=6)
        assert np.all(series.values >= 0.0)
        month_days = np.repeat((31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31), 1)
        idx = np.repeat(np.arange(12), np.asarray(month_days) * 24)
        for m in range(12):
            assert series.values[idx == m].mean() == pytest.approx(monthly[m], rel=1e-9)


class TestValidateScenario:
    def test_bundled_scenario_valid(self, bundled):
        assert validate_scenario(bundled) is bundled

    def test_bad_lambda_reported(self, bundled):
        broken = replace(bundled, reliability_lambda=0.0)
        with pytest.raises(ScenarioValidationError) as err:
            validate_scenario(broken)
        assert any("reliability_lambda" in v for v in err.value.violations)

    def test_short_series_reported(self, bundled):
        short = TimeSeries(bundled.load.values[:-1], Unit.KW)
        broken = replace(bundled, load=short)
        with pytest.raises(ScenarioValidationError) as err:
            validate_scenario(broken)
        assert any("length" in v for v in err.value.violations)

    def test_all_violations_collected(self, bundled):
        broken = replace(bundled, reliability_lambda=-1.0, anemometer_height_m=0.0)
        with pytest.raises(ScenarioValidationError) as err:
            validate_scenario(broken)
        assert len(err.value.violations) >= 2

    def test_immutable(self, bundled):
        with pytest.raises(Exception):
            bundled.reliability_lambda = 5.0
        with pytest.raises(ValueError):
            bundled.load.values[0] = 1.0
