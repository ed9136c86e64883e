"""Exit criteria for the toolkit, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed in the pytest
terminal summary (see conftest.py).
"""

import time

import numpy as np
import pytest

from waistband import cli
from waistband.elastic_model import (
    ElasticBand,
    ForceDeformationCurve,
    curve_force,
    elongation_percent,
    max_safe_extension,
    stiffness_from_measurement,
)
from waistband.force_control import ServoSpec, limited_force, max_control_percent
from waistband.scenarios import random_safe_scenario
from waistband.specfiles import data_path
from waistband.stretch_sim import FRACTURED_OUTCOME, OVERLOAD_STOP, simulate_cycle, validate_cycle
from waistband.wheel_geometry import (
    PRINTED_BOUNDARIES,
    WheelConfig,
    combined_envelope,
    envelope_for_config,
    interpolated_elongation,
    required_spacing,
    select_config,
)

RESULTS = []


def record(criterion, ok, detail):
    RESULTS.append(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")
    assert ok, detail


CFG3 = WheelConfig(3, 300.0, 750.0, elongation_factor_at_max=2.25, elongation_factor_at_min=2.72)
CFG2 = WheelConfig(2, 300.0, 750.0, elongation_factor_at_max=2.15, elongation_factor_at_min=2.50)
SERVO = ServoSpec(2.4, 9.5)


def test_1_elongation():
    value = elongation_percent(610, 420)
    record("1 elongation", abs(value - 45.238) <= 0.05, f"{value:.4f} % (target 45.238 +/- 0.05)")


def test_2_stiffness():
    k = stiffness_from_measurement(22.82, 190)
    record("2 stiffness", abs(k - 120.105) <= 0.5, f"{k:.4f} N/m (target 120.105 +/- 0.5)")


def test_3_control_percent():
    setting = max_control_percent(SERVO, 31.0, granularity=0.01)
    next_force = limited_force(SERVO, 0.13)
    ok = (
        setting.control_percent == 0.12
        and abs(setting.safety_force - 30.316) <= 0.05
        and next_force > 31.0
    )
    record("3 control percent", ok,
           f"C = {setting.control_percent * 100:g} %, F_s = {setting.safety_force:.4f} N, "
           f"13 % granule gives {next_force:.4f} N > 31 N")


def test_4_envelopes():
    env = combined_envelope(CFG3, CFG2)
    env3 = envelope_for_config(CFG3)
    ok = (
        env.min_boundary == PRINTED_BOUNDARIES["2-wheel min"] == 750.0
        and abs(env.max_boundary - 1687.5) <= 0.01
        and abs(env3.max_boundary - 1687.5) <= 0.01
        and abs(env3.min_boundary - 816.0) <= 0.01
    )
    record("4 envelopes", ok,
           f"combined [{env.min_boundary:g}, {env.max_boundary:g}] mm; 3-wheel products "
           f"{env3.max_boundary:g}/{env3.min_boundary:g} mm vs printed "
           f"{PRINTED_BOUNDARIES['3-wheel max']:g}/{PRINTED_BOUNDARIES['3-wheel min']:g} mm "
           "(formula values are normative)")


def test_5_safety_chain():
    band = ElasticBand(420.0, stiffness_from_measurement(22.82, 190.0), 31.0)
    curve = ForceDeformationCurve(band)
    plan = select_config([CFG3, CFG2], 2 * 610.0)
    limit = max_control_percent(SERVO, 31.0)
    findings = validate_cycle(curve, plan, limit)
    applied = curve_force(curve, 0.5 * plan.boundary - band.rest_length)[0]
    ok = not findings and applied <= limit.safety_force <= band.break_force
    record("5 safety chain", ok,
           f"{len(findings)} findings; {applied:.2f} N <= {limit.safety_force:.2f} N <= "
           f"{band.break_force:g} N")


def test_6_simulation_safety():
    rng = np.random.default_rng(20240601)
    n = 1000
    fractured = overshoots = stops = 0
    worst = 0.0
    t0 = time.perf_counter()
    for _ in range(n):
        sc = random_safe_scenario(rng)
        assert sc.params.sensor_noise_amplitude == 0
        assert sc.limit.safety_force <= sc.curve.band.break_force
        trace = simulate_cycle(sc.curve, sc.plan, sc.limit, sc.params, sc.start_spacing)
        fractured += trace.outcome == FRACTURED_OUTCOME
        if trace.outcome == OVERLOAD_STOP:
            stops += 1
            excess = trace.peak_force - sc.limit.safety_force
            worst = max(worst, excess / sc.force_step_bound)
            overshoots += excess > sc.force_step_bound
    elapsed = time.perf_counter() - t0
    ok = fractured == 0 and overshoots == 0 and elapsed < 10.0
    record("6 simulation safety", ok,
           f"{n} scenarios, {fractured} fractured, {stops} overload stops, "
           f"worst overshoot {worst:.3f} of one step, {elapsed:.2f} s")


def test_7_oracle_round_trips():
    rng = np.random.default_rng(7)
    n = 120
    worst_mm = worst_spacing_gap = 0.0
    for _ in range(n):
        lo = rng.uniform(50.0, 600.0)
        hi = lo + rng.uniform(10.0, 600.0)
        e_hi = rng.uniform(1.2, 3.0)
        e_lo = e_hi + rng.uniform(0.0, 0.5) * (hi - lo) / hi
        cfg = WheelConfig(int(rng.choice([2, 3])), lo, hi, e_hi, e_lo)
        env = envelope_for_config(cfg)
        target = rng.uniform(env.min_boundary, env.max_boundary)
        x = required_spacing(cfg, target)
        worst_mm = max(worst_mm, abs(x * interpolated_elongation(cfg, x) - target))
        # brute force: the grid point whose boundary is nearest the target
        xs = np.linspace(lo, hi, 20001)
        ws = np.array([v * interpolated_elongation(cfg, float(v)) for v in xs])
        i = int(np.argmin(np.abs(ws - target)))
        worst_spacing_gap = max(worst_spacing_gap, abs(x - xs[i]) / (xs[1] - xs[0]))

    worst_n = 0.0
    worst_x_gap = 0.0
    for _ in range(n):
        k = rng.uniform(20.0, 1000.0)
        brk = rng.uniform(5.0, 100.0)
        if rng.random() < 0.5:
            curve = ForceDeformationCurve(ElasticBand(400.0, k, brk))
        else:
            prop = brk / k * 1000.0 * rng.uniform(0.3, 0.9)
            frac = prop + (brk - k * prop / 1000.0) / (k * rng.uniform(0.5, 1.2) / 1000.0)
            band = ElasticBand(400.0, k, brk, proportional_limit_extension=prop, fracture_extension=frac)
            curve = ForceDeformationCurve(band, end_slope_ratio=0.5)
        force = rng.uniform(0.0, brk)
        x = max_safe_extension(curve, force)
        worst_n = max(worst_n, abs(curve_force(curve, x)[0] - force))
        xs = np.linspace(0.0, curve.band.fracture_extension, 20001)
        fs = np.array([curve_force(curve, float(v))[0] for v in xs])
        j = int(np.searchsorted(fs, force))
        worst_x_gap = max(worst_x_gap, min(abs(x - xs[max(j - 1, 0)]), abs(x - xs[min(j, len(xs) - 1)]))
                          / (xs[1] - xs[0]))
    ok = worst_mm <= 0.01 and worst_n <= 1e-6 and worst_spacing_gap <= 1.0 and worst_x_gap <= 1.0
    record("7 oracle round-trips", ok,
           f"{n}+{n} instances; boundary error {worst_mm:.2e} mm, force error {worst_n:.2e} N; "
           f"grid oracles agree within {worst_spacing_gap:.2f} / {worst_x_gap:.2f} cells")


def test_8_determinism(tmp_path, capsys):
    machine, band = str(data_path("reference_machine.json")), str(data_path("reference_band.json"))
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        code = cli.main(["simulate", machine, band, "--target", "1220", "--noise", "0.5",
                         "--seed", "42", "--out", str(p)])
        assert code == 0
    capsys.readouterr()
    a, b = (p.read_bytes() for p in paths)
    record("8 determinism", a == b and len(a) > 0,
           f"two seeded runs, {len(a)} bytes each, identical={a == b}")
