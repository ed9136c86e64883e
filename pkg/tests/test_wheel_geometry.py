import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from waistband.errors import ConfigurationError, DomainError, PlanningError
from waistband.wheel_geometry import (
    PRINTED_BOUNDARIES,
    WheelConfig,
    combined_envelope,
    envelope_for_config,
    interpolated_elongation,
    required_spacing,
    select_config,
)


@st.composite
def configs(draw, wheel_count=None):
    n = wheel_count or draw(st.sampled_from([2, 3]))
    lo = draw(st.floats(50.0, 800.0))
    hi = lo + draw(st.floats(1.0, 800.0))
    e_hi = draw(st.floats(1.05, 3.0))
    e_lo = e_hi + draw(st.floats(0.0, 1.5))
    assume(2 * hi * e_hi > lo * e_hi + hi * e_lo)
    return WheelConfig(n, lo, hi, elongation_factor_at_max=e_hi, elongation_factor_at_min=e_lo)


def quadratic_spacing(cfg, target):
    """Closed-form inverse of L * E(L) = W for the linear factor model."""
    slope = (cfg.elongation_factor_at_max - cfg.elongation_factor_at_min) / (cfg.max_spacing - cfg.min_spacing)
    icpt = cfg.elongation_factor_at_min - slope * cfg.min_spacing
    if slope == 0:
        return target / icpt
    return (-icpt + math.sqrt(icpt * icpt + 4 * slope * target)) / (2 * slope)


# --- envelopes -----------------------------------------------------------------

def test_envelope_three_wheel(cfg3):
    env = envelope_for_config(cfg3)
    assert env.max_boundary == pytest.approx(1687.5, abs=1e-9)
    assert env.min_boundary == pytest.approx(816.0, abs=1e-9)
    # printed values disagree with the products and are kept only as references
    assert PRINTED_BOUNDARIES["3-wheel max"] != env.max_boundary
    assert PRINTED_BOUNDARIES["3-wheel min"] != env.min_boundary


def test_envelope_two_wheel(cfg2):
    env = envelope_for_config(cfg2)
    assert env.min_boundary == 750.0
    assert env.min_boundary == PRINTED_BOUNDARIES["2-wheel min"]
    assert env.max_boundary == pytest.approx(1612.5, abs=1e-9)


def test_point_envelope():
    cfg = WheelConfig(2, 500.0, 500.0, 2.0, 2.0)
    env = envelope_for_config(cfg)
    assert (env.min_boundary, env.max_boundary) == (1000.0, 1000.0)
    assert interpolated_elongation(cfg, 500.0) == 2.0
    assert required_spacing(cfg, 1000.0) == 500.0


def test_combined_envelope_reference(cfg3, cfg2):
    env = combined_envelope(cfg3, cfg2)
    assert env.min_boundary == 750.0
    assert env.max_boundary == pytest.approx(1687.5, abs=1e-9)
    assert (env.min_source, env.max_source) == ("2-wheel", "3-wheel")


def test_combined_envelope_identical_configs():
    cfg3 = WheelConfig(3, 300.0, 750.0, 2.25, 2.72)
    cfg2 = WheelConfig(2, 300.0, 750.0, 2.25, 2.72)
    a, b = combined_envelope(cfg3, cfg2), envelope_for_config(cfg3)
    assert (a.min_boundary, a.max_boundary) == (b.min_boundary, b.max_boundary)


def test_combined_envelope_errors(cfg3, cfg2):
    with pytest.raises(ConfigurationError):
        combined_envelope(cfg2, cfg3)
    big2 = WheelConfig(2, 900.0, 1000.0, 2.0, 2.0)
    with pytest.raises(ConfigurationError, match="empty envelope"):
        combined_envelope(cfg3, big2)


@pytest.mark.parametrize("args", [
    (4, 300.0, 750.0, 2.25, 2.72),
    (3, 0.0, 750.0, 2.25, 2.72),
    (3, 800.0, 750.0, 2.25, 2.72),
    (3, 300.0, 750.0, 0.9, 2.72),
    (3, 300.0, 750.0, 2.72, 2.25),
    (3, 500.0, 500.0, 2.0, 2.5),
    # factor drops so fast the boundary shrinks toward max spacing
    (3, 100.0, 1000.0, 1.01, 10.0),
])
def test_wheel_config_invariants(args):
    with pytest.raises(ConfigurationError):
        WheelConfig(*args)


@given(configs())
def test_envelope_ordered(cfg):
    env = envelope_for_config(cfg)
    assert env.min_boundary <= env.max_boundary


@given(configs(3), configs(2))
def test_combined_is_definition(cfg3, cfg2):
    assume(cfg2.min_spacing * cfg2.elongation_factor_at_min <= cfg3.max_spacing * cfg3.elongation_factor_at_max)
    env = combined_envelope(cfg3, cfg2)
    assert env.max_boundary == envelope_for_config(cfg3).max_boundary
    assert env.min_boundary == envelope_for_config(cfg2).min_boundary


# --- interpolation and inverse -------------------------------------------------

def test_interpolated_elongation(cfg3):
    assert interpolated_elongation(cfg3, 300.0) == 2.72
    assert interpolated_elongation(cfg3, 750.0) == 2.25
    assert interpolated_elongation(cfg3, 525.0) == pytest.approx(2.485, abs=1e-12)
    with pytest.raises(DomainError):
        interpolated_elongation(cfg3, 299.0)


@given(configs())
def test_boundary_strictly_increasing(cfg):
    xs = np.linspace(cfg.min_spacing, cfg.max_spacing, 1001)
    ws = np.array([cfg.boundary_at(float(x)) for x in xs])
    assert np.all(np.diff(ws) > 0)


def test_required_spacing_examples(cfg3):
    assert required_spacing(cfg3, 1687.5) == 750.0
    assert required_spacing(cfg3, 816.0) == 300.0
    x = required_spacing(cfg3, 1300.0)
    assert 300.0 < x < 750.0
    assert abs(x * interpolated_elongation(cfg3, x) - 1300.0) <= 0.01
    assert x == pytest.approx(quadratic_spacing(cfg3, 1300.0), abs=1e-3)


def test_required_spacing_out_of_range(cfg3):
    with pytest.raises(DomainError, match="below"):
        required_spacing(cfg3, 800.0)
    with pytest.raises(DomainError, match="above"):
        required_spacing(cfg3, 1700.0)


@settings(deadline=None)
@given(configs(), st.floats(0.0, 1.0))
def test_required_spacing_against_grid(cfg, frac):
    env = envelope_for_config(cfg)
    target = env.min_boundary + frac * (env.max_boundary - env.min_boundary)
    x = required_spacing(cfg, target)
    assert abs(cfg.boundary_at(x) - target) <= 0.01
    xs = np.linspace(cfg.min_spacing, cfg.max_spacing, 20001)
    ws = xs * np.array([interpolated_elongation(cfg, float(v)) for v in xs])
    grid_x = xs[np.argmin(np.abs(ws - target))]
    assert abs(x - grid_x) <= (xs[1] - xs[0]) + 0.01


# --- selection -----------------------------------------------------------------

def test_select_large_target_uses_three_wheels(machine):
    plan = select_config(machine, 1650.0)
    assert plan.chosen_config.wheel_count == 3
    assert plan.boundary == pytest.approx(1650.0, abs=0.01)


def test_select_small_target_uses_two_wheels(machine):
    plan = select_config(machine, 800.0)
    assert plan.chosen_config.wheel_count == 2


def test_select_tie_break_prefers_two_wheels(machine):
    plan = select_config(machine, 1200.0)
    assert plan.chosen_config.wheel_count == 2
    plan = select_config(machine, 1200.0, prefer=(3, 2))
    assert plan.chosen_config.wheel_count == 3


def test_select_min_boundary_is_min_spacing(machine):
    plan = select_config(machine, 750.0)
    assert plan.chosen_config.wheel_count == 2
    assert plan.spacing == 300.0


def test_select_infeasible(machine):
    with pytest.raises(PlanningError) as info:
        select_config(machine, 500.0)
    env = info.value.envelope
    assert (env.min_boundary, env.max_boundary) == (750.0, pytest.approx(1687.5))


@settings(deadline=None)
@given(st.lists(configs(), min_size=1, max_size=2, unique_by=lambda c: c.wheel_count),
       st.floats(100.0, 5000.0))
def test_select_respects_spacing_range(machine, target):
    try:
        plan = select_config(machine, target)
    except PlanningError:
        assert not any(envelope_for_config(c).contains(target) for c in machine)
        return
    cfg = plan.chosen_config
    assert cfg.min_spacing <= plan.spacing <= cfg.max_spacing
    assert abs(plan.boundary - target) <= 0.01
