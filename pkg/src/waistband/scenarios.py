"""Random stretch-cycle scenarios for fuzzing the overload controller."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .elastic_model import ElasticBand, ForceDeformationCurve, max_safe_extension
from .errors import ConfigurationError
from .force_control import ControlSetting, ServoSpec, full_torque_force
from .stretch_sim import SimParams
from .wheel_geometry import WheelConfig, WheelPlan, interpolated_elongation


@dataclass(frozen=True)
class Scenario:
    curve: ForceDeformationCurve
    plan: WheelPlan
    limit: ControlSetting
    params: SimParams
    start_spacing: float

    @property
    def force_step_bound(self) -> float:
        """Upper bound on the true-force rise between two samples, N."""
        return per_step_force_bound(self.curve, self.plan, self.params)


def per_step_force_bound(curve: ForceDeformationCurve, plan: WheelPlan, params: SimParams) -> float:
    extension_step = 0.5 * params.spacing_step * plan.effective_elongation
    return curve.max_slope() * extension_step


def _random_curve(rng: np.random.Generator) -> ForceDeformationCurve:
    k = rng.uniform(20.0, 1000.0)
    brk = rng.uniform(5.0, 100.0)
    linear_fracture = brk / k * 1000.0
    if rng.random() < 0.5:
        band = ElasticBand(rng.uniform(100.0, 600.0), k, brk)
        return ForceDeformationCurve(band)
    prop = linear_fracture * rng.uniform(0.3, 0.9)
    knot = k * prop / 1000.0
    secant = k * rng.uniform(0.4, 1.2) / 1000.0
    frac = prop + (brk - knot) / secant
    band = ElasticBand(rng.uniform(100.0, 600.0), k, brk,
                       proportional_limit_extension=prop, fracture_extension=frac)
    for ratio in (rng.uniform(0.2, 1.0), secant * 1000.0 / k):
        try:
            return ForceDeformationCurve(band, end_slope_ratio=ratio)
        except ConfigurationError:
            continue
    raise AssertionError("secant-slope end ratio is always monotone")


def random_scenario(rng: np.random.Generator, max_steps: int = 400) -> Scenario:
    """One noise-free scenario with ``limit <= break`` and any step size."""
    curve = _random_curve(rng)
    band = curve.band

    lo = rng.uniform(100.0, 500.0)
    hi = lo + rng.uniform(10.0, 500.0)
    e_hi = rng.uniform(1.5, 2.5)
    e_lo = e_hi + rng.uniform(0.0, 0.3) * (hi - lo) / hi
    cfg = WheelConfig(2 if rng.random() < 0.5 else 3, lo, hi, e_hi, e_lo)
    spacing = rng.uniform(lo, hi)
    e = interpolated_elongation(cfg, spacing)
    plan = WheelPlan(cfg, spacing, e)

    # rest length puts the target anywhere from slack to well past fracture
    target_ext = band.fracture_extension * rng.uniform(0.2, 2.0)
    rest = 0.5 * spacing * e - target_ext
    if rest <= 1.0:
        rest = 1.0
    band = ElasticBand(rest, band.stiffness, band.break_force,
                       band.proportional_limit_extension, band.fracture_extension)
    curve = ForceDeformationCurve(band, curve.end_slope_ratio)

    servo = ServoSpec(rng.uniform(0.5, 5.0), rng.uniform(5.0, 20.0))
    safety = band.break_force * rng.uniform(0.05, 1.0)
    safety = min(safety, full_torque_force(servo))
    limit = ControlSetting.for_force(servo, safety)

    params = SimParams(
        time_step=int(rng.integers(1, 11)),
        wheel_speed=float(rng.uniform(5.0, 400.0)),
        max_sim_time=120.0,
    )
    # start below the limit, at most ``max_steps`` samples short of it
    x_limit = max_safe_extension(curve, limit.safety_force)
    ext_step = 0.5 * params.spacing_step * e
    start_ext = rng.uniform(max(0.0, x_limit - 0.9 * max_steps * ext_step), x_limit) * 0.999
    start = min(2.0 * (rest + start_ext) / e, spacing)
    return Scenario(curve, plan, limit, params, float(start))


def random_safe_scenario(rng: np.random.Generator, max_steps: int = 400) -> Scenario:
    """Draw until the per-step force rise is below the limit-to-break headroom."""
    while True:
        sc = random_scenario(rng, max_steps)
        headroom = sc.curve.band.break_force - sc.limit.safety_force
        if sc.force_step_bound < headroom:
            return sc
