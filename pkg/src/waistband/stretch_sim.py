"""Discrete-time simulation of one force-limited stretch cycle.

The servo drives the wheels apart at constant speed. Each sample the
controller reads the (optionally noisy) band tension, and

* stops with ``overload_stop`` once the sensed tension reaches the safety force,
* holds with ``reached_target`` once the planned spacing is reached,
* flags ``fractured`` if the band's true extension went past fracture,
* gives up with ``timeout`` when the watchdog expires.

The loop is checked *before* each advance, so an overload is caught one
sample after the advance that caused it.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import List, NamedTuple, Optional

import numpy as np

from .elastic_model import FRACTURED, ElasticBand, ForceDeformationCurve, curve_force
from .errors import ConfigurationError
from .force_control import ControlSetting
from .wheel_geometry import WheelPlan

ADVANCING = "advancing"
HOLDING = "holding"
STOPPED = "stopped"

REACHED_TARGET = "reached_target"
OVERLOAD_STOP = "overload_stop"
FRACTURED_OUTCOME = "fractured"
TIMEOUT = "timeout"

CSV_HEADER = (
    "time_ms",
    "spacing_mm",
    "extension_mm",
    "sensed_force_n",
    "commanded",
    "outcome_marker",
)


@dataclass(frozen=True)
class SimParams:
    time_step: int = 1  # ms
    wheel_speed: float = 100.0  # mm/s
    sensor_noise_amplitude: float = 0.0  # N
    max_sim_time: float = 60.0  # s
    rng_seed: int = 0

    def __post_init__(self):
        if int(self.time_step) != self.time_step or self.time_step <= 0:
            raise ConfigurationError("time_step must be a positive whole number of ms")
        if not self.wheel_speed > 0:
            raise ConfigurationError("wheel_speed must be positive")
        if not self.max_sim_time > 0:
            raise ConfigurationError("max_sim_time must be positive")
        if self.sensor_noise_amplitude < 0:
            raise ConfigurationError("sensor_noise_amplitude must be non-negative")

    @property
    def spacing_step(self) -> float:
        """Spacing gained per sample, mm."""
        return self.wheel_speed * self.time_step / 1000.0


class Sample(NamedTuple):
    time: int  # ms
    spacing: float
    extension: float
    sensed_force: float
    commanded: str
    true_force: float


@dataclass(frozen=True)
class StretchTrace:
    samples: List[Sample]
    outcome: str

    @property
    def final_spacing(self) -> float:
        return self.samples[-1].spacing

    @property
    def final_extension(self) -> float:
        return self.samples[-1].extension

    @property
    def peak_force(self) -> float:
        return max(s.sensed_force for s in self.samples)

    @property
    def duration_ms(self) -> int:
        return self.samples[-1].time


@dataclass(frozen=True)
class Finding:
    """One design-check result; ``margin`` is negative when violated.

    Non-blocking findings describe cycles the controller ends safely with an
    overload stop.
    """

    code: str
    message: str
    margin: float
    blocking: bool = True


def extension_at_spacing(band: ElasticBand, spacing: float, elongation: float) -> float:
    """Band extension (mm) when the loop is mounted at ``spacing``.

    The mounted loop's rounded boundary is ``spacing * elongation``; the band's
    rest length is a half-circumference, so it is compared with half of it.
    """
    return max(0.0, 0.5 * spacing * elongation - band.rest_length)


def target_extension(curve: ForceDeformationCurve, plan: WheelPlan) -> float:
    return extension_at_spacing(curve.band, plan.spacing, plan.effective_elongation)


def validate_cycle(
    curve: ForceDeformationCurve, plan: WheelPlan, limit: ControlSetting
) -> List[Finding]:
    """Noise-free design check of a planned cycle; empty means safe."""
    band = curve.band
    findings = []
    x_target = target_extension(curve, plan)
    f_target, _ = curve_force(curve, x_target)

    if limit.safety_force > band.break_force:
        findings.append(Finding(
            "limit_exceeds_break",
            f"limit exceeds break force: {limit.safety_force:.4g} N > "
            f"{band.break_force:.4g} N",
            band.break_force - limit.safety_force,
        ))
    if x_target > band.fracture_extension:
        findings.append(Finding(
            "target_beyond_fracture",
            f"target extension {x_target:.4g} mm is beyond the fracture "
            f"extension {band.fracture_extension:.4g} mm",
            band.fracture_extension - x_target,
        ))
    if f_target >= limit.safety_force:
        findings.append(Finding(
            "target_force_at_limit",
            f"target force {f_target:.4g} N reaches the force limit "
            f"{limit.safety_force:.4g} N; the cycle would stop short",
            limit.safety_force - f_target,
            blocking=False,
        ))
    return findings


def simulate_cycle(
    curve: ForceDeformationCurve,
    plan: WheelPlan,
    limit: ControlSetting,
    params: SimParams = SimParams(),
    start_spacing: Optional[float] = None,
) -> StretchTrace:
    """Run one stretch cycle from ``start_spacing`` toward ``plan.spacing``.

    ``start_spacing`` defaults to the chosen configuration's minimum spacing.
    """
    band = curve.band
    if start_spacing is None:
        start_spacing = plan.chosen_config.min_spacing
    if not 0 < start_spacing <= plan.spacing:
        raise ConfigurationError(
            f"start_spacing must lie in (0, {plan.spacing:g}] mm"
        )
    codes = {f.code for f in validate_cycle(curve, plan, limit)}
    if {"limit_exceeds_break", "target_beyond_fracture"} <= codes:
        raise ConfigurationError(
            "plan stretches the band past fracture and the force limit is "
            "above the break force"
        )

    rng = np.random.default_rng(params.rng_seed)
    amp = params.sensor_noise_amplitude
    dt = int(params.time_step)
    step = params.spacing_step
    t_max = round(params.max_sim_time * 1000)
    e = plan.effective_elongation
    safety = limit.safety_force

    samples = []
    n = 0
    spacing = start_spacing
    while True:
        t = n * dt
        ext = extension_at_spacing(band, spacing, e)
        force, region = curve_force(curve, ext)
        sensed = force + rng.uniform(-amp, amp) if amp > 0 else force

        if region == FRACTURED:
            outcome, commanded = FRACTURED_OUTCOME, STOPPED
        elif sensed >= safety:
            outcome, commanded = OVERLOAD_STOP, STOPPED
        elif spacing >= plan.spacing:
            outcome, commanded = REACHED_TARGET, HOLDING
        elif t >= t_max:
            outcome, commanded = TIMEOUT, STOPPED
        else:
            outcome, commanded = None, ADVANCING
        samples.append(Sample(t, spacing, ext, sensed, commanded, force))
        if outcome is not None:
            return StretchTrace(samples, outcome)
        n += 1
        spacing = min(start_spacing + n * step, plan.spacing)


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def trace_to_csv(trace: StretchTrace) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    last = len(trace.samples) - 1
    for i, s in enumerate(trace.samples):
        writer.writerow([
            s.time,
            _fmt(s.spacing),
            _fmt(s.extension),
            _fmt(s.sensed_force),
            s.commanded,
            trace.outcome if i == last else "",
        ])
    return buf.getvalue()


def write_trace_csv(trace: StretchTrace, path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(trace_to_csv(trace))
