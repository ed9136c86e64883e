"""Torque and force caps for the stretching servo.

The servo turns a rod of radius ``r``; at full rated torque ``T`` it pulls with
``T / r``. The controller caps torque to a fraction ``C`` of rated, so the
pull never exceeds ``T * C / r``. Torque in N*m, radius in mm, force in N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigurationError, DomainError, InfeasibleLimitError

MM_PER_M = 1000.0
FORCE_MATCH_TOL = 1e-9  # N
DEFAULT_GRANULARITY = 0.01
TIE_RTOL = 1e-12  # decimal ties (F_s == break force) must count as "<="


@dataclass(frozen=True)
class ServoSpec:
    rated_torque: float
    rod_radius: float

    def __post_init__(self):
        if not self.rated_torque > 0:
            raise ConfigurationError("rated_torque must be positive")
        if not self.rod_radius > 0:
            raise ConfigurationError("rod_radius must be positive")


@dataclass(frozen=True)
class ControlSetting:
    """A torque cap and the band force it implies for ``servo``."""

    servo: ServoSpec
    control_percent: float
    safety_force: float

    def __post_init__(self):
        _check_percent(self.control_percent)
        expected = limited_force(self.servo, self.control_percent)
        if abs(expected - self.safety_force) > FORCE_MATCH_TOL:
            raise ConfigurationError(
                f"safety_force {self.safety_force!r} N does not match "
                f"{expected!r} N for C = {self.control_percent!r}"
            )

    @classmethod
    def for_percent(cls, servo: ServoSpec, control_percent: float) -> "ControlSetting":
        return cls(servo, control_percent, limited_force(servo, control_percent))

    @classmethod
    def for_force(cls, servo: ServoSpec, safety_force: float) -> "ControlSetting":
        """Setting whose limited force is exactly ``safety_force``."""
        c = safety_force / full_torque_force(servo)
        return cls.for_percent(servo, c)


def _check_percent(control_percent: float) -> None:
    if not 0 < control_percent <= 1:
        raise DomainError(
            f"control_percent must lie in (0, 1], got {control_percent!r}"
        )


def full_torque_force(servo: ServoSpec) -> float:
    return servo.rated_torque / (servo.rod_radius / MM_PER_M)


def limited_torque(servo: ServoSpec, control_percent: float) -> float:
    _check_percent(control_percent)
    return servo.rated_torque * control_percent


def limited_force(servo: ServoSpec, control_percent: float) -> float:
    _check_percent(control_percent)
    return servo.rated_torque * control_percent / (servo.rod_radius / MM_PER_M)


def max_control_percent(
    servo: ServoSpec,
    break_force: float,
    granularity: float = DEFAULT_GRANULARITY,
) -> ControlSetting:
    """Largest multiple of ``granularity`` whose limited force stays <= ``break_force``.

    Raises
    ------
    InfeasibleLimitError
        If a single granule already pulls harder than ``break_force``.
    """
    if not break_force > 0:
        raise DomainError("break_force must be positive")
    if not 0 < granularity <= 1:
        raise DomainError("granularity must lie in (0, 1]")

    ceiling = break_force * (1 + TIE_RTOL)
    max_steps = math.floor(1.0 / granularity + 1e-9)
    steps = min(math.floor(break_force / full_torque_force(servo) / granularity), max_steps)
    # floor() on a ratio of floats can land one granule off either way
    while steps < max_steps and limited_force(servo, (steps + 1) * granularity) <= ceiling:
        steps += 1
    while steps > 0 and limited_force(servo, steps * granularity) > ceiling:
        steps -= 1
    if steps == 0:
        raise InfeasibleLimitError(
            f"one granule ({granularity:g}) of {servo.rated_torque:g} N*m "
            f"already exceeds {break_force:g} N"
        )
    return ControlSetting.for_percent(servo, round(steps * granularity, 12))
