"""Rolling-wheel envelopes and configuration selection.

A wheel configuration stretches the band loop over its wheels; at wheel
spacing ``L`` the mounted loop has a rounded boundary ``W = L * E`` where the
elongation factor ``E`` shrinks linearly from its value at the minimum
spacing to its value at the maximum spacing.

Published reference values for the two configurations (mm), kept for
comparison only. The products of the published spacings and factors are the
normative values; only the 2-wheel minimum is printed as its product:

    ================  =======  =======
    bound             product  printed
    ================  =======  =======
    3-wheel maximum   1687.5   1691
    3-wheel minimum    816.0    861
    2-wheel maximum   1612.5   1619
    2-wheel minimum    750.0    750
    ================  =======  =======
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence

from ._roots import invert_increasing
from .errors import ConfigurationError, DomainError, PlanningError

SPACING_TOL = 0.01  # mm, round-trip tolerance on the boundary
_BOUND_SLACK = 1e-9  # relative; absorbs rounding in the spacing * factor products

PRINTED_BOUNDARIES: Dict[str, float] = {
    "3-wheel max": 1691.0,
    "3-wheel min": 861.0,
    "2-wheel max": 1619.0,
    "2-wheel min": 750.0,
}


@dataclass(frozen=True)
class WheelConfig:
    wheel_count: int
    min_spacing: float
    max_spacing: float
    elongation_factor_at_max: float
    elongation_factor_at_min: float

    def __post_init__(self):
        if self.wheel_count not in (2, 3):
            raise ConfigurationError("wheel_count must be 2 or 3")
        if not 0 < self.min_spacing <= self.max_spacing:
            raise ConfigurationError("need 0 < min_spacing <= max_spacing")
        if not (self.elongation_factor_at_max > 1 and self.elongation_factor_at_min > 1):
            raise ConfigurationError("elongation factors must exceed 1")
        if self.elongation_factor_at_min < self.elongation_factor_at_max:
            raise ConfigurationError(
                "elongation_factor_at_min must be >= elongation_factor_at_max"
            )
        if self.min_spacing == self.max_spacing:
            if self.elongation_factor_at_min != self.elongation_factor_at_max:
                raise ConfigurationError(
                    "a fixed-spacing config needs a single elongation factor"
                )
            return
        # L * E(L) must rise across the range so every boundary has one spacing;
        # its slope is linear in L, so checking the max-spacing end suffices.
        lo, hi = self.min_spacing, self.max_spacing
        e_lo, e_hi = self.elongation_factor_at_min, self.elongation_factor_at_max
        if not 2 * hi * e_hi > lo * e_hi + hi * e_lo:
            raise ConfigurationError(
                "elongation factor falls too fast: boundary would shrink as "
                "spacing grows"
            )

    @property
    def label(self) -> str:
        return f"{self.wheel_count}-wheel"

    def boundary_at(self, spacing: float) -> float:
        """Rounded boundary (mm) of the loop at ``spacing``."""
        return spacing * interpolated_elongation(self, spacing)


@dataclass(frozen=True)
class MachineEnvelope:
    min_boundary: float
    max_boundary: float
    min_source: str
    max_source: str

    def __post_init__(self):
        if not 0 < self.min_boundary <= self.max_boundary:
            raise ConfigurationError(
                f"empty envelope: min {self.min_boundary:g} mm > "
                f"max {self.max_boundary:g} mm"
            )

    def contains(self, boundary: float) -> bool:
        return (
            self.min_boundary * (1 - _BOUND_SLACK)
            <= boundary
            <= self.max_boundary * (1 + _BOUND_SLACK)
        )


@dataclass(frozen=True)
class WheelPlan:
    chosen_config: WheelConfig
    spacing: float
    effective_elongation: float

    def __post_init__(self):
        cfg = self.chosen_config
        if not cfg.min_spacing <= self.spacing <= cfg.max_spacing:
            raise ConfigurationError(
                f"spacing {self.spacing:g} mm outside "
                f"[{cfg.min_spacing:g}, {cfg.max_spacing:g}] mm"
            )

    @property
    def boundary(self) -> float:
        return self.spacing * self.effective_elongation


def envelope_for_config(config: WheelConfig) -> MachineEnvelope:
    return MachineEnvelope(
        min_boundary=config.min_spacing * config.elongation_factor_at_min,
        max_boundary=config.max_spacing * config.elongation_factor_at_max,
        min_source=config.label,
        max_source=config.label,
    )


def combined_envelope(cfg3: WheelConfig, cfg2: WheelConfig) -> MachineEnvelope:
    """Envelope of a machine carrying both wheel sets.

    The 3-wheel set supplies the maximum boundary, the 2-wheel set the minimum.
    """
    if cfg3.wheel_count != 3 or cfg2.wheel_count != 2:
        raise ConfigurationError(
            "combined_envelope expects a 3-wheel and a 2-wheel config, got "
            f"{cfg3.wheel_count} and {cfg2.wheel_count}"
        )
    return MachineEnvelope(
        min_boundary=cfg2.min_spacing * cfg2.elongation_factor_at_min,
        max_boundary=cfg3.max_spacing * cfg3.elongation_factor_at_max,
        min_source=cfg2.label,
        max_source=cfg3.label,
    )


def interpolated_elongation(config: WheelConfig, spacing: float) -> float:
    lo, hi = config.min_spacing, config.max_spacing
    if not lo <= spacing <= hi:
        raise DomainError(f"spacing {spacing:g} mm outside [{lo:g}, {hi:g}] mm")
    if hi == lo:
        return config.elongation_factor_at_min
    frac = (spacing - lo) / (hi - lo)
    e_lo, e_hi = config.elongation_factor_at_min, config.elongation_factor_at_max
    return e_lo + frac * (e_hi - e_lo)


def required_spacing(config: WheelConfig, target_boundary: float) -> float:
    """Spacing (mm) at which the loop boundary equals ``target_boundary``."""
    env = envelope_for_config(config)
    if target_boundary < env.min_boundary * (1 - _BOUND_SLACK):
        raise DomainError(
            f"target {target_boundary:g} mm below the {config.label} minimum "
            f"boundary {env.min_boundary:g} mm"
        )
    if target_boundary > env.max_boundary * (1 + _BOUND_SLACK):
        raise DomainError(
            f"target {target_boundary:g} mm above the {config.label} maximum "
            f"boundary {env.max_boundary:g} mm"
        )
    return invert_increasing(
        config.boundary_at,
        target_boundary,
        config.min_spacing,
        config.max_spacing,
        ftol=SPACING_TOL / 10,
    )


def machine_envelope(machine: Sequence[WheelConfig]) -> MachineEnvelope:
    """Overall envelope of a machine, for reporting.

    Uses the combined 3-wheel/2-wheel rule when both sets are fitted and the
    hull of the individual envelopes otherwise.
    """
    by_count = {c.wheel_count: c for c in machine}
    if 2 in by_count and 3 in by_count:
        try:
            return combined_envelope(by_count[3], by_count[2])
        except ConfigurationError:
            pass
    envs = [envelope_for_config(c) for c in machine]
    lo = min(envs, key=lambda e: e.min_boundary)
    hi = max(envs, key=lambda e: e.max_boundary)
    return MachineEnvelope(lo.min_boundary, hi.max_boundary, lo.min_source, hi.max_source)


def select_config(
    machine: Iterable[WheelConfig],
    target_boundary: float,
    prefer: Optional[Sequence[int]] = (2, 3),
) -> WheelPlan:
    """Pick a wheel set and spacing for ``target_boundary``.

    When several sets can reach the target, ``prefer`` orders them by wheel
    count (2-wheel first by default).
    """
    machine = list(machine)
    if not machine:
        raise ConfigurationError("machine has no wheel configurations")
    rank = {n: i for i, n in enumerate(prefer or ())}
    feasible = [c for c in machine if envelope_for_config(c).contains(target_boundary)]
    if not feasible:
        env = machine_envelope(machine)
        raise PlanningError(
            f"target boundary {target_boundary:g} mm is outside the machine "
            f"envelope [{env.min_boundary:g}, {env.max_boundary:g}] mm",
            envelope=env,
        )
    feasible.sort(key=lambda c: rank.get(c.wheel_count, len(rank)))
    cfg = feasible[0]
    spacing = required_spacing(cfg, target_boundary)
    return WheelPlan(cfg, spacing, interpolated_elongation(cfg, spacing))
