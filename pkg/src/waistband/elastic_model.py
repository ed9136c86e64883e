"""Material model of a sewn elastic band.

Lengths are in mm, forces in N and stiffness in N/m. Every function that mixes
stiffness with an extension converts mm to m explicitly.

The force-deformation curve has three regions:

* ``linear``     0 <= x <= proportional limit, F = k x
* ``nonlinear``  proportional limit < x <= fracture, a monotone cubic Hermite
                 segment that leaves the knot with slope k and reaches the break
                 force with slope ``end_slope_ratio * k``
* ``fractured``  x > fracture, the band is destroyed and the force is reported
                 as the break force
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from ._roots import invert_increasing
from .errors import ConfigurationError, DomainError, RegionError

MM_PER_M = 1000.0
FORCE_TOL = 1e-6  # N, inversion tolerance
DEFAULT_END_SLOPE_RATIO = 1.0 / 3.0

LINEAR = "linear"
NONLINEAR = "nonlinear"
FRACTURED = "fractured"

_REL_EPS = 1e-9


def _close(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=_REL_EPS, abs_tol=1e-12)


@dataclass(frozen=True)
class ElasticBand:
    """Geometry and strength of one elastic band.

    ``rest_length`` is the unstretched half-circumference of the sewn loop.
    Leaving both region limits unset gives a band that stays linear all the
    way to its break force (fracture at ``break_force / stiffness``).
    """

    rest_length: float
    stiffness: float
    break_force: float
    proportional_limit_extension: Optional[float] = None
    fracture_extension: Optional[float] = None
    cross_section_area: Optional[float] = None
    young_modulus: Optional[float] = None

    def __post_init__(self):
        if not self.rest_length > 0:
            raise ConfigurationError("rest_length must be positive")
        if not self.stiffness > 0:
            raise ConfigurationError("stiffness must be positive")
        if not self.break_force > 0:
            raise ConfigurationError("break_force must be positive")

        linear_fracture = self.break_force / self.stiffness * MM_PER_M
        prop, frac = self.proportional_limit_extension, self.fracture_extension
        if prop is None and frac is None:
            prop = frac = linear_fracture
        elif prop is None:
            if not _close(frac, linear_fracture):
                raise ConfigurationError(
                    "fracture_extension without proportional_limit_extension "
                    f"must equal break_force/stiffness ({linear_fracture:g} mm)"
                )
            prop = frac
        elif frac is None:
            raise ConfigurationError(
                "proportional_limit_extension requires fracture_extension"
            )
        if not 0 < prop <= frac:
            raise ConfigurationError(
                "need 0 < proportional_limit_extension <= fracture_extension"
            )
        knot_force = self.stiffness * prop / MM_PER_M
        if _close(prop, frac):
            prop = frac
            if not _close(knot_force, self.break_force):
                raise ConfigurationError(
                    "a band without a nonlinear region must break at "
                    "stiffness * fracture_extension"
                )
        elif not knot_force < self.break_force:
            raise ConfigurationError(
                f"linear force at the proportional limit ({knot_force:g} N) "
                "must stay below break_force"
            )
        object.__setattr__(self, "proportional_limit_extension", float(prop))
        object.__setattr__(self, "fracture_extension", float(frac))

        if self.young_modulus is not None:
            if self.cross_section_area is None:
                raise ConfigurationError(
                    "young_modulus requires cross_section_area"
                )
            if not self.young_modulus > 0:
                raise ConfigurationError("young_modulus must be positive")
        if self.cross_section_area is not None and not self.cross_section_area > 0:
            raise ConfigurationError("cross_section_area must be positive")

    @property
    def is_linear(self) -> bool:
        return self.proportional_limit_extension == self.fracture_extension


@dataclass(frozen=True)
class ForceDeformationCurve:
    """Piecewise extension -> force law of a band, up to and past fracture."""

    band: ElasticBand
    end_slope_ratio: float = DEFAULT_END_SLOPE_RATIO

    def __post_init__(self):
        if not self.end_slope_ratio > 0:
            raise ConfigurationError("end_slope_ratio must be positive")
        if self._segment_min_slope() <= 0:
            raise ConfigurationError(
                f"end_slope_ratio={self.end_slope_ratio:g} makes the nonlinear "
                "segment non-monotone for this band"
            )

    def _segment_coefficients(self):
        b = self.band
        x0 = b.proportional_limit_extension
        h = b.fracture_extension - x0
        y0 = b.stiffness * x0 / MM_PER_M
        y1 = b.break_force
        m0 = b.stiffness / MM_PER_M
        m1 = self.end_slope_ratio * m0
        return x0, h, y0, y1, m0, m1

    def _segment_slope_extremes(self) -> Tuple[float, float]:
        """Exact (min, max) of dF/dx over the Hermite segment, N/mm."""
        if self.band.is_linear:
            k = self.band.stiffness / MM_PER_M
            return k, k
        _, h, y0, y1, m0, m1 = self._segment_coefficients()
        d = (y1 - y0) / h
        # dF/dx = a t^2 + b t + m0 on t in [0, 1]
        a = -6.0 * d + 3.0 * m0 + 3.0 * m1
        b = 6.0 * d - 4.0 * m0 - 2.0 * m1
        candidates = [m0, m1]
        if a != 0:
            t = -b / (2.0 * a)
            if 0.0 < t < 1.0:
                candidates.append(a * t * t + b * t + m0)
        return min(candidates), max(candidates)

    def _segment_min_slope(self) -> float:
        return self._segment_slope_extremes()[0]

    def max_slope(self) -> float:
        """Steepest dF/dx anywhere on [0, fracture], N/mm."""
        return max(self.band.stiffness / MM_PER_M, self._segment_slope_extremes()[1])

    def segment_force(self, extension: float) -> float:
        x0, h, y0, y1, m0, m1 = self._segment_coefficients()
        t = (extension - x0) / h
        t2 = t * t
        t3 = t2 * t
        return (
            (2 * t3 - 3 * t2 + 1) * y0
            + (t3 - 2 * t2 + t) * h * m0
            + (-2 * t3 + 3 * t2) * y1
            + (t3 - t2) * h * m1
        )


def elongation_percent(final_length: float, original_length: float) -> float:
    """Percentage growth of ``final_length`` over ``original_length``.

    Negative for a compressed band.

    >>> round(elongation_percent(610, 420), 4)
    45.2381
    """
    if not original_length > 0:
        raise DomainError("original_length must be positive")
    if final_length < 0:
        raise DomainError("final_length must be non-negative")
    return (final_length - original_length) / original_length * 100.0


def stiffness_from_measurement(force: float, extension: float) -> float:
    """Stiffness in N/m from one force (N) / extension (mm) pair."""
    if not extension > 0:
        raise DomainError("extension must be positive")
    if force < 0:
        raise DomainError("force must be non-negative")
    return force * MM_PER_M / extension


def hooke_force(band: ElasticBand, extension: float) -> float:
    if extension < 0 or extension > band.proportional_limit_extension:
        raise RegionError(
            f"extension {extension:g} mm is outside the linear region "
            f"[0, {band.proportional_limit_extension:g}] mm; use curve_force"
        )
    return band.stiffness * (extension / MM_PER_M)


def extension_from_force_young(band: ElasticBand, force: float) -> float:
    """Extension in mm under ``force`` from the Young's-modulus law.

    Uses dL = (1/Y) (F/A) L0 with Y in N/mm^2, A in mm^2 and L0 the band's
    rest length.
    """
    if band.young_modulus is None or band.cross_section_area is None:
        raise ConfigurationError(
            "band needs young_modulus and cross_section_area for this law"
        )
    if force < 0:
        raise DomainError("force must be non-negative")
    stress = force / band.cross_section_area
    return stress / band.young_modulus * band.rest_length


def curve_force(curve: ForceDeformationCurve, extension: float) -> Tuple[float, str]:
    """Force and region name at ``extension`` (mm)."""
    if extension < 0:
        raise DomainError("extension must be non-negative")
    band = curve.band
    if extension > band.fracture_extension:
        return band.break_force, FRACTURED
    if extension == band.fracture_extension:
        region = LINEAR if band.is_linear else NONLINEAR
        return band.break_force, region
    if extension <= band.proportional_limit_extension:
        return band.stiffness * (extension / MM_PER_M), LINEAR
    return curve.segment_force(extension), NONLINEAR


def max_safe_extension(curve: ForceDeformationCurve, force_limit: float) -> float:
    """Largest extension (mm) whose curve force does not exceed ``force_limit``."""
    band = curve.band
    if force_limit < 0:
        raise DomainError("force_limit must be non-negative")
    if force_limit > band.break_force:
        raise DomainError(
            f"force_limit {force_limit:g} N exceeds break force "
            f"{band.break_force:g} N"
        )
    if force_limit == 0:
        return 0.0
    if force_limit == band.break_force:
        return band.fracture_extension
    return invert_increasing(
        lambda x: curve_force(curve, x)[0],
        force_limit,
        0.0,
        band.fracture_extension,
        ftol=FORCE_TOL / 10,
    )
