"""Machine and band JSON files.

Machine file::

    {
      "servo":    {"rated_torque": 2.4, "rod_radius": 9.5},
      "configs":  [{"wheel_count": 3, "min_spacing": 300, "max_spacing": 750,
                    "elongation_factor_at_max": 2.25,
                    "elongation_factor_at_min": 2.72}, ...],
      "defaults": {"time_step": 1, "wheel_speed": 100.0, ...}       (optional)
    }

Band file::

    {
      "rest_length": 420,          mm, unstretched half-circumference
      "break_force": 31,           N
      "stiffness": 120.1,          N/m, or give the measurement pair below
      "stretched_length": 610,     mm, measured stretched half-circumference
      "measured_force": 22.82,     N, tension at stretched_length
      "proportional_limit_extension", "fracture_extension",
      "cross_section_area", "young_modulus", "end_slope_ratio"   (optional)
    }

Errors name the offending field (``configs[1].min_spacing``) or, for broken
JSON, the line and column.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields
from importlib import resources
from pathlib import Path
from typing import Any, List, Mapping, Optional

from .elastic_model import (
    DEFAULT_END_SLOPE_RATIO,
    ElasticBand,
    ForceDeformationCurve,
    stiffness_from_measurement,
)
from .force_control import ServoSpec
from .stretch_sim import SimParams
from .wheel_geometry import WheelConfig


class InputError(ValueError):
    """A spec file is missing a field, has a bad value, or is not JSON."""

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field


@dataclass(frozen=True)
class MachineSpec:
    servo: ServoSpec
    configs: List[WheelConfig]
    defaults: SimParams


@dataclass(frozen=True)
class BandSpec:
    band: ElasticBand
    curve: ForceDeformationCurve
    stretched_length: Optional[float] = None
    measured_force: Optional[float] = None

    @property
    def measured_extension(self) -> Optional[float]:
        if self.stretched_length is None:
            return None
        return self.stretched_length - self.band.rest_length


def data_path(name: str) -> Path:
    """Path of a file shipped in the package's data directory."""
    return Path(str(resources.files("waistband") / "data" / name))


def read_json(path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc


def _number(obj: Mapping, key: str, where: str, required: bool = True):
    name = f"{where}.{key}" if where else key
    if key not in obj or obj[key] is None:
        if required:
            raise InputError("required field is missing", name)
        return None
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise InputError(f"expected a finite number, got {value!r}", name)
    return value


def _mapping(obj: Any, name: str) -> Mapping:
    if not isinstance(obj, dict):
        raise InputError("expected a JSON object", name or "<root>")
    return obj


def _build(cls, name: str, **kwargs):
    try:
        return cls(**kwargs)
    except ValueError as exc:
        raise InputError(str(exc), name) from exc


def parse_machine(doc: Any) -> MachineSpec:
    doc = _mapping(doc, "")
    servo_doc = _mapping(doc.get("servo"), "servo")
    servo = _build(
        ServoSpec, "servo",
        rated_torque=_number(servo_doc, "rated_torque", "servo"),
        rod_radius=_number(servo_doc, "rod_radius", "servo"),
    )

    raw_configs = doc.get("configs")
    if not isinstance(raw_configs, list) or not raw_configs:
        raise InputError("expected a non-empty list", "configs")
    configs = []
    for i, raw in enumerate(raw_configs):
        where = f"configs[{i}]"
        raw = _mapping(raw, where)
        values = {
            f.name: _number(raw, f.name, where) for f in fields(WheelConfig)
        }
        if int(values["wheel_count"]) != values["wheel_count"]:
            raise InputError("must be an integer", f"{where}.wheel_count")
        values["wheel_count"] = int(values["wheel_count"])
        configs.append(_build(WheelConfig, where, **values))
    counts = [c.wheel_count for c in configs]
    if len(set(counts)) != len(counts):
        raise InputError("at most one config per wheel count", "configs")

    defaults_doc = _mapping(doc.get("defaults", {}), "defaults")
    known = {f.name for f in fields(SimParams)}
    unknown = set(defaults_doc) - known
    if unknown:
        raise InputError(f"unknown field(s) {sorted(unknown)}", "defaults")
    overrides = {k: _number(defaults_doc, k, "defaults") for k in defaults_doc}
    for key in ("time_step", "rng_seed"):
        if key in overrides:
            if int(overrides[key]) != overrides[key]:
                raise InputError("must be an integer", f"defaults.{key}")
            overrides[key] = int(overrides[key])
    defaults = _build(SimParams, "defaults", **overrides)
    return MachineSpec(servo, configs, defaults)


def parse_band(doc: Any) -> BandSpec:
    doc = _mapping(doc, "")
    rest = _number(doc, "rest_length", "")
    break_force = _number(doc, "break_force", "")
    stretched = _number(doc, "stretched_length", "", required=False)
    measured = _number(doc, "measured_force", "", required=False)
    stiffness = _number(doc, "stiffness", "", required=False)
    if (stretched is None) != (measured is None):
        missing = "measured_force" if measured is None else "stretched_length"
        raise InputError("required alongside its measurement partner", missing)
    if stiffness is None:
        if stretched is None:
            raise InputError(
                "required field is missing (or give stretched_length and "
                "measured_force)",
                "stiffness",
            )
        try:
            stiffness = stiffness_from_measurement(measured, stretched - rest)
        except ValueError as exc:
            raise InputError(str(exc), "stretched_length") from exc

    band = _build(
        ElasticBand, "band",
        rest_length=rest,
        stiffness=stiffness,
        break_force=break_force,
        proportional_limit_extension=_number(doc, "proportional_limit_extension", "", False),
        fracture_extension=_number(doc, "fracture_extension", "", False),
        cross_section_area=_number(doc, "cross_section_area", "", False),
        young_modulus=_number(doc, "young_modulus", "", False),
    )
    ratio = _number(doc, "end_slope_ratio", "", required=False)
    curve = _build(
        ForceDeformationCurve, "end_slope_ratio",
        band=band,
        end_slope_ratio=DEFAULT_END_SLOPE_RATIO if ratio is None else ratio,
    )
    return BandSpec(band, curve, stretched, measured)


def load_machine(path) -> MachineSpec:
    return parse_machine(read_json(path))


def load_band(path) -> BandSpec:
    return parse_band(read_json(path))

