"""Planning and simulation toolkit for an automated elastic-waistband stretcher."""

from .elastic_model import (
    ElasticBand,
    ForceDeformationCurve,
    curve_force,
    elongation_percent,
    extension_from_force_young,
    hooke_force,
    max_safe_extension,
    stiffness_from_measurement,
)
from .errors import (
    ConfigurationError,
    DomainError,
    InfeasibleLimitError,
    PlanningError,
    RegionError,
)
from .force_control import (
    ControlSetting,
    ServoSpec,
    full_torque_force,
    limited_force,
    limited_torque,
    max_control_percent,
)
from .stretch_sim import (
    SimParams,
    StretchTrace,
    simulate_cycle,
    trace_to_csv,
    validate_cycle,
)
from .wheel_geometry import (
    MachineEnvelope,
    WheelConfig,
    WheelPlan,
    combined_envelope,
    envelope_for_config,
    interpolated_elongation,
    required_spacing,
    select_config,
)

__version__ = "0.1.0"
