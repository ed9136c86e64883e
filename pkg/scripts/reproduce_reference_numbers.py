"""Print the reference band/machine numbers computed by the library.

    python3 scripts/reproduce_reference_numbers.py
"""

from waistband.elastic_model import curve_force, elongation_percent, stiffness_from_measurement
from waistband.force_control import limited_force, max_control_percent
from waistband.specfiles import data_path, load_band, load_machine
from waistband.stretch_sim import simulate_cycle, validate_cycle
from waistband.wheel_geometry import PRINTED_BOUNDARIES, envelope_for_config, machine_envelope, select_config


def main():
    machine = load_machine(data_path("reference_machine.json"))
    spec = load_band(data_path("reference_band.json"))
    band = spec.band

    print("band")
    print(f"  elongation   {elongation_percent(spec.stretched_length, band.rest_length):.4f} %")
    print(f"  stiffness    {stiffness_from_measurement(spec.measured_force, spec.measured_extension):.4f} N/m")
    print(f"  fracture at  {band.fracture_extension:.2f} mm extension")

    print("servo limit")
    for g in (0.01, 0.001):
        s = max_control_percent(machine.servo, band.break_force, granularity=g)
        print(f"  granule {g * 100:g} %: C = {s.control_percent * 100:g} %, F_s = {s.safety_force:.4f} N")
    print(f"  next 1 % granule would give {limited_force(machine.servo, 0.13):.4f} N")

    print("boundaries (formula vs printed), mm")
    for cfg in machine.configs:
        env = envelope_for_config(cfg)
        for which, value in (("max", env.max_boundary), ("min", env.min_boundary)):
            key = f"{cfg.label} {which}"
            print(f"  {key:12s} {value:8.1f}   printed {PRINTED_BOUNDARIES[key]:g}")
    env = machine_envelope(machine.configs)
    print(f"  machine      [{env.min_boundary:g}, {env.max_boundary:g}]")

    target = 2 * spec.stretched_length
    plan = select_config(machine.configs, target)
    limit = max_control_percent(machine.servo, band.break_force)
    print(f"cycle to {target:g} mm boundary")
    print(f"  plan         {plan.chosen_config.label} at {plan.spacing:.2f} mm, E = {plan.effective_elongation:.3f}")
    print(f"  findings     {len(validate_cycle(spec.curve, plan, limit))}")
    trace = simulate_cycle(spec.curve, plan, limit, machine.defaults)
    print(f"  outcome      {trace.outcome} after {trace.duration_ms} ms, peak {trace.peak_force:.2f} N")
    print(f"  force check  {curve_force(spec.curve, trace.final_extension)[0]:.2f} N <= "
          f"{limit.safety_force:.2f} N <= {band.break_force:g} N")


if __name__ == "__main__":
    main()
