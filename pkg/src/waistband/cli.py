"""Command-line front end.

Exit codes: 0 ok, 2 input error, 3 infeasible plan, 4 infeasible limit,
5 validation findings (simulate without ``--force``).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from typing import Any, Dict, List, Optional

from . import elastic_model as em
from . import force_control as fc
from . import stretch_sim as sim
from . import wheel_geometry as wg
from .errors import InfeasibleLimitError, PlanningError
from .specfiles import BandSpec, InputError, load_band, load_machine, parse_band, read_json

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PLAN = 3
EXIT_LIMIT = 4
EXIT_FINDINGS = 5


class CommandError(Exception):
    def __init__(self, message: str, code: int, payload: Optional[dict] = None):
        super().__init__(message)
        self.code = code
        self.payload = payload or {}


class _Out:
    """Formats numbers to one decimal unless full precision is requested."""

    def __init__(self, args):
        self.json = args.json
        self.full = args.full_precision

    def num(self, value: float) -> str:
        return repr(float(value)) if self.full else f"{value:.1f}"

    def pct(self, fraction: float) -> str:
        return self.num(fraction * 100.0)


def _envelope_dict(env: wg.MachineEnvelope) -> Dict[str, Any]:
    return asdict(env)


def _plan_dict(plan: wg.WheelPlan) -> Dict[str, Any]:
    return {
        "wheel_count": plan.chosen_config.wheel_count,
        "config": asdict(plan.chosen_config),
        "spacing": plan.spacing,
        "effective_elongation": plan.effective_elongation,
        "boundary": plan.boundary,
    }


def _limit_dict(servo: fc.ServoSpec, setting: fc.ControlSetting) -> Dict[str, Any]:
    return {
        "full_torque_force": fc.full_torque_force(servo),
        "control_percent": setting.control_percent,
        "limited_torque": fc.limited_torque(servo, setting.control_percent),
        "limited_force": setting.safety_force,
    }


# --- band-props ---------------------------------------------------------------

def _band_doc(args) -> Dict[str, Any]:
    doc: Dict[str, Any] = {}
    if args.band:
        doc = read_json(args.band)
        if not isinstance(doc, dict):
            raise InputError("expected a JSON object", "<root>")
    inline = {
        "rest_length": args.rest_length,
        "stretched_length": args.final_length,
        "measured_force": args.force,
        "break_force": args.break_force,
        "stiffness": args.stiffness,
    }
    doc.update({k: v for k, v in inline.items() if v is not None})
    return doc


def cmd_band_props(args, out: _Out) -> Dict[str, Any]:
    spec = parse_band(_band_doc(args))
    band = spec.band
    result: Dict[str, Any] = {
        "rest_length": band.rest_length,
        "stiffness": band.stiffness,
        "break_force": band.break_force,
        "proportional_limit_extension": band.proportional_limit_extension,
        "fracture_extension": band.fracture_extension,
        "max_elongation_percent": em.elongation_percent(
            band.rest_length + band.fracture_extension, band.rest_length
        ),
    }
    if spec.stretched_length is not None:
        result["stretched_length"] = spec.stretched_length
        result["elongation_percent"] = em.elongation_percent(
            spec.stretched_length, band.rest_length
        )
        result["measured_force"] = spec.measured_force
    if band.young_modulus is not None:
        result["young_stiffness"] = (
            band.young_modulus * band.cross_section_area / band.rest_length * em.MM_PER_M
        )

    if not out.json:
        if "elongation_percent" in result:
            print(f"elongation:           {out.num(result['elongation_percent'])} %")
        print(f"stiffness k:          {out.num(band.stiffness)} N/m")
        print(f"break force:          {out.num(band.break_force)} N")
        print(f"proportional limit:   {out.num(band.proportional_limit_extension)} mm")
        print(f"fracture extension:   {out.num(band.fracture_extension)} mm")
        print(f"elongation at break:  {out.num(result['max_elongation_percent'])} %")
    return result


# --- plan ---------------------------------------------------------------------

def cmd_plan(args, out: _Out) -> Dict[str, Any]:
    machine = load_machine(args.machine)
    env = wg.machine_envelope(machine.configs)
    result: Dict[str, Any] = {
        "target_boundary": args.target,
        "envelope": _envelope_dict(env),
        "config_envelopes": {
            c.label: _envelope_dict(wg.envelope_for_config(c)) for c in machine.configs
        },
    }
    try:
        plan = wg.select_config(machine.configs, args.target)
    except PlanningError as exc:
        raise CommandError(str(exc), EXIT_PLAN, result) from exc
    result["plan"] = _plan_dict(plan)

    if not out.json:
        _print_envelope(env, out)
        print(f"chosen config:        {plan.chosen_config.label}")
        print(f"wheel spacing:        {out.num(plan.spacing)} mm")
        print(f"effective elongation: {plan.effective_elongation:.4f}")
    return result


def _print_envelope(env: wg.MachineEnvelope, out: _Out) -> None:
    print(
        f"machine envelope:     [{out.num(env.min_boundary)}, "
        f"{out.num(env.max_boundary)}] mm "
        f"(min from {env.min_source}, max from {env.max_source})"
    )


# --- limits -------------------------------------------------------------------

def _limit_setting(servo, break_force, granularity_pct):
    try:
        return fc.max_control_percent(servo, break_force, granularity_pct / 100.0)
    except InfeasibleLimitError as exc:
        raise CommandError(str(exc), EXIT_LIMIT) from exc
    except ValueError as exc:
        raise InputError(str(exc), "--granularity") from exc


def cmd_limits(args, out: _Out) -> Dict[str, Any]:
    machine = load_machine(args.machine)
    band_spec = load_band(args.band)
    break_force = args.break_force if args.break_force is not None else band_spec.band.break_force
    setting = _limit_setting(machine.servo, break_force, args.granularity)
    result = _limit_dict(machine.servo, setting)
    result["break_force"] = break_force
    applied = band_spec.measured_force
    result["applied_force"] = applied
    chain = [setting.safety_force <= break_force]
    if applied is not None:
        chain.insert(0, applied <= setting.safety_force)
    result["safety_chain_ok"] = all(chain)

    if not out.json:
        print(f"full-torque force:    {out.num(result['full_torque_force'])} N")
        print(f"control percent C:    {out.pct(setting.control_percent)} %")
        print(f"limited torque:       {out.num(result['limited_torque'])} N*m")
        print(f"limited force F_s:    {out.num(setting.safety_force)} N")
        head = f"{out.num(applied)} N <= " if applied is not None else ""
        verdict = "holds" if result["safety_chain_ok"] else "VIOLATED"
        print(
            f"safety chain:         {head}{out.num(setting.safety_force)} N <= "
            f"{out.num(break_force)} N  ({verdict})"
        )
    return result


# --- simulate -----------------------------------------------------------------

def cmd_simulate(args, out: _Out) -> Dict[str, Any]:
    machine = load_machine(args.machine)
    band_spec: BandSpec = load_band(args.band)
    curve = band_spec.curve
    try:
        plan = wg.select_config(machine.configs, args.target)
    except PlanningError as exc:
        raise CommandError(str(exc), EXIT_PLAN,
                           {"envelope": _envelope_dict(exc.envelope)}) from exc

    if args.limit_force is not None:
        try:
            limit = fc.ControlSetting.for_force(machine.servo, args.limit_force)
        except ValueError as exc:
            raise CommandError(f"--limit-force: {exc}", EXIT_LIMIT) from exc
    else:
        limit = _limit_setting(machine.servo, band_spec.band.break_force, args.granularity)

    overrides = {}
    if args.seed is not None:
        overrides["rng_seed"] = args.seed
    if args.noise is not None:
        overrides["sensor_noise_amplitude"] = args.noise
    if args.wheel_speed is not None:
        overrides["wheel_speed"] = args.wheel_speed
    if args.time_step is not None:
        overrides["time_step"] = args.time_step
    try:
        params = sim.SimParams(**{**asdict(machine.defaults), **overrides})
    except ValueError as exc:
        raise InputError(str(exc)) from exc

    findings = sim.validate_cycle(curve, plan, limit)
    finding_dicts = [asdict(f) for f in findings]
    blocking = [f for f in findings if f.blocking]
    if blocking and not args.force:
        msg = "validation findings:\n" + "\n".join(f"  - {f.message}" for f in blocking)
        raise CommandError(msg, EXIT_FINDINGS, {"findings": finding_dicts})

    try:
        trace = sim.simulate_cycle(curve, plan, limit, params, args.start_spacing)
    except ValueError as exc:
        raise CommandError(str(exc), EXIT_FINDINGS, {"findings": finding_dicts}) from exc
    if args.out:
        sim.write_trace_csv(trace, args.out)

    result = {
        "outcome": trace.outcome,
        "peak_force": trace.peak_force,
        "duration_ms": trace.duration_ms,
        "final_spacing": trace.final_spacing,
        "final_extension": trace.final_extension,
        "target_extension": sim.target_extension(curve, plan),
        "samples": len(trace.samples),
        "plan": _plan_dict(plan),
        "limit": _limit_dict(machine.servo, limit),
        "findings": finding_dicts,
        "trace_path": args.out,
    }
    if not out.json:
        for f in findings:
            print(f"note: {f.message}")
        print(f"plan:                 {plan.chosen_config.label} at {out.num(plan.spacing)} mm")
        print(f"force limit:          {out.num(limit.safety_force)} N")
        print(f"outcome:              {trace.outcome}")
        print(f"peak force:           {out.num(trace.peak_force)} N")
        print(f"final extension:      {out.num(trace.final_extension)} mm")
        print(f"duration:             {trace.duration_ms} ms")
        if args.out:
            print(f"trace written to      {args.out}")
    return result


# --- wiring -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--full-precision", action="store_true",
                        help="do not round displayed numbers")
    common.add_argument("--out", help="output path for the trace CSV")
    common.add_argument("--seed", type=int, help="sensor-noise RNG seed")

    parser = argparse.ArgumentParser(
        prog="waistband",
        description="Plan and simulate elastic-waistband stretch cycles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("band-props", parents=[common], help="elastic band properties")
    p.add_argument("band", nargs="?", help="band JSON file")
    p.add_argument("--rest-length", type=float, help="mm")
    p.add_argument("--final-length", type=float, help="stretched length, mm")
    p.add_argument("--force", type=float, help="tension at final length, N")
    p.add_argument("--break-force", type=float, help="N")
    p.add_argument("--stiffness", type=float, help="N/m")
    p.set_defaults(func=cmd_band_props)

    p = sub.add_parser("plan", parents=[common], help="choose wheels and spacing")
    p.add_argument("machine", help="machine JSON file")
    p.add_argument("--target", type=float, required=True, help="target boundary, mm")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("limits", parents=[common], help="torque/force limits")
    p.add_argument("machine")
    p.add_argument("band")
    p.add_argument("--granularity", type=float, default=1.0,
                   help="control-percent step, in percent (default 1)")
    p.add_argument("--break-force", type=float, help="override the band's break force, N")
    p.set_defaults(func=cmd_limits)

    p = sub.add_parser("simulate", parents=[common], help="simulate one stretch cycle")
    p.add_argument("machine")
    p.add_argument("band")
    p.add_argument("--target", type=float, required=True, help="target boundary, mm")
    p.add_argument("--granularity", type=float, default=1.0,
                   help="control-percent step, in percent (default 1)")
    p.add_argument("--limit-force", type=float, help="force limit in N instead of max C%%")
    p.add_argument("--noise", type=float, help="sensor noise amplitude, N")
    p.add_argument("--wheel-speed", type=float, help="mm/s")
    p.add_argument("--time-step", type=int, help="ms")
    p.add_argument("--start-spacing", type=float, help="mm")
    p.add_argument("--force", action="store_true", help="run despite validation findings")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Out(args)
    try:
        result = args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CommandError as exc:
        if out.json:
            print(json.dumps({"error": str(exc), "exit_code": exc.code, **exc.payload}, indent=2))
        else:
            env = exc.payload.get("envelope")
            if env:
                print(f"machine envelope:     [{out.num(env['min_boundary'])}, "
                      f"{out.num(env['max_boundary'])}] mm")
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    if out.json:
        print(json.dumps(result, indent=2))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
