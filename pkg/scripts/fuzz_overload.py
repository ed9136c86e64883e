"""Fuzz the overload stop over random bands, machines and step sizes.

Counts fractures and the worst overshoot past the limit, in units of the
per-step force bound. With ``--unsafe`` scenarios whose step can jump the
limit-to-break headroom are kept too, so some fractures are expected.

    python3 scripts/fuzz_overload.py -n 20000 --seed 3
"""

import argparse
import collections
import time

import numpy as np

from waistband.scenarios import random_safe_scenario, random_scenario
from waistband.stretch_sim import OVERLOAD_STOP, simulate_cycle


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-n", type=int, default=5000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--unsafe", action="store_true", help="do not filter by step size")
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    draw = random_scenario if args.unsafe else random_safe_scenario
    outcomes = collections.Counter()
    worst = 0.0
    t0 = time.perf_counter()
    for _ in range(args.n):
        sc = draw(rng)
        trace = simulate_cycle(sc.curve, sc.plan, sc.limit, sc.params, sc.start_spacing)
        outcomes[trace.outcome] += 1
        if trace.outcome == OVERLOAD_STOP:
            worst = max(worst, (trace.peak_force - sc.limit.safety_force) / sc.force_step_bound)
    dt = time.perf_counter() - t0

    print(f"{args.n} scenarios in {dt:.2f} s")
    for name, count in sorted(outcomes.items()):
        print(f"  {name:15s} {count}")
    print(f"worst overshoot: {worst:.3f} of one step")


if __name__ == "__main__":
    main()
