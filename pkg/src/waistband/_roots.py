"""Bisection for monotone increasing scalar maps.

scipy's ``bisect`` stops on an x-tolerance; the inverses here are specified by
a tolerance on the *output* value, so the loop is kept local.
"""

from typing import Callable

MAX_ITER = 200


def invert_increasing(
    func: Callable[[float], float],
    target: float,
    lo: float,
    hi: float,
    ftol: float,
    max_iter: int = MAX_ITER,
) -> float:
    """Return ``x`` in ``[lo, hi]`` with ``|func(x) - target| <= ftol``.

    ``func`` must be non-decreasing on the bracket and ``func(lo) <= target <=
    func(hi)``. If the tolerance is not met within ``max_iter`` halvings (only
    possible for very steep maps), the best midpoint found is returned.
    """
    f_lo = func(lo)
    f_hi = func(hi)
    if not f_lo - ftol <= target <= f_hi + ftol:
        raise ValueError(
            f"target {target!r} not bracketed by [{f_lo!r}, {f_hi!r}]"
        )
    if abs(f_lo - target) <= ftol:
        return lo
    if abs(f_hi - target) <= ftol:
        return hi

    best_x, best_err = lo, abs(f_lo - target)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = func(mid)
        err = abs(f_mid - target)
        if err < best_err:
            best_x, best_err = mid, err
        if err <= ftol or mid in (lo, hi):
            break
        if f_mid < target:
            lo = mid
        else:
            hi = mid
    return best_x
