"""
Largest stable time step of a configured scheme, found by bisection on
lambda_cfl, and the exponent e in dt_max ~ dx^e.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from imex_relax.errors import NumericalError, ValidationError
from imex_relax.logger import logger

from .config import load_config
from .experiment import build_experiment

BISECTION_STEPS = 14


@dataclass
class StabilityResult:
    cells: int
    dx: float
    dt: float
    lambda_cfl: float


def is_bounded(config, growth: float) -> bool:
    """
    True when the run to t_final completes without failure and max|u| stays within
    growth times its initial value.
    """
    experiment = build_experiment(config)
    scale = max(float(np.max(np.abs(experiment.initial.u))), 1e-300)
    try:
        final = experiment.run().final
    except NumericalError:
        return False
    return bool(np.max(np.abs(final.u)) <= growth * scale)


def stable_time_step(
    config,
    n: int,
    steps: int = 50,
    growth: float = 2.0,
    lambda_min: float = 1e-6,
    lambda_max: float = 10.0,
) -> StabilityResult:
    """
    Bisection in log(lambda) between a bounded and an unbounded run.
    """
    config = load_config(config)
    config = config.with_updates(grid={"n": n})
    dx = config.grid.dx

    def bounded(lambda_cfl):
        trial = config.with_updates(
            lambda_cfl=lambda_cfl, t_final=steps * lambda_cfl * dx, cfl_max=None
        )
        return is_bounded(trial, growth)

    if bounded(lambda_max):
        return StabilityResult(n, dx, lambda_max * dx, lambda_max)
    if not bounded(lambda_min):
        raise ValidationError(f"no stable step found above lambda = {lambda_min} on {n} cells")

    lo, hi = np.log(lambda_min), np.log(lambda_max)
    for _ in range(BISECTION_STEPS):
        middle = 0.5 * (lo + hi)
        if bounded(float(np.exp(middle))):
            lo = middle
        else:
            hi = middle
    lambda_cfl = float(np.exp(lo))
    logger.debug(f"{n} cells: largest stable lambda {lambda_cfl:.4g}")
    return StabilityResult(n, dx, lambda_cfl * dx, lambda_cfl)


def fit_exponent(dx: Sequence[float], dt: Sequence[float]) -> float:
    """
    Least-squares slope of log dt against log dx.
    """
    if len(dx) < 2 or len(dx) != len(dt):
        raise ValidationError("the exponent fit needs at least two (dx, dt) pairs")
    slope, _ = np.polyfit(np.log(dx), np.log(dt), 1)
    return float(slope)


def stability_exponent(
    config, cells: Sequence[int], **kwargs
) -> Tuple[float, List[StabilityResult]]:
    results = [stable_time_step(config, n, **kwargs) for n in cells]
    exponent = fit_exponent([r.dx for r in results], [r.dt for r in results])
    return exponent, results
