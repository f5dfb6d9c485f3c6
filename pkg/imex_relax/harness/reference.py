from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np
from scipy.interpolate import CubicSpline

from imex_relax.errors import ValidationError
from imex_relax.integrator import RecordPolicy
from imex_relax.logger import logger

from .config import ExperimentConfig, load_config
from .experiment import build_experiment


@dataclass
class ReferenceSolution:
    """
    A fine-grid run restricted to the coarse cell centers, per recorded time.
    """

    x: np.ndarray
    fine_n: int
    u: Dict[float, np.ndarray] = field(default_factory=dict)
    v: Dict[float, np.ndarray] = field(default_factory=dict)

    @property
    def times(self) -> List[float]:
        return sorted(self.u)

    def at(self, t: float):
        for time in self.u:
            if abs(time - t) <= 1e-12 * max(1.0, abs(t)):
                return self.u[time], self.v[time]
        raise ValidationError(f"no reference recorded at t = {t}")


def restrict(fine_x, values, coarse_x, periodic: bool = False) -> np.ndarray:
    """
    Cubic interpolation of fine cell values onto coarse centers.
    """
    fine_x = np.asarray(fine_x, dtype=float)
    values = np.asarray(values, dtype=float)
    if periodic:
        # close the period so the spline wraps
        dx = fine_x[1] - fine_x[0]
        period = fine_x[-1] - fine_x[0] + dx
        fine_x = np.append(fine_x, fine_x[0] + period)
        values = np.append(values, values[0])
        return CubicSpline(fine_x, values, bc_type="periodic")(np.asarray(coarse_x))
    return CubicSpline(fine_x, values)(np.asarray(coarse_x))


def run_reference(config, fine_dx: float, times: List[float] = None) -> ReferenceSolution:
    """
    Run the same scheme on a grid of spacing fine_dx and restrict the result
    to the coarse cell centers of config, at t_final and every snapshot time.
    """
    config: ExperimentConfig = load_config(config)
    if not fine_dx > 0:
        raise ValidationError(f"fine_dx must be positive, got {fine_dx!r}")
    coarse = build_experiment(config)
    fine_n = int(round((config.grid.x_max - config.grid.x_min) / fine_dx))
    # same time step ratio on the fine grid
    fine_config = config.with_updates(grid={"n": fine_n})
    fine = coarse if fine_n == config.grid.n else build_experiment(fine_config)

    times = sorted(set(list(times or config.outputs.times) + [config.t_final]))
    logger.debug(f"reference run for {config.name}: {fine_n} cells, dx = {fine.grid.dx:.3g}")
    trajectory = fine.run(record=RecordPolicy(times=times, initial=False))

    periodic = config.bc.kind == "periodic"
    reference = ReferenceSolution(x=coarse.x, fine_n=fine_n)
    for t in times:
        state = trajectory.at(t)
        if fine is coarse:
            reference.u[t], reference.v[t] = state.u.copy(), state.v.copy()
        else:
            reference.u[t] = restrict(fine.x, state.u, coarse.x, periodic=periodic)
            reference.v[t] = restrict(fine.x, state.v, coarse.x, periodic=periodic)
    return reference
