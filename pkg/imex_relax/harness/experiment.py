from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from imex_relax.errors import UnsupportedParameterError
from imex_relax.integrator import (
    Discretization,
    RecordPolicy,
    StepperState,
    Trajectory,
    equilibrium_initial,
    initial_state,
    run,
)
from imex_relax.integrator.run import STIFF_EPSILON
from imex_relax.model import (
    RelaxationModel,
    ScalingParams,
    equilibrium,
    macro_to_kinetic,
    make_model,
)
from imex_relax.spatial import Grid1D, make_boundary
from imex_relax.tableaux import ImexPair, resolve_pair

from .config import ExperimentConfig, load_config
from .exact import exact_linear_advdiff, exact_riemann_erf, exact_riemann_flux
from .output import write_profile
from .svg import LineChart


def initial_values(config: ExperimentConfig, model: RelaxationModel, x: np.ndarray):
    """
    Interior (u, v) of the configured initial data; v is None when it should
    be put on the corrected equilibrium after the discretization exists.
    """
    initial = config.initial
    if initial.kind == "linear_exact":
        return exact_linear_advdiff(x, 0.0, config.model.A_drift)
    if initial.kind == "square_wave":
        inside = np.abs(x - initial.location) < initial.width
        return np.where(inside, initial.height, 0.0), np.zeros_like(x)

    u = np.where(x < initial.location, initial.left, initial.right)
    if initial.kind == "riemann":
        return u, np.zeros_like(x)
    if config.epsilon < STIFF_EPSILON:
        return u, None
    return u, equilibrium(model, u, config.epsilon)


@dataclass
class Experiment:
    """
    Everything a run needs, built once from a validated config.
    """

    config: ExperimentConfig
    model: RelaxationModel
    pair: Optional[ImexPair]
    scaling: ScalingParams
    disc: Discretization
    initial: StepperState

    @property
    def grid(self) -> Grid1D:
        return self.disc.grid

    @property
    def x(self) -> np.ndarray:
        return self.grid.centers

    def run(self, record: RecordPolicy = None, progress: bool = False) -> Trajectory:
        config = self.config
        if record is None:
            record = RecordPolicy(times=list(config.outputs.times))
        return run(
            self.initial,
            config.scheme,
            self.pair,
            self.model,
            self.scaling,
            self.disc,
            config.lambda_cfl,
            config.t_final,
            record=record,
            phi=config.phi,
            speed_formula=config.speed_formula,
            progress=progress,
            cfl_max=config.cfl_max,
        )

    def exact(self, t: float):
        """
        (u, v) of the closed-form limit solution at time t.
        """
        config = self.config
        kind = config.initial.kind
        if kind == "linear_exact":
            return exact_linear_advdiff(self.x, t, config.model.A_drift)
        if kind in ("riemann", "maxwellian_riemann") and config.model.name == "linear_gt":
            if config.model.A_drift != 1.0:
                raise UnsupportedParameterError("the erf solution is only available for A = 1")
            left, right = config.initial.left, config.initial.right
            shifted = self.x - config.initial.location
            return (
                exact_riemann_erf(shifted, t, left, right),
                exact_riemann_flux(shifted, t, left, right),
            )
        raise UnsupportedParameterError(
            f"no closed-form solution for {kind} data with the {config.model.name} model"
        )

    def kinetic(self, state: StepperState):
        """
        (f+, f-) of a Ruijgrok-Wu state with M = eps^alpha.
        """
        return macro_to_kinetic(state.u, state.v, self.config.epsilon**self.scaling.alpha)

    def write_outputs(self, trajectory: Trajectory, reference=None) -> List[str]:
        """
        Write the configured CSV (one u and v column per snapshot) and SVG
        (u at every snapshot, plus the reference when given).
        """
        outputs = self.config.outputs
        files = []
        if outputs.csv:
            columns = {"x": self.x}
            for snapshot in trajectory.snapshots:
                columns[f"u(t={snapshot.t:g})"] = snapshot.u
                columns[f"v(t={snapshot.t:g})"] = snapshot.v
            metadata = {"name": self.config.name, "steps": trajectory.diagnostics.get("steps")}
            resolved = self.config.resolved()
            files.append(write_profile(outputs.csv, columns, metadata=metadata, config=resolved))
        if outputs.svg:
            chart = LineChart(title=self.config.name, ylabel="u")
            if reference is not None and reference[0] is not None:
                chart.add("reference", self.x, reference[0])
            for snapshot in trajectory.snapshots:
                chart.add(f"t = {snapshot.t:g}", self.x, snapshot.u)
            files.append(chart.write(outputs.svg))
        return files


def build_experiment(config) -> Experiment:
    config = load_config(config)
    model = make_model(
        config.model.name,
        A_drift=config.model.A_drift,
        f_expr=config.model.f_expr,
        p_expr=config.model.p_expr,
    )
    pair = None if config.tableau is None else resolve_pair(config.tableau)
    grid = Grid1D(config.grid.x_min, config.grid.x_max, config.grid.n)
    x = grid.centers
    scaling = ScalingParams(config.epsilon, config.alpha.evaluate(x))
    u, v = initial_values(config, model, x)

    bc_config = config.bc
    left_state, right_state = bc_config.left_state, bc_config.right_state
    if bc_config.kind == "inflow_outflow":
        edges = equilibrium(model, np.array([u[0], u[-1]]), config.epsilon)
        left_state = left_state or (float(u[0]), float(edges[0]))
        right_state = right_state or (float(u[-1]), float(edges[1]))
    bc = make_boundary(
        bc_config.kind,
        left_state=left_state or (0.0, 0.0),
        right_state=right_state or (0.0, 0.0),
        inflow_side=bc_config.inflow_side,
    )

    weno_order, diffusion_order = config.orders
    disc = Discretization(grid, bc, weno_order=weno_order, diffusion_order=diffusion_order)
    if v is None:
        state = equilibrium_initial(model, u, scaling, disc=disc)
    else:
        state = initial_state(u, v)
    return Experiment(config, model, pair, scaling, disc, state)
