"""
Temporal convergence studies.

Each run refines dx and dt together: N cells with dt = lambda_cfl * dx, one
worker per (tableau, N) pair. Errors are measured in u and v against the closed-form
solution (or a fine-grid reference) at t_final, and observed orders follow
from consecutive errors, log2(E_N / E_2N) for the default doubling ladder.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence

from imex_relax.errors import ImexRelaxError, ValidationError
from imex_relax.logger import logger

from .config import ExperimentConfig, load_config
from .experiment import build_experiment
from .norms import NormKind, error_norms
from .output import write_csv
from .reference import run_reference

DEFAULT_CELLS = (40, 80, 160, 320, 640)


@dataclass
class ConvergenceRow:
    tableau: str
    cells: int
    steps: int
    dt: float
    error_u: float
    error_v: float
    order_u: Optional[float] = None
    order_v: Optional[float] = None


@dataclass
class ConvergenceReport:
    rows: List[ConvergenceRow]
    norm: NormKind = NormKind.LinfRelative
    labels: Sequence[str] = ("rho", "j")
    config: dict = field(default_factory=dict)

    @property
    def tableaus(self) -> List[str]:
        names = []
        for row in self.rows:
            if row.tableau not in names:
                names.append(row.tableau)
        return names

    def for_tableau(self, name: str) -> List[ConvergenceRow]:
        return [row for row in self.rows if row.tableau == name]

    def columns(self) -> List[str]:
        u, v = self.labels
        return ["tableau", "N", "steps", "dt"] + [
            f"error_{u}",
            f"order_{u}",
            f"error_{v}",
            f"order_{v}",
        ]

    def table_rows(self) -> List[list]:
        return [
            [r.tableau, r.cells, r.steps, r.dt, r.error_u, r.order_u, r.error_v, r.order_v]
            for r in self.rows
        ]

    def to_dict(self) -> dict:
        return {
            "norm": self.norm.value,
            "labels": list(self.labels),
            "rows": [asdict(row) for row in self.rows],
        }

    def write(self, filename: str) -> str:
        metadata = {"norm": self.norm.value, "order": "log2(E_N / E_2N)"}
        return write_csv(filename, self.columns(), self.table_rows(), metadata, self.config)


def observed_orders(errors: Sequence[float], sizes: Sequence[int]) -> List[Optional[float]]:
    """
    Orders between consecutive rows; the first is None. With N doubling this is
    log2(E_N / E_2N).
    """
    orders = [None]
    for k in range(1, len(errors)):
        previous, current = errors[k - 1], errors[k]
        if previous <= 0.0 or current <= 0.0:
            orders.append(None)
            continue
        ratio = math.log2(sizes[k] / sizes[k - 1])
        orders.append(math.log2(previous / current) / ratio)
    return orders


def refinement_config(config: ExperimentConfig, tableau: str, cells: int) -> ExperimentConfig:
    """
    The run on N cells with dt = lambda_cfl * dx; the last step is shortened
    to land on t_final.
    """
    if not config.t_final > 0:
        raise ValidationError("a convergence study needs t_final > 0")
    return config.with_updates(
        tableau=tableau,
        grid={"n": int(cells)},
        name=f"{config.name}-{tableau}-N{cells}",
    )


def _measure(config: ExperimentConfig):
    experiment = build_experiment(config)
    trajectory = experiment.run()
    final = trajectory.final
    if config.reference.kind == "fine":
        reference = run_reference(config, config.reference.fine_dx)
        u_ref, v_ref = reference.at(config.t_final)
    else:
        u_ref, v_ref = experiment.exact(config.t_final)
    norm = NormKind.LinfRelative
    errors = (
        error_norms(final.u, u_ref, norm, dx=config.dx),
        error_norms(final.v, v_ref, norm, dx=config.dx),
    )
    return errors, trajectory.diagnostics


def _task(config: ExperimentConfig, tableau: str, cells: int):
    run_config = refinement_config(config, tableau, cells)
    try:
        (error_u, error_v), diagnostics = _measure(run_config)
    except ImexRelaxError as e:
        e.tableau = tableau
        e.cells = cells
        logger.error(f"convergence run {tableau} with N = {cells} failed: {e}")
        raise
    logger.debug(f"{tableau} N = {cells}: error u {error_u:.4e}, error v {error_v:.4e}")
    return ConvergenceRow(
        tableau=tableau,
        cells=cells,
        steps=diagnostics["steps"],
        dt=diagnostics["dt"],
        error_u=error_u,
        error_v=error_v,
    )


def run_convergence_study(
    config,
    tableaus: Sequence[str],
    cells: Sequence[int] = DEFAULT_CELLS,
    workers: int = None,
) -> ConvergenceReport:
    """
    Errors and observed orders for every (tableau, N), N the number of cells.
    Rows come back sorted by tableau order as given, then N.
    """
    config = load_config(config)
    if config.reference.kind == "none":
        if config.initial.kind != "linear_exact":
            raise ValidationError(
                "a convergence study needs an exact solution "
                "or a fine reference (reference.fine_dx)"
            )
        config = config.with_updates(reference={"kind": "exact"})
    cells = sorted(int(n) for n in cells)
    if len(cells) < 2:
        raise ValidationError("a convergence study needs at least two values of N")
    workers = workers or config.workers

    keys = [(tableau, n) for tableau in tableaus for n in cells]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = {key: pool.submit(_task, config, *key) for key in keys}
        results = {key: future.result() for key, future in futures.items()}

    rows = []
    for tableau in tableaus:
        group = [results[(tableau, n)] for n in cells]
        orders_u = observed_orders([row.error_u for row in group], cells)
        orders_v = observed_orders([row.error_v for row in group], cells)
        for row, order_u, order_v in zip(group, orders_u, orders_v):
            row.order_u, row.order_v = order_u, order_v
            rows.append(row)
    return ConvergenceReport(rows=rows, config=config.resolved())
