from typing import Annotated, Any, Dict, List, Optional, Union

import numpy as np

from imex_relax.errors import ImexRelaxError
from imex_relax.integrator import FirstOrder, GeneralPair, characteristic_speeds
from imex_relax.model import equilibrium, make_model
from imex_relax.result import Result
from imex_relax.tableaux import resolve_pair

from .benchmark import run_benchmark
from .config import load_config
from .convergence import DEFAULT_CELLS, run_convergence_study
from .experiment import build_experiment
from .norms import NormKind, error_norms
from .presets import CONVERGENCE_TABLEAUS, convergence_preset
from .reference import run_reference

ToolOutput = Annotated[Dict[str, Any], "Result dictionary: returncode, data, stderr, metadata."]
ModelName = Annotated[str, "Relaxation model: linear_gt, ruijgrok_wu or custom."]
ConfigInput = Annotated[
    Union[str, Dict[str, Any]],
    "Experiment config as a mapping, a YAML/JSON string, or a path to a config file.",
]


def equilibrium_state(
    u: Annotated[List[float], "Values of the conserved variable u."],
    epsilon: Annotated[float, "Relaxation parameter, > 0."],
    model: ModelName = "linear_gt",
    A_drift: Annotated[float, "Drift A of the linear model."] = 1.0,
    f_expr: Annotated[Optional[str], "Flux expression in u for a custom model."] = None,
) -> ToolOutput:
    """
    Evaluate the local equilibrium flux v_eq(u) of a relaxation model.

    Returns:
        Result dictionary whose data holds the list v_eq.
    """
    try:
        relaxation = make_model(model, A_drift=A_drift, f_expr=f_expr)
        values = equilibrium(relaxation, np.asarray(u, dtype=float), epsilon)
    except ImexRelaxError as e:
        return Result.from_error(e, metadata={"model": model}).to_dict()
    return Result({"v_eq": values}, metadata={"model": model, "epsilon": epsilon}).to_dict()


def characteristic_speed_bounds(
    dt: Annotated[float, "Time step, >= 0."],
    epsilon: Annotated[float, "Relaxation parameter, >= 0."],
    alpha: Annotated[float, "Scaling exponent in [0, 1]."],
    c: Annotated[float, "Flux derivative f'(u)."] = 1.0,
    tableau: Annotated[
        Optional[str], "IMEX pair identifier; omit for the first-order splitting speeds."
    ] = None,
    formula: Annotated[str, "Pair speed formula: stiff_accurate or general."] = "stiff_accurate",
) -> ToolOutput:
    """
    Characteristic speeds (lambda_plus, lambda_minus) of the reformulated system.

    Returns:
        Result dictionary with lambda_plus, lambda_minus and their maximum modulus.
    """
    try:
        kind = FirstOrder() if tableau is None else GeneralPair(resolve_pair(tableau), formula)
        plus, minus = characteristic_speeds(kind, dt, epsilon, alpha, c)
    except ImexRelaxError as e:
        return Result.from_error(e, metadata={"tableau": tableau}).to_dict()
    data = {"lambda_plus": plus, "lambda_minus": minus, "bound": max(abs(plus), abs(minus))}
    return Result(data, metadata={"tableau": tableau or "first_order"}).to_dict()


def run_experiment(config: ConfigInput) -> ToolOutput:
    """
    Run one configured experiment to t_final.

    Returns:
        Result dictionary with the grid centers, the final u and v, run
        diagnostics, and L1 errors when the config names a reference.
    """
    try:
        parsed = load_config(config)
        experiment = build_experiment(parsed)
        trajectory = experiment.run()
        final = trajectory.final
        errors, reference = {}, None
        if parsed.reference.kind == "exact":
            reference = experiment.exact(parsed.t_final)
        elif parsed.reference.kind == "fine":
            reference = run_reference(parsed, parsed.reference.fine_dx).at(parsed.t_final)
        if reference is not None:
            errors["l1_u"] = error_norms(final.u, reference[0], NormKind.L1, dx=parsed.dx)
            errors["l1_v"] = error_norms(final.v, reference[1], NormKind.L1, dx=parsed.dx)
        files = experiment.write_outputs(trajectory, reference=reference)
    except ImexRelaxError as e:
        return Result.from_error(e).to_dict()

    data = {
        "x": experiment.x,
        "u": final.u,
        "v": final.v,
        "t": final.t,
        "errors": errors,
        "diagnostics": trajectory.diagnostics,
        "files": files,
    }
    return Result(data, metadata={"name": parsed.name, "config": parsed.resolved()}).to_dict()


def convergence_study(
    preset: Annotated[str, "Convergence preset name."] = "test1",
    tableaus: Annotated[
        Optional[List[str]], "IMEX pairs to study (defaults to ARS111, CK222, BPR343, BPR442)."
    ] = None,
    cells: Annotated[Optional[List[int]], "Numbers of cells N (dt = lambda_cfl * dx)."] = None,
    workers: Annotated[int, "Concurrent runs."] = 1,
) -> ToolOutput:
    """
    Temporal convergence table of the given pairs on a preset problem.

    Returns:
        Result dictionary with one row per (tableau, N): errors and observed orders.
    """
    try:
        report = run_convergence_study(
            convergence_preset(preset),
            tableaus or list(CONVERGENCE_TABLEAUS),
            cells=cells or DEFAULT_CELLS,
            workers=workers,
        )
    except ImexRelaxError as e:
        return Result.from_error(e, metadata={"preset": preset}).to_dict()
    return Result(report.to_dict(), metadata={"preset": preset}).to_dict()


def benchmark(
    test_id: Annotated[str, "Test identifier: 1a, 1b, 2a, 2a-short, 2a-long, 2b, 3a or 3b."],
    out: Annotated[Optional[str], "Directory for CSV and SVG artifacts."] = None,
    fine_dx: Annotated[Optional[float], "Override of the fine reference spacing."] = None,
) -> ToolOutput:
    """
    Reproduce one of the named numerical tests.

    Returns:
        Result dictionary with per-panel errors and checks and the written files.
    """
    try:
        report = run_benchmark(test_id, out=out, fine_dx=fine_dx)
    except ImexRelaxError as e:
        return Result.from_error(e, metadata={"test_id": test_id}).to_dict()
    return Result(report.to_dict(), metadata={"test_id": test_id}).to_dict()
