import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from imex_relax.errors import ImexRelaxError
from imex_relax.logger import logger

from .convergence import ConvergenceReport, run_convergence_study
from .experiment import build_experiment
from .norms import NormKind, count_new_extrema, error_norms, total_variation
from .output import write_profile
from .presets import Panel, get_benchmark
from .reference import run_reference
from .svg import LineChart

NEW_EXTREMA_TOL = 1e-3


@dataclass
class PanelResult:
    name: str
    figure: str
    x: np.ndarray
    u: np.ndarray
    v: np.ndarray
    u_ref: Optional[np.ndarray] = None
    v_ref: Optional[np.ndarray] = None
    kinetic: Optional[tuple] = None
    errors: Dict[str, float] = field(default_factory=dict)
    checks: Dict[str, float] = field(default_factory=dict)
    diagnostics: Dict = field(default_factory=dict)
    config: Dict = field(default_factory=dict)

    def summary(self) -> dict:
        return {
            "name": self.name,
            "figure": self.figure,
            "errors": self.errors,
            "checks": self.checks,
            "diagnostics": self.diagnostics,
        }


@dataclass
class BenchmarkReport:
    test_id: str
    title: str
    panels: List[PanelResult] = field(default_factory=list)
    convergence: Optional[ConvergenceReport] = None
    files: List[str] = field(default_factory=list)

    def panel(self, name: str) -> PanelResult:
        for panel in self.panels:
            if panel.name == name:
                return panel
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "test_id": self.test_id,
            "title": self.title,
            "panels": [panel.summary() for panel in self.panels],
            "convergence": None if self.convergence is None else self.convergence.to_dict(),
            "files": self.files,
        }


def _reference(panel: Panel, experiment, fine_dx: Optional[float]):
    config = panel.config
    kind = config.reference.kind
    if kind == "exact":
        return experiment.exact(config.t_final)
    if kind == "fine":
        reference = run_reference(config, fine_dx or config.reference.fine_dx)
        return reference.at(config.t_final)
    return None, None


def run_panel(panel: Panel, fine_dx: float = None) -> PanelResult:
    """
    Run one panel and compare it with its own reference: the closed-form
    solution, or the same scheme on the fine grid.
    """
    config = panel.config
    experiment = build_experiment(config)
    logger.info(f"running {config.name} ({config.tableau}, eps = {config.epsilon:g})")
    trajectory = experiment.run()
    final = trajectory.final
    u_ref, v_ref = _reference(panel, experiment, fine_dx)

    result = PanelResult(
        name=config.name,
        figure=panel.figure,
        x=experiment.x,
        u=final.u,
        v=final.v,
        u_ref=u_ref,
        v_ref=v_ref,
        diagnostics=trajectory.diagnostics,
        config=config.resolved(),
    )
    if config.model.name == "ruijgrok_wu":
        result.kinetic = experiment.kinetic(final)

    dx = config.dx
    if u_ref is not None:
        result.errors["l1_u"] = error_norms(final.u, u_ref, NormKind.L1, dx=dx)
    if v_ref is not None:
        result.errors["l1_v"] = error_norms(final.v, v_ref, NormKind.L1, dx=dx)

    u0 = experiment.initial.u
    lo, hi = float(np.min(u0)), float(np.max(u0))
    result.checks = {
        "total_variation_initial": total_variation(u0),
        "total_variation_final": total_variation(final.u),
        "new_extrema": count_new_extrema(final.u, lo, hi, NEW_EXTREMA_TOL * ((hi - lo) or 1.0)),
    }
    return result


def _write_panel(result: PanelResult, out: str) -> List[str]:
    columns = {"x": result.x, "u": result.u, "v": result.v}
    if result.u_ref is not None:
        columns["u_ref"] = result.u_ref
    if result.v_ref is not None:
        columns["v_ref"] = result.v_ref
    if result.kinetic is not None:
        columns["f_plus"], columns["f_minus"] = result.kinetic
    metadata = {"panel": result.name, **{k: f"{v:.6e}" for k, v in result.errors.items()}}
    path = os.path.join(out, f"{result.name}.csv")
    return [write_profile(path, columns, metadata=metadata, config=result.config)]


def _write_figure(figure: str, results: List[PanelResult], plot_v: bool, out: str) -> List[str]:
    files = []
    variables = ["u", "v"] if plot_v else ["u"]
    # the highest order panel draws its reference
    best = max(results, key=lambda r: r.config["derived"]["time_order"])
    for variable in variables:
        chart = LineChart(title=figure, ylabel=variable)
        reference = getattr(best, f"{variable}_ref")
        if reference is not None:
            chart.add("reference", best.x, reference)
        for result in results:
            label = result.config.get("tableau") or result.config.get("scheme")
            chart.add(label, result.x, getattr(result, variable), style="markers")
        files.append(chart.write(os.path.join(out, f"{figure}-{variable}.svg")))
    return files


def run_benchmark(
    test_id: str,
    out: str = None,
    fine_dx: float = None,
    cells: Sequence[int] = None,
    workers: int = None,
) -> BenchmarkReport:
    """
    Run every panel of a named test, writing one CSV per panel and one SVG per
    figure (and variable) when out is given. Test 1a also runs its
    convergence study. fine_dx overrides the reference spacing of every panel.
    """
    test = get_benchmark(test_id)
    report = BenchmarkReport(test.test_id, test.title)

    for figure, panels in test.figures.items():
        results = []
        for panel in panels:
            try:
                results.append(run_panel(panel, fine_dx=fine_dx))
            except ImexRelaxError as e:
                logger.error(f"{test.test_id}: panel {panel.config.name} failed: {e}")
                raise
        report.panels.extend(results)
        if out:
            for result in results:
                report.files.extend(_write_panel(result, out))
            report.files.extend(_write_figure(figure, results, panels[0].plot_v, out))

    if test.convergence is not None:
        kwargs = {"workers": workers}
        if cells:
            kwargs["cells"] = cells
        report.convergence = run_convergence_study(
            test.convergence, test.convergence_tableaus, **kwargs
        )
        if out:
            path = os.path.join(out, f"{test.test_id}-convergence.csv")
            report.files.append(report.convergence.write(path))
    return report
