"""
Named experiment presets for the linear diffusive test (1), the nonlinear
Ruijgrok-Wu tests (2) and the space dependent alpha tests (3).

Each preset is a list of panels: one config per (figure, tableau). Values not
fixed by the test description use lambda_cfl = 0.5 and are recorded in the
resolved config written with every output.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from imex_relax.errors import ValidationError

from .config import ExperimentConfig, parse_config
from .convergence import refinement_config

CONVERGENCE_TABLEAUS = ("ARS111", "CK222", "BPR343", "BPR442")
COMPARISON_TABLEAUS = ("ARS222", "BPR442")
COMPARISON_CELLS = 40
RIEMANN_TABLEAUS = ("ARS111", "BPR442", "BPR343")
MAXWELLIAN_TABLEAUS = ("BPR442", "BPR343")
SQUARE_WAVE_TABLEAU = "BPR343"
FINE_DX = 0.001


@dataclass
class Panel:
    figure: str
    config: ExperimentConfig
    plot_v: bool = False


@dataclass
class Benchmark:
    test_id: str
    title: str
    panels: List[Panel] = field(default_factory=list)
    convergence: Optional[ExperimentConfig] = None
    convergence_tableaus: Tuple[str, ...] = ()

    @property
    def figures(self) -> Dict[str, List[Panel]]:
        grouped = {}
        for panel in self.panels:
            grouped.setdefault(panel.figure, []).append(panel)
        return grouped


def smooth_linear_config(**updates) -> ExperimentConfig:
    """
    rho_t + rho_x = rho_xx from the exact solution at t = 0 on [-pi, pi].
    The convergence study reruns it on N cells with dt = 0.5 dx.
    """
    data = {
        "name": "test1",
        "model": {"name": "linear_gt", "A_drift": 1.0},
        "scheme": "implicit_diffusion",
        "tableau": "BPR343",
        "grid": {"x_min": -math.pi, "x_max": math.pi, "n": 40},
        "bc": {"kind": "periodic"},
        "epsilon": 1e-6,
        "alpha": {"kind": "constant", "value": 1.0},
        "lambda_cfl": 0.5,
        "t_final": 0.1,
        "initial": {"kind": "linear_exact"},
        "space": {"weno_order": 5, "diffusion_order": 4},
        "reference": {"kind": "exact"},
    }
    return parse_config({**data, **updates})


def _riemann(name, tableau, epsilon, reference) -> ExperimentConfig:
    return parse_config(
        {
            "name": name,
            "model": {"name": "linear_gt", "A_drift": 1.0},
            "tableau": tableau,
            "grid": {"x_min": -10.0, "x_max": 10.0, "n": 100},
            "bc": {"kind": "inflow_outflow", "inflow_side": "left"},
            "epsilon": epsilon,
            "alpha": {"kind": "constant", "value": 1.0},
            "lambda_cfl": 0.5,
            "t_final": 3.0,
            "initial": {"kind": "riemann", "left": 4.0, "right": 2.0},
            "reference": reference,
        }
    )


def _maxwellian(name, tableau, epsilon, t_final) -> ExperimentConfig:
    return parse_config(
        {
            "name": name,
            "model": {"name": "ruijgrok_wu"},
            "tableau": tableau,
            "grid": {"x_min": -10.0, "x_max": 10.0, "n": 100},
            "bc": {"kind": "inflow_outflow", "inflow_side": "left"},
            "epsilon": epsilon,
            "alpha": {"kind": "constant", "value": 1.0},
            "lambda_cfl": 0.5,
            "t_final": t_final,
            "initial": {"kind": "maxwellian_riemann", "left": 1.0, "right": 2.0},
            "reference": {"kind": "fine", "fine_dx": FINE_DX},
        }
    )


def square_wave(name, epsilon, alpha: dict, lambda_cfl, t_final, tableau=SQUARE_WAVE_TABLEAU):
    """
    rho = 1 on |x| < 0.125 in [-0.5, 0.5] with 200 cells and reflecting walls.
    """
    return parse_config(
        {
            "name": name,
            "model": {"name": "ruijgrok_wu"},
            "tableau": tableau,
            "grid": {"x_min": -0.5, "x_max": 0.5, "n": 200},
            "bc": {"kind": "reflecting"},
            "epsilon": epsilon,
            "alpha": alpha,
            "lambda_cfl": lambda_cfl,
            "t_final": t_final,
            "initial": {"kind": "square_wave", "width": 0.125, "height": 1.0},
            "reference": {"kind": "fine", "fine_dx": FINE_DX},
        }
    )


def _test_1a() -> Benchmark:
    # N cells with dt = dx
    base = smooth_linear_config(name="1a-comparison", lambda_cfl=1.0)
    panels = [
        Panel("1a-comparison", refinement_config(base, tableau, COMPARISON_CELLS), True)
        for tableau in COMPARISON_TABLEAUS
    ]
    return Benchmark(
        "1a",
        "Linear diffusive scaling, smooth data: convergence and the ARS222 / BPR442 comparison",
        panels=panels,
        convergence=smooth_linear_config(),
        convergence_tableaus=CONVERGENCE_TABLEAUS,
    )


def _test_1b() -> Benchmark:
    panels = []
    for label, epsilon in (("rarefied", 0.5), ("parabolic", 1e-6)):
        reference = {"kind": "exact"} if epsilon < 1e-3 else {"kind": "fine", "fine_dx": FINE_DX}
        for tableau in RIEMANN_TABLEAUS:
            config = _riemann(f"1b-{label}-{tableau}", tableau, epsilon, reference)
            panels.append(Panel(f"1b-{label}", config))
    return Benchmark("1b", "Linear diffusive scaling, Riemann data", panels=panels)


def _test_2a(t_final: float, suffix: str) -> Benchmark:
    panels = []
    for label, epsilon in (("rarefied", 0.4), ("parabolic", 1e-6)):
        for tableau in MAXWELLIAN_TABLEAUS:
            config = _maxwellian(f"2a{suffix}-{label}-{tableau}", tableau, epsilon, t_final)
            panels.append(Panel(f"2a{suffix}-{label}", config))
    title = f"Ruijgrok-Wu, alpha = 1, two local Maxwellians up to T = {t_final}"
    return Benchmark(f"2a{suffix}", title, panels=panels)


def _test_2b() -> Benchmark:
    panels = [
        Panel(
            "2b-rarefied",
            square_wave("2b-rarefied", 0.7, {"kind": "constant", "value": 0.0}, 0.5, 0.2),
            True,
        ),
        Panel(
            "2b-alpha-0.5",
            square_wave("2b-alpha-0.5", 1e-8, {"kind": "constant", "value": 0.5}, 0.8, 0.5),
            True,
        ),
        Panel(
            "2b-alpha-0.75",
            square_wave("2b-alpha-0.75", 1e-8, {"kind": "constant", "value": 0.75}, 0.8, 0.5),
            True,
        ),
    ]
    return Benchmark("2b", "Ruijgrok-Wu square wave, rarefied and parabolic regimes", panels=panels)


def _test_3a() -> Benchmark:
    alpha = {"kind": "smooth_tanh", "alpha0": 1e-6, "steepness": 20.0, "center": -0.1}
    config = square_wave("3a", 1e-8, alpha, 0.5, 0.05)
    return Benchmark("3a", "Space dependent alpha, smooth profile", panels=[Panel("3a", config)])


def _test_3b() -> Benchmark:
    alpha = {"kind": "step", "left": 0.0, "right": 1.0, "location": 0.0}
    config = square_wave("3b", 1e-8, alpha, 0.5, 0.18)
    return Benchmark("3b", "Space dependent alpha, jump profile", panels=[Panel("3b", config)])


BENCHMARKS = {
    "1a": _test_1a,
    "1b": _test_1b,
    "2a-short": lambda: _test_2a(0.2, "-short"),
    "2a-long": lambda: _test_2a(2.0, "-long"),
    "2b": _test_2b,
    "3a": _test_3a,
    "3b": _test_3b,
}
ALIASES = {"2a": "2a-long"}

CONVERGENCE_PRESETS = {"test1": smooth_linear_config}


def benchmark_ids() -> List[str]:
    return list(BENCHMARKS) + list(ALIASES)


def get_benchmark(test_id: str) -> Benchmark:
    key = ALIASES.get(str(test_id).lower(), str(test_id).lower())
    if key not in BENCHMARKS:
        raise ValidationError(
            f"unknown test {test_id!r}; valid ids are {', '.join(benchmark_ids())}"
        )
    return BENCHMARKS[key]()


def convergence_preset(name: str) -> ExperimentConfig:
    if name not in CONVERGENCE_PRESETS:
        raise ValidationError(
            f"unknown convergence preset {name!r}; "
            f"valid presets are {', '.join(CONVERGENCE_PRESETS)}"
        )
    return CONVERGENCE_PRESETS[name]()
