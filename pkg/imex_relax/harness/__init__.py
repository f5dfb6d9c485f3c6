from .benchmark import BenchmarkReport, PanelResult, run_benchmark
from .config import (
    AlphaConfig,
    ExperimentConfig,
    dump_config,
    load_config,
    parse_config,
)
from .convergence import (
    DEFAULT_CELLS,
    ConvergenceReport,
    ConvergenceRow,
    observed_orders,
    refinement_config,
    run_convergence_study,
)
from .exact import exact_linear_advdiff, exact_riemann_erf, exact_riemann_flux
from .experiment import Experiment, build_experiment
from .norms import NormKind, count_new_extrema, error_norms, total_variation
from .output import read_csv, write_csv, write_profile
from .presets import (
    benchmark_ids,
    convergence_preset,
    get_benchmark,
    smooth_linear_config,
    square_wave,
)
from .reference import ReferenceSolution, run_reference
from .stability import fit_exponent, stability_exponent, stable_time_step
from .svg import LineChart
from .tool import (
    characteristic_speed_bounds,
    convergence_study,
    equilibrium_state,
    run_experiment,
)
