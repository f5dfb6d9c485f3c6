from .baseline import step_baseline
from .implicit import step_implicit_diffusion
from .limits import step_limit_explicit, step_limit_imex
from .operators import Discretization
from .run import (
    RecordPolicy,
    Stepper,
    Trajectory,
    equilibrium_initial,
    initial_state,
    limit_time_step,
    run,
)
from .speeds import (
    FirstOrder,
    GeneralPair,
    characteristic_speeds,
    first_order_speeds,
    pair_speeds,
    speed_bound,
)
from .state import PhiKind, SchemeVariant, StageContext, StepperState
from .unified import step_unified
