"""
First-order splitting schemes: explicit flux update of u, then a pointwise
implicit relaxation of v.

    additive     p(u)_x at t^n
    partitioned  p(u)_x at t^(n+1)
    hybrid       phi(eps) additive + (1 - phi(eps)) partitioned
"""

from imex_relax.errors import ValidationError
from imex_relax.model import RelaxationModel, ScalingParams, solve_relaxation

from .operators import Discretization
from .speeds import FirstOrder, speed_bound
from .state import PhiKind, SchemeVariant, StepperState


def step_baseline(
    state: StepperState,
    variant: SchemeVariant,
    model: RelaxationModel,
    scaling: ScalingParams,
    disc: Discretization,
    dt: float,
    speed: float = None,
    phi: PhiKind = PhiKind.MinEps2,
) -> StepperState:
    variant = SchemeVariant(variant)
    if not variant.is_baseline:
        raise ValidationError(f"{variant.value} is not a first-order baseline")

    eps = scaling.epsilon
    zeta = scaling.zeta(dt)
    nu = scaling.diffusion_weight
    wave = disc.pad_coefficient(scaling.wave_power)
    if speed is None:
        speed = speed_bound(FirstOrder(), state.u, model, scaling, dt)

    u_pad = disc.pad(state.u, "u").data
    v_state = wave * disc.pad(state.v, "v").data
    u_new = state.u - dt * disc.derivative(disc.pad(state.v, "v").data, speed, u_pad)

    if variant == SchemeVariant.BaselineAdditive:
        dp = disc.derivative(model.p(u_pad), speed, v_state)
    else:
        dp_new = disc.derivative(model.p(disc.pad(u_new, "u").data), speed, v_state)
        if variant == SchemeVariant.BaselinePartitioned:
            dp = dp_new
        else:
            weight = PhiKind(phi)(eps)
            if weight == 1.0:
                dp = disc.derivative(model.p(u_pad), speed, v_state)
            elif weight == 0.0:
                dp = dp_new
            else:
                dp_old = disc.derivative(model.p(u_pad), speed, v_state)
                dp = weight * dp_old + (1.0 - weight) * dp_new

    # zeta v^(n+1) - H(v^(n+1)) = zeta v^n - nu D p + G(u^(n+1))
    rhs = zeta * state.v - nu * dp + model.g(u_new)
    v_new = solve_relaxation(model, rhs, zeta, 1.0, eps, u=u_new)
    return StepperState(u_new, v_new, state.t + dt)
