import numpy as np

from imex_relax.logger import logger
from imex_relax.model import RelaxationModel, ScalingParams, solve_relaxation
from imex_relax.tableaux import ImexPair

from .operators import Discretization
from .speeds import GeneralPair, speed_bound
from .state import StageContext, StepperState


def step_unified(
    state: StepperState,
    pair: ImexPair,
    model: RelaxationModel,
    scaling: ScalingParams,
    disc: Discretization,
    dt: float,
    speed: float = None,
    ctx: StageContext = None,
) -> StepperState:
    """
    One step of the unified IMEX scheme with explicit diffusion.

    Each stage solves the relaxation equation for V^i, multiplied through by
    zeta, then updates U^i from flux differences at earlier stages:

        U^i = u^n - dt [P_i D v^n + sum_j<i Q_ij (D G^j - nu D2 p^j) + sum_j<=i R_ij D N^j]

    where nu = eps^(1-alpha) and N is the part of H beyond -v. Hyperbolic
    terms use WENO with the Lax-Friedrichs bound, D2 the central stencil.
    """
    eps = scaling.epsilon
    n = disc.grid.n
    ctx = ctx if ctx is not None else StageContext.build(pair, scaling, dt, n=n)
    if speed is None:
        speed = speed_bound(GeneralPair(pair), state.u, model, scaling, dt, ctx=ctx)

    a_tilde = pair.explicit_part.a
    a = pair.implicit_part.a
    zeta = ctx.zeta
    nu = ctx.diffusion_weight
    wave = disc.pad_coefficient(ctx.wave_power)
    quadratic = model.quadratic_coefficient(eps) != 0.0
    g = disc.g

    u_pad = disc.pad(state.u, "u").data
    dv_n = disc.derivative(disc.pad(state.v, "v").data, speed, u_pad)

    stages_u, stages_v = [], []
    explicit_v, implicit_v, fluxes, nonlinear = [], [], [], []

    for i in range(pair.s):
        rhs = zeta * state.v
        for j in range(i):
            if a_tilde[i, j] != 0.0:
                rhs = rhs - a_tilde[i, j] * explicit_v[j]
            if a[i, j] != 0.0:
                rhs = rhs + a[i, j] * implicit_v[j]
        V = solve_relaxation(model, rhs, zeta, a[i, i], eps, u=state.u)
        v_pad = disc.pad(V, "v").data

        if quadratic:
            nonlinear.append(disc.derivative(model.h_nonlinear(v_pad, eps), 0.0))

        U = state.u - dt * ctx.P[:, i] * dv_n
        for j in range(i):
            U = U - dt * ctx.Q[:, i, j] * fluxes[j]
        if quadratic:
            for j in range(i + 1):
                U = U - dt * ctx.R[:, i, j] * nonlinear[j]

        stage_pad = disc.pad(U, "u").data
        p_pad = model.p(stage_pad)
        g_pad = model.g(stage_pad)
        fluxes.append(
            disc.derivative(g_pad, speed, stage_pad) - nu * disc.second_derivative(p_pad)
        )
        explicit_v.append(
            nu * disc.derivative(p_pad, speed, wave * v_pad) - g_pad[g : g + n]
        )
        implicit_v.append(model.h(V, eps))
        stages_u.append(U)
        stages_v.append(V)
        logger.debug(f"unified stage {i + 1}/{pair.s}: max|U|={np.max(np.abs(U)):.6g}")

    if ctx.gsa:
        return StepperState(stages_u[-1], stages_v[-1], state.t + dt)

    b_tilde = pair.explicit_part.b
    b = pair.implicit_part.b
    u_new = state.u - dt * ctx.weights_v * dv_n
    v_rhs = zeta * state.v
    for j in range(pair.s):
        u_new = u_new - dt * ctx.weights_explicit[:, j] * fluxes[j]
        if quadratic:
            u_new = u_new - dt * ctx.weights_implicit[:, j] * nonlinear[j]
        v_rhs = v_rhs - b_tilde[j] * explicit_v[j] + b[j] * implicit_v[j]
    return StepperState(u_new, v_rhs / zeta, state.t + dt)
