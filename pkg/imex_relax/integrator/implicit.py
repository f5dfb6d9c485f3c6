import numpy as np

from imex_relax.linalg import fixed_point
from imex_relax.logger import logger
from imex_relax.model import RelaxationModel, ScalingParams, solve_relaxation
from imex_relax.tableaux import ImexPair

from .operators import Discretization
from .speeds import GeneralPair, speed_bound
from .state import StageContext, StepperState

PICARD_TOL = 1e-12
PICARD_MAX_ITER = 100


def step_implicit_diffusion(
    state: StepperState,
    pair: ImexPair,
    model: RelaxationModel,
    scaling: ScalingParams,
    disc: Discretization,
    dt: float,
    speed: float = None,
    ctx: StageContext = None,
    stats: dict = None,
    tol: float = PICARD_TOL,
    max_iter: int = PICARD_MAX_ITER,
) -> StepperState:
    """
    One step of the IMEX scheme with p(u)_x taken implicitly.

    Eliminating V^i leaves an elliptic problem per stage,

        U^i - mu_i D2 p(U^i) = u^n - dt P_i D v^n - dt sum_j<i Q_ij D G^j
                               + dt nu sum_j<i R_ij D2 p^j - dt sum_j<=i R_ij D N^j,

    with mu_i = dt nu R_ii, after which V^i is recovered pointwise. Nonlinear p
    and quadratic H are handled by fixed-point iteration on U^i; with linear p
    and linear H a single banded solve is exact.
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
    quadratic = model.quadratic_coefficient(eps) != 0.0
    g = disc.g

    u_pad = disc.pad(state.u, "u").data
    dv_n = disc.derivative(disc.pad(state.v, "v").data, speed, u_pad)

    stages_u, stages_v = [], []
    sources, flux_g, laplace_p, gradient_p, implicit_v, nonlinear = [], [], [], [], [], []
    iterations = []

    for i in range(pair.s):
        base = state.u - dt * ctx.P[:, i] * dv_n
        v_base = zeta * state.v
        for j in range(i):
            base = base - dt * ctx.Q[:, i, j] * flux_g[j] + dt * nu * ctx.R[:, i, j] * laplace_p[j]
            if quadratic:
                base = base - dt * ctx.R[:, i, j] * nonlinear[j]
            v_base = (
                v_base
                + a_tilde[i, j] * sources[j]
                - a[i, j] * nu * gradient_p[j]
                + a[i, j] * implicit_v[j]
            )

        a_ii = a[i, i]
        mu = ctx.mu[i]
        R_ii = ctx.R[:, i, i]

        def recover(U):
            p_pad = model.p(disc.pad(U, "u").data)
            gradient = disc.first_derivative(p_pad)
            V = solve_relaxation(model, v_base - a_ii * nu * gradient, zeta, a_ii, eps, u=U)
            return V, p_pad, gradient

        def update(U):
            rhs = base
            if quadratic and np.any(R_ii):
                V = recover(U)[0]
                dn = disc.derivative(model.h_nonlinear(disc.pad(V, "v").data, eps), 0.0)
                rhs = base - dt * R_ii * dn
            if not np.any(mu):
                return rhs
            return disc.solve_diffusion(mu, model, rhs, U)

        coupled = np.any(mu) and (not model.p_is_linear or (quadratic and np.any(R_ii)))
        guess = stages_u[-1] if stages_u else state.u
        if coupled:
            U, count = fixed_point(update, guess, tol=tol, max_iter=max_iter)
        else:
            U, count = update(guess), 1
        iterations.append(count)

        V, p_pad, gradient = recover(U)
        stage_pad = disc.pad(U, "u").data
        g_pad = model.g(stage_pad)
        sources.append(g_pad[g : g + n])
        flux_g.append(disc.derivative(g_pad, speed, stage_pad))
        laplace_p.append(disc.second_derivative(p_pad))
        gradient_p.append(gradient)
        implicit_v.append(model.h(V, eps))
        if quadratic:
            v_pad = disc.pad(V, "v").data
            nonlinear.append(disc.derivative(model.h_nonlinear(v_pad, eps), 0.0))
        stages_u.append(U)
        stages_v.append(V)
        logger.debug(f"implicit diffusion stage {i + 1}/{pair.s}: {count} iteration(s)")

    if stats is not None:
        stats.setdefault("picard_iterations", []).append(max(iterations))

    if ctx.gsa:
        return StepperState(stages_u[-1], stages_v[-1], state.t + dt)

    b_tilde = pair.explicit_part.b
    b = pair.implicit_part.b
    u_new = state.u - dt * ctx.weights_v * dv_n
    v_rhs = zeta * state.v
    for j in range(pair.s):
        u_new = (
            u_new
            - dt * ctx.weights_explicit[:, j] * flux_g[j]
            + dt * nu * ctx.weights_implicit[:, j] * laplace_p[j]
        )
        if quadratic:
            u_new = u_new - dt * ctx.weights_implicit[:, j] * nonlinear[j]
        v_rhs = v_rhs + b_tilde[j] * sources[j] - b[j] * nu * gradient_p[j] + b[j] * implicit_v[j]
    return StepperState(u_new, v_rhs / zeta, state.t + dt)
