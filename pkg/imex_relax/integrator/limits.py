"""
Runge-Kutta schemes for the limit equation u_t + G(u)_x = nu p(u)_xx.

nu = eps^(1-alpha) covers both limits: nu = 1 is the convection-diffusion
equation, nu -> 0 the conservation law. These are written independently of
the relaxation steppers and serve as their small-eps reference.
"""

import numpy as np

from imex_relax.linalg import fixed_point
from imex_relax.model import RelaxationModel
from imex_relax.tableaux import ImexPair

from .operators import Discretization


def _explicit_terms(u, model: RelaxationModel, disc: Discretization, speed: float):
    u_pad = disc.pad(u, "u").data
    p_pad = model.p(u_pad)
    return disc.derivative(model.g(u_pad), speed, u_pad), disc.second_derivative(p_pad)


def step_limit_explicit(
    u,
    pair: ImexPair,
    model: RelaxationModel,
    disc: Discretization,
    dt: float,
    speed: float,
    viscosity=1.0,
) -> np.ndarray:
    """
    Explicit RK pair (A~, b~) with explicit diffusion.
    """
    a_tilde = pair.explicit_part.a
    b_tilde = pair.explicit_part.b
    u = np.asarray(u, dtype=float)
    slopes = []
    for i in range(pair.s):
        stage = u.copy()
        for j in range(i):
            stage -= dt * a_tilde[i, j] * slopes[j]
        flux, diffusion = _explicit_terms(stage, model, disc, speed)
        slopes.append(flux - viscosity * diffusion)
    return u - dt * sum(b_tilde[j] * slopes[j] for j in range(pair.s))


def step_limit_imex(
    u,
    pair: ImexPair,
    model: RelaxationModel,
    disc: Discretization,
    dt: float,
    speed: float,
    viscosity=1.0,
    tol: float = 1e-12,
    max_iter: int = 100,
) -> np.ndarray:
    """
    IMEX pair with explicit convection and implicit diffusion.
    """
    a_tilde = pair.explicit_part.a
    a = pair.implicit_part.a
    u = np.asarray(u, dtype=float)
    viscosity = np.broadcast_to(np.asarray(viscosity, dtype=float), u.shape)
    fluxes, diffusions = [], []
    for i in range(pair.s):
        rhs = u.copy()
        for j in range(i):
            rhs = rhs - dt * a_tilde[i, j] * fluxes[j] + dt * a[i, j] * viscosity * diffusions[j]
        mu = dt * a[i, i] * viscosity
        if not np.any(mu):
            stage = rhs
        elif model.p_is_linear:
            stage = disc.solve_diffusion(mu, model, rhs, u)
        else:
            stage, _ = fixed_point(
                lambda w: disc.solve_diffusion(mu, model, rhs, w), u, tol=tol, max_iter=max_iter
            )
        flux, diffusion = _explicit_terms(stage, model, disc, speed)
        fluxes.append(flux)
        diffusions.append(diffusion)

    b_tilde = pair.explicit_part.b
    b = pair.implicit_part.b
    out = u.copy()
    for j in range(pair.s):
        out = out - dt * b_tilde[j] * fluxes[j] + dt * b[j] * viscosity * diffusions[j]
    return out
