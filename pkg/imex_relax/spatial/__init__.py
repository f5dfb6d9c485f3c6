from .boundary import (
    BoundaryCondition,
    Field,
    InflowOutflow,
    Periodic,
    Reflecting,
    fill_ghosts,
    ghosted,
    halo_width,
    make_boundary,
)
from .diffusion import (
    DiffusionOperator,
    Laplacian,
    assemble_diffusion_operator,
    central_first_derivative,
    central_second_derivative,
    laplacian,
)
from .grid import Grid1D
from .weno import numerical_flux, upwind_flux_divergence


def paired_orders(time_order: int, weno_order="auto", diffusion_order="auto"):
    """
    WENO5 with fourth-order diffusion for third-order time stepping, WENO3 with
    second-order diffusion otherwise. Explicit values override the pairing.
    """
    if weno_order == "auto":
        weno_order = 5 if time_order >= 3 else 3
    if diffusion_order == "auto":
        diffusion_order = 4 if time_order >= 3 else 2
    return int(weno_order), int(diffusion_order)
