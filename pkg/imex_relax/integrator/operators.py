from dataclasses import dataclass

import numpy as np

from imex_relax.errors import ValidationError
from imex_relax.model import RelaxationModel
from imex_relax.spatial import (
    BoundaryCondition,
    Field,
    Grid1D,
    InflowOutflow,
    Periodic,
    assemble_diffusion_operator,
    central_first_derivative,
    central_second_derivative,
    ghosted,
    halo_width,
    upwind_flux_divergence,
)


@dataclass(frozen=True)
class Discretization:
    """
    Grid, boundary condition and the spatial orders used by a stepper.
    """

    grid: Grid1D
    bc: BoundaryCondition
    weno_order: int = 3
    diffusion_order: int = 2

    def __post_init__(self):
        if self.weno_order not in (1, 3, 5):
            raise ValidationError(f"WENO order must be 1, 3 or 5, got {self.weno_order}")
        if self.diffusion_order not in (2, 4):
            raise ValidationError(f"diffusion order must be 2 or 4, got {self.diffusion_order}")

    @property
    def g(self) -> int:
        return max(halo_width(self.weno_order), self.diffusion_order // 2)

    @property
    def dx(self) -> float:
        return self.grid.dx

    def pad(self, values, variable: str = "u") -> Field:
        return ghosted(values, self.bc, self.grid, self.g, variable=variable)

    def pad_coefficient(self, values) -> np.ndarray:
        """
        Extend a per-cell coefficient into the halo: wrapped for periodic grids,
        constant beyond each wall otherwise.
        """
        values = np.broadcast_to(np.asarray(values, dtype=float), (self.grid.n,))
        if isinstance(self.bc, Periodic):
            return np.concatenate([values[-self.g :], values, values[: self.g]])
        return np.pad(values, self.g, mode="edge")

    def derivative(self, flux: np.ndarray, speed: float, state: np.ndarray = None) -> np.ndarray:
        """
        WENO flux difference of padded flux data with LF splitting on padded state data.
        """
        state_field = None if state is None else Field(state, self.g)
        return upwind_flux_divergence(
            Field(flux, self.g), speed, self.weno_order, self.dx, state=state_field
        )

    def second_derivative(self, padded: np.ndarray) -> np.ndarray:
        return central_second_derivative(
            Field(padded, self.g), self.diffusion_order, self.bc, self.dx
        )

    def first_derivative(self, padded: np.ndarray) -> np.ndarray:
        return central_first_derivative(Field(padded, self.g), self.diffusion_order, self.dx)

    def p_boundary(self, model: RelaxationModel):
        """
        Fixed values of p at inflow walls, (0, 0) when there are none.
        """
        if isinstance(self.bc, InflowOutflow):
            left = float(model.p(np.array([self.bc.left_state[0]]))[0])
            right = float(model.p(np.array([self.bc.right_state[0]]))[0])
            return left, right
        return 0.0, 0.0

    def diffusion_operator(self, mu, model: RelaxationModel, u=None):
        """
        I - diag(mu) D2 diag(p'(u)), the Newton linearization of u -> u - mu p(u)_xx.
        """
        u = np.zeros(self.grid.n) if u is None else u
        return assemble_diffusion_operator(
            mu,
            self.diffusion_order,
            self.bc,
            self.grid,
            p_prime=model.p_prime(u),
            boundary_values=self.p_boundary(model),
        )

    def solve_diffusion(self, mu, model: RelaxationModel, rhs, u_lagged):
        """
        One linearized solve of U - mu D2 p(U) = rhs about u_lagged.
        """
        operator = self.diffusion_operator(mu, model, u_lagged)
        rhs = np.asarray(rhs, dtype=float)
        offset = model.p(u_lagged) - model.p_prime(u_lagged) * u_lagged
        if np.any(offset):
            rhs = rhs + operator.mu * operator.laplacian.matrix.matvec(offset)
        return operator.solve(rhs)
