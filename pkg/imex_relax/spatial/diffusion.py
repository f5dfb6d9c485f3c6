"""
Central stencils for the diffusion term and the banded operator I - diag(mu) D2.

Fourth-order diffusion on non-periodic grids replaces the interior stencil at
the two cells nearest each wall by a one-sided third-order formula.
"""

import functools
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from imex_relax.errors import StructuralError, ValidationError
from imex_relax.linalg import BandedMatrix, banded_solve

from .boundary import BoundaryCondition, Field, InflowOutflow, Periodic, Reflecting
from .grid import Grid1D

SECOND_DERIVATIVE = {
    2: {-1: 1.0, 0: -2.0, 1: 1.0},
    4: {-2: -1.0 / 12, -1: 16.0 / 12, 0: -30.0 / 12, 1: 16.0 / 12, 2: -1.0 / 12},
}

FIRST_DERIVATIVE = {
    2: {-1: -0.5, 1: 0.5},
    4: {-2: 1.0 / 12, -1: -8.0 / 12, 1: 8.0 / 12, 2: -1.0 / 12},
}

# third-order closure for the two cells next to the left wall, mirrored on the right
CLOSURE = {-1: 11.0 / 12, 0: -20.0 / 12, 1: 6.0 / 12, 2: 4.0 / 12, 3: -1.0 / 12}

# I - mu D2 is strictly diagonally dominant for mu >= 0 only with the three point stencil;
# the five point one (|-30| < 2 (16 + 1)) is solved under the residual check alone
DOMINANT_ORDERS = (2,)


def _check_order(order: int):
    if order not in SECOND_DERIVATIVE:
        raise ValidationError(f"diffusion order must be 2 or 4, got {order}")


def _require_halo(field: Field, order: int):
    if field.g < order // 2:
        raise StructuralError(
            f"order {order} stencil needs a halo of {order // 2} cells, the field has {field.g}"
        )


def _apply_stencil(field: Field, stencil: Dict[int, float]) -> np.ndarray:
    g, n = field.g, field.n
    out = np.zeros(n)
    for offset, weight in stencil.items():
        out += weight * field.data[g + offset : g + offset + n]
    return out


def row_stencil(i: int, n: int, order: int, periodic: bool) -> Dict[int, float]:
    """
    Offsets and weights (in units of 1/dx^2) used for the second derivative at cell i.
    """
    if order == 4 and not periodic:
        if i < 2:
            return CLOSURE
        if i >= n - 2:
            return {-k: w for k, w in CLOSURE.items()}
    return SECOND_DERIVATIVE[order]


def central_second_derivative(field: Field, order: int, bc: BoundaryCondition, dx: float):
    """
    Second derivative of a ghost-filled field at every interior cell.
    """
    _check_order(order)
    _require_halo(field, order)
    out = _apply_stencil(field, SECOND_DERIVATIVE[order])
    n = field.n
    if order == 4 and not isinstance(bc, Periodic):
        for i in (0, 1, n - 2, n - 1):
            stencil = row_stencil(i, n, order, periodic=False)
            out[i] = sum(w * field.data[field.g + i + k] for k, w in stencil.items())
    return out / (dx * dx)


def central_first_derivative(field: Field, order: int, dx: float):
    """
    Centered first derivative of matching order.
    """
    _check_order(order)
    _require_halo(field, order)
    return _apply_stencil(field, FIRST_DERIVATIVE[order]) / dx


@dataclass(frozen=True)
class Laplacian:
    """
    D2 acting on interior values as matrix @ values + boundary contribution.

    Ghost values that depend on the interior are folded into the matrix;
    fixed inflow values enter through left_weights and right_weights.
    """

    matrix: BandedMatrix
    left_weights: np.ndarray
    right_weights: np.ndarray

    def boundary(self, left_value: float = 0.0, right_value: float = 0.0) -> np.ndarray:
        return self.left_weights * left_value + self.right_weights * right_value

    def apply(self, values, left_value: float = 0.0, right_value: float = 0.0) -> np.ndarray:
        return self.matrix.matvec(values) + self.boundary(left_value, right_value)


def _ghost_target(j: int, n: int, bc: BoundaryCondition):
    """
    Resolve a ghost index to an interior column, or to 'left'/'right' for fixed values.
    """
    if isinstance(bc, Periodic):
        return j % n
    if isinstance(bc, Reflecting):
        return -j - 1 if j < 0 else 2 * n - 1 - j
    if isinstance(bc, InflowOutflow):
        if j < 0:
            return "left" if bc.left_is_inflow else 0
        return "right" if bc.right_is_inflow else n - 1
    raise ValidationError(f"unsupported boundary condition {bc!r}")


@functools.lru_cache(maxsize=64)
def laplacian(order: int, bc: BoundaryCondition, grid: Grid1D) -> Laplacian:
    _check_order(order)
    n = grid.n
    periodic = isinstance(bc, Periodic)
    band = 3 if (order == 4 and not periodic) else order // 2
    diagonals = np.zeros((2 * band + 1, n))
    left = np.zeros(n)
    right = np.zeros(n)
    scale = 1.0 / (grid.dx * grid.dx)

    for i in range(n):
        for offset, weight in row_stencil(i, n, order, periodic).items():
            j = i + offset
            target = j if 0 <= j < n else _ghost_target(j, n, bc)
            if target == "left":
                left[i] += weight * scale
            elif target == "right":
                right[i] += weight * scale
            else:
                k = target - i
                if periodic and abs(k) > band:
                    k = k - n if k > 0 else k + n
                diagonals[k + band, i] += weight * scale

    matrix = BandedMatrix(diagonals, band, band, cyclic=periodic)
    left.setflags(write=False)
    right.setflags(write=False)
    return Laplacian(matrix=matrix, left_weights=left, right_weights=right)


@dataclass(frozen=True)
class DiffusionOperator:
    """
    The linear map u -> u - mu * D2(p' u), with D2 including its boundary terms.
    """

    matrix: BandedMatrix
    mu: np.ndarray
    laplacian: Laplacian
    boundary: np.ndarray
    order: int

    def apply(self, values) -> np.ndarray:
        return self.matrix.matvec(values) - self.mu * self.boundary

    def solve(self, rhs) -> np.ndarray:
        """
        x with apply(x) = rhs.
        """
        rhs = np.asarray(rhs, dtype=float) + self.mu * self.boundary
        return banded_solve(self.matrix, rhs, check_dominance=self.order in DOMINANT_ORDERS)


def assemble_diffusion_operator(
    mu,
    order: int,
    bc: BoundaryCondition,
    grid: Grid1D,
    p_prime=None,
    boundary_values: Tuple[float, float] = None,
) -> DiffusionOperator:
    """
    Banded representation of I - diag(mu) D2 diag(p_prime) consistent with
    central_second_derivative at the same order and boundary treatment.

    boundary_values are the fixed ghost values at inflow walls; by default the
    u components of the InflowOutflow states.
    """
    mu = np.broadcast_to(np.asarray(mu, dtype=float), (grid.n,)).copy()
    if np.any(mu < 0.0) or not np.all(np.isfinite(mu)):
        raise ValidationError("diffusion weights mu must be finite and nonnegative")

    lap = laplacian(order, bc, grid)
    if boundary_values is None:
        if isinstance(bc, InflowOutflow):
            boundary_values = (bc.left_state[0], bc.right_state[0])
        else:
            boundary_values = (0.0, 0.0)

    matrix = lap.matrix.scaled(-mu, col_scale=p_prime, identity_shift=1.0)
    return DiffusionOperator(
        matrix=matrix,
        mu=mu,
        laplacian=lap,
        boundary=lap.boundary(*boundary_values),
        order=order,
    )
