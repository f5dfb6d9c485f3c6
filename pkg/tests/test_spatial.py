import math

import numpy as np
import pytest

from imex_relax.errors import SolverError, StructuralError, ValidationError
from imex_relax.spatial import (
    Field,
    Grid1D,
    InflowOutflow,
    Periodic,
    Reflecting,
    assemble_diffusion_operator,
    central_first_derivative,
    central_second_derivative,
    fill_ghosts,
    ghosted,
    halo_width,
    make_boundary,
    paired_orders,
    upwind_flux_divergence,
)

GRID = Grid1D(0.0, 1.0, 8)
VALUES = np.arange(1.0, 9.0)
INFLOW = InflowOutflow((4.0, 4.0), (2.0, 2.0), "left")


def polynomial_field(grid: Grid1D, g: int, func) -> Field:
    """A field whose ghosts continue func beyond the domain."""
    x = grid.x_min + (np.arange(-g, grid.n + g) + 0.5) * grid.dx
    return Field(data=func(x), g=g)


def test_grid():
    grid = Grid1D(-1.0, 1.0, 10)
    assert grid.dx == pytest.approx(0.2)
    np.testing.assert_allclose(grid.centers[[0, -1]], [-0.9, 0.9])
    assert grid.refined().n == 20
    assert Grid1D.from_dx(-10.0, 10.0, 0.2).n == 100
    with pytest.raises(ValidationError):
        Grid1D(0.0, 1.0, 4)
    with pytest.raises(ValidationError):
        Grid1D(1.0, 0.0, 16)


def test_periodic_ghosts():
    field = ghosted(VALUES, Periodic(), GRID, 2)
    assert field.left_ghosts.tolist() == [7.0, 8.0]
    assert field.right_ghosts.tolist() == [1.0, 2.0]


def test_periodic_ghosts_single_cell_halo():
    field = ghosted(VALUES, Periodic(), GRID, 1)
    assert field.data.tolist() == [8.0, *VALUES.tolist(), 1.0]


def test_reflecting_ghosts():
    u = ghosted(VALUES, Reflecting(), GRID, 2, variable="u")
    v = ghosted(VALUES, Reflecting(), GRID, 2, variable="v")
    assert u.left_ghosts.tolist() == [2.0, 1.0]
    assert u.right_ghosts.tolist() == [8.0, 7.0]
    assert v.left_ghosts.tolist() == [-2.0, -1.0]
    assert v.right_ghosts.tolist() == [-8.0, -7.0]


def test_inflow_outflow_ghosts():
    field = ghosted(VALUES, INFLOW, GRID, 3)
    assert field.left_ghosts.tolist() == [4.0, 4.0, 4.0]
    assert field.right_ghosts.tolist() == [8.0, 8.0, 8.0]
    both = InflowOutflow((4.0, 1.0), (2.0, -1.0), "both")
    v = ghosted(VALUES, both, GRID, 1, variable="v")
    assert (v.left_ghosts[0], v.right_ghosts[0]) == (1.0, -1.0)


def test_ghost_errors():
    with pytest.raises(StructuralError):
        fill_ghosts(Field.from_interior(VALUES, 9), Periodic(), GRID)
    with pytest.raises(StructuralError):
        fill_ghosts(Field.from_interior(VALUES[:5], 2), Periodic(), GRID)
    with pytest.raises(ValidationError):
        make_boundary("absorbing")
    with pytest.raises(ValidationError):
        InflowOutflow((0, 0), (0, 0), "top")


def test_halo_and_paired_orders():
    assert halo_width(5) == 3 and halo_width(3) == 2
    assert paired_orders(3) == (5, 4)
    assert paired_orders(2) == (3, 2)
    assert paired_orders(2, weno_order=5) == (5, 2)


@pytest.mark.parametrize("order", [1, 3, 5])
def test_weno_constant_flux(order):
    field = ghosted(np.full(16, 2.5), Periodic(), Grid1D(0.0, 1.0, 16), 3)
    np.testing.assert_allclose(upwind_flux_divergence(field, 1.0, order, 1 / 16), 0.0, atol=1e-12)


@pytest.mark.parametrize("order", [1, 3, 5])
@pytest.mark.parametrize("speed", [0.0, 1.0, 3.0])
def test_weno_linear_flux(order, speed):
    grid = Grid1D(0.0, 1.0, 16)
    field = polynomial_field(grid, 3, lambda x: 2.0 * x + 1.0)
    divergence = upwind_flux_divergence(field, speed, order, grid.dx)
    np.testing.assert_allclose(divergence, 2.0, atol=1e-10)


@pytest.mark.parametrize("order", [3, 5])
def test_weno_periodic_conservation(order):
    grid = Grid1D(0.0, 1.0, 32)
    rng = np.random.default_rng(5)
    u = ghosted(rng.uniform(0.0, 2.0, grid.n), Periodic(), grid, 3)
    flux = Field(data=0.5 * u.data**2, g=3)
    divergence = upwind_flux_divergence(flux, 2.0, order, grid.dx, state=u)
    assert abs(divergence.sum()) < 1e-10


def test_weno_needs_halo():
    field = ghosted(VALUES, Periodic(), GRID, 2)
    with pytest.raises(StructuralError):
        upwind_flux_divergence(field, 1.0, 5, GRID.dx)
    with pytest.raises(ValidationError):
        upwind_flux_divergence(field, 1.0, 4, GRID.dx)


def _weno_error(order: int, n: int) -> float:
    grid = Grid1D(-math.pi, math.pi, n)
    field = ghosted(np.sin(grid.centers), Periodic(), grid, 3)
    divergence = upwind_flux_divergence(field, 1.0, order, grid.dx)
    return float(np.mean(np.abs(divergence - np.cos(grid.centers))))


@pytest.mark.parametrize("order,minimum", [(3, 1.2), (5, 3.0)])
def test_weno_convergence(order, minimum):
    rate = math.log2(_weno_error(order, 64) / _weno_error(order, 128))
    assert rate > minimum


def test_second_derivative_of_quadratic():
    grid = Grid1D(0.0, 1.0, 10)
    field = polynomial_field(grid, 2, lambda x: x**2)
    for bc in (Periodic(), Reflecting()):
        np.testing.assert_allclose(central_second_derivative(field, 2, bc, grid.dx), 2.0)


def test_fourth_order_closure_exact_on_cubics():
    grid = Grid1D(0.0, 1.0, 12)
    field = polynomial_field(grid, 2, lambda x: x**3 - x)
    d2 = central_second_derivative(field, 4, INFLOW, grid.dx)
    np.testing.assert_allclose(d2, 6.0 * grid.centers, atol=1e-9)
    d1 = central_first_derivative(field, 4, grid.dx)
    np.testing.assert_allclose(d1, 3.0 * grid.centers**2 - 1.0, atol=1e-9)


def test_diffusion_stencil_needs_halo():
    field = ghosted(VALUES, Periodic(), GRID, 1)
    with pytest.raises(StructuralError):
        central_second_derivative(field, 4, Periodic(), GRID.dx)
    with pytest.raises(ValidationError):
        central_second_derivative(field, 6, Periodic(), GRID.dx)


@pytest.mark.parametrize("order", [2, 4])
def test_zero_diffusion_is_identity(order):
    op = assemble_diffusion_operator(0.0, order, INFLOW, Grid1D(0.0, 1.0, 16))
    np.testing.assert_array_equal(op.matrix.to_dense(), np.eye(16))
    values = np.linspace(1.0, 2.0, 16)
    np.testing.assert_array_equal(op.apply(values), values)


@pytest.mark.parametrize("order", [2, 4])
@pytest.mark.parametrize("bc", [Periodic(), Reflecting(), INFLOW])
def test_operator_matches_stencil(order, bc):
    grid = Grid1D(-1.0, 1.0, 24)
    mu = 0.3 * grid.dx**2 * (1.0 + grid.centers**2)
    values = np.exp(-4.0 * grid.centers**2) + 2.0
    op = assemble_diffusion_operator(mu, order, bc, grid)
    d2 = central_second_derivative(ghosted(values, bc, grid, 3), order, bc, grid.dx)
    np.testing.assert_allclose(op.apply(values), values - mu * d2, atol=1e-12)


@pytest.mark.parametrize("order", [2, 4])
@pytest.mark.parametrize("bc", [Periodic(), Reflecting(), INFLOW])
def test_operator_solve_round_trip(order, bc):
    grid = Grid1D(-1.0, 1.0, 32)
    values = np.cos(3.0 * grid.centers) + 3.0
    op = assemble_diffusion_operator(0.05, order, bc, grid)
    np.testing.assert_allclose(op.solve(op.apply(values)), values, atol=1e-9)


def test_operator_rejects_negative_weights():
    with pytest.raises(ValidationError):
        assemble_diffusion_operator(-1.0, 2, Periodic(), GRID)


def test_operator_dominance_check():
    grid = Grid1D(-1.0, 1.0, 32)
    values = np.cos(3.0 * grid.centers) + 3.0

    # a negative p' turns the three point operator indefinite
    op = assemble_diffusion_operator(0.05, 2, Periodic(), grid, p_prime=-np.ones(grid.n))
    assert not op.matrix.is_diagonally_dominant()
    with pytest.raises(SolverError):
        op.solve(values)

    op = assemble_diffusion_operator(0.05, 4, Reflecting(), grid)
    assert not op.matrix.is_diagonally_dominant()
    np.testing.assert_allclose(op.solve(op.apply(values)), values, atol=1e-9)
