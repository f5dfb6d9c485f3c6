import math

import numpy as np
import pytest

from imex_relax.errors import IterationError, SolverError, StructuralError
from imex_relax.linalg import BandedMatrix, banded_solve, fixed_point


def second_difference(n: int, mu: float, cyclic: bool) -> BandedMatrix:
    """I - mu D2 with the standard three point stencil."""
    diagonals = np.vstack([np.full(n, -mu), np.full(n, 1 + 2 * mu), np.full(n, -mu)])
    if not cyclic:
        diagonals[0, 0] = 0.0
        diagonals[2, -1] = 0.0
    return BandedMatrix(diagonals, 1, 1, cyclic=cyclic)


def test_identity_solve():
    rhs = np.arange(10.0)
    np.testing.assert_array_equal(banded_solve(BandedMatrix.identity(10), rhs), rhs)


@pytest.mark.parametrize("cyclic", [False, True])
def test_second_difference_round_trip(cyclic):
    m = second_difference(40, 0.7, cyclic)
    rhs = np.sin(np.linspace(0, 2 * math.pi, 40, endpoint=False))
    x = banded_solve(m, rhs)
    np.testing.assert_allclose(m.matvec(x), rhs, atol=1e-12)


def test_cyclic_constant_rhs():
    # rows of I - mu D2 sum to one
    x = banded_solve(second_difference(16, 2.5, cyclic=True), np.full(16, 3.0))
    np.testing.assert_allclose(x, 3.0, atol=1e-12)


@pytest.mark.parametrize("cyclic", [False, True])
def test_matches_dense_solve(cyclic):
    rng = np.random.default_rng(11)
    n, lower, upper = 12, 2, 2
    diagonals = rng.uniform(-1.0, 1.0, (lower + upper + 1, n))
    diagonals[lower] = 6.0 + rng.uniform(0.0, 1.0, n)
    m = BandedMatrix(diagonals, lower, upper, cyclic=cyclic)
    if not cyclic:
        m = BandedMatrix.from_dense(m.to_dense(), lower, upper)
    rhs = rng.normal(size=n)
    np.testing.assert_allclose(banded_solve(m, rhs), np.linalg.solve(m.to_dense(), rhs))


def test_from_dense_keeps_wrapped_entries():
    dense = second_difference(8, 1.0, cyclic=True).to_dense()
    assert dense[0, -1] == -1.0 and dense[-1, 0] == -1.0
    again = BandedMatrix.from_dense(dense, 1, 1, cyclic=True)
    np.testing.assert_array_equal(again.to_dense(), dense)


def test_scaled_band():
    m = second_difference(6, 1.0, cyclic=False).scaled(2.0, identity_shift=1.0)
    np.testing.assert_allclose(m.diagonal(0), 7.0)
    np.testing.assert_allclose(m.diagonal(1)[:-1], -2.0)


def test_not_diagonally_dominant():
    diagonals = np.vstack([np.full(5, 1.0), np.full(5, 1.0), np.full(5, 1.0)])
    m = BandedMatrix(diagonals, 1, 1, cyclic=True)
    assert not m.is_diagonally_dominant()
    with pytest.raises(SolverError):
        banded_solve(m, np.ones(5))


def test_structural_errors():
    with pytest.raises(StructuralError):
        BandedMatrix(np.ones((2, 5)), 1, 1)
    with pytest.raises(StructuralError):
        banded_solve(BandedMatrix.identity(5), np.ones(4))


def test_fixed_point_of_identity_map():
    x0 = np.array([1.0, 2.0])
    x, iterations = fixed_point(lambda x: x, x0)
    np.testing.assert_array_equal(x, x0)
    assert iterations == 1


def test_fixed_point_square_root():
    x, _ = fixed_point(lambda x: 0.5 * (x + 2.0 / x), np.array([1.0]), tol=1e-14)
    assert x[0] == pytest.approx(math.sqrt(2.0), abs=1e-14)


def test_fixed_point_reports_divergence():
    with pytest.raises(IterationError) as error:
        fixed_point(lambda x: 2.0 * x + 1.0, np.array([1.0]), max_iter=5)
    assert error.value.iterations == 5
    assert error.value.residual > 1.0
