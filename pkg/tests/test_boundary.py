"""Tests of the ghost-cell boundary conditions."""
import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from fvbe.boundary import (
    BoundaryCondition,
    BoundaryCondition2D,
    BoundarySide,
    ghost_centers,
    pad_array,
    pad_with_ghosts,
)
from fvbe.exceptions import ConfigurationError
from fvbe.field import ScalarField1D
from fvbe.grid import build_grid_1d


def test_periodic_wrap() -> None:
    padded = pad_array(np.array([1.0, 2.0, 3.0]), BoundaryCondition.periodic(), 1)
    assert_array_equal(padded, [3, 1, 2, 3, 1])


def test_dirichlet_values() -> None:
    padded = pad_array(np.array([4.0, 5.0]), BoundaryCondition.dirichlet(0.0, 1.0), 1)
    assert_array_equal(padded, [0, 4, 5, 1])


def test_extrapolation_two_ghosts() -> None:
    padded = pad_array(np.array([5.0, 7.0]), BoundaryCondition.extrapolation(), 2)
    assert_array_equal(padded, [5, 5, 5, 7, 7, 7])


def test_reflective_negates_odd_components() -> None:
    values = np.array([[1.0, 2.0, 3.0], [0.5, 0.0, -0.5]])
    padded = pad_array(values, BoundaryCondition.reflective(), 2, odd=(1,))
    assert_array_equal(padded[0], [2, 1, 1, 2, 3, 3, 2])
    assert_array_equal(padded[1], [-0.0, -0.5, 0.5, 0.0, -0.5, 0.5, -0.0])


def test_dirichlet_function_sees_ghost_centres_and_time() -> None:
    grid = build_grid_1d(0, 1, 4)
    bc = BoundaryCondition.dirichlet(lambda x, t: x + t, lambda x, t: x - t)
    field = ScalarField1D(grid, np.zeros(4), t=0.5)
    padded = pad_with_ghosts(field, bc, 2)
    assert_allclose(padded[:2], [-0.375 + 0.5, -0.125 + 0.5])
    assert_allclose(padded[-2:], [1.125 - 0.5, 1.375 - 0.5])


def test_ghost_centers() -> None:
    left, right = ghost_centers(build_grid_1d(0, 1, 10), 2)
    assert_allclose(left, [-0.15, -0.05])
    assert_allclose(right, [1.05, 1.15])


def test_vector_dirichlet_broadcasts_per_component() -> None:
    values = np.ones((2, 3))
    bc = BoundaryCondition.dirichlet([2.0, 0.0], [3.0, 0.0])
    padded = pad_array(values, bc, 1)
    assert_array_equal(padded[:, 0], [2.0, 0.0])
    assert_array_equal(padded[:, -1], [3.0, 0.0])


def test_periodic_must_be_paired() -> None:
    with pytest.raises(ConfigurationError):
        BoundaryCondition(BoundarySide.periodic(), BoundarySide.extrapolation())


def test_dirichlet_side_needs_a_value() -> None:
    with pytest.raises(ConfigurationError):
        BoundarySide.dirichlet(None)


@pytest.mark.parametrize("width", [0, 3])
def test_ghost_width_bounds(width: int) -> None:
    with pytest.raises(ConfigurationError):
        pad_array(np.arange(5.0), BoundaryCondition.periodic(), width)


def test_scalar_field_rejects_reflective_walls() -> None:
    field = ScalarField1D(build_grid_1d(0, 1, 4), np.zeros(4))
    with pytest.raises(ConfigurationError):
        pad_with_ghosts(field, BoundaryCondition.reflective(), 1)


def test_describe() -> None:
    bc = BoundaryCondition2D.from_sides(
        BoundarySide.dirichlet(1.0),
        BoundarySide.extrapolation(),
        BoundarySide.dirichlet(lambda x, y, t: x),
        BoundarySide.extrapolation(),
    )
    assert bc.describe() == "x=dirichlet(1.0)/extrapolation y=dirichlet(f(x,t))/extrapolation"
    assert bc.along(1) is bc.y
