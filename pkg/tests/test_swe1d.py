"""Tests of the 1D shallow-water solver."""
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from fvbe.boundary import BoundaryCondition
from fvbe.exceptions import ConfigurationError, StateError
from fvbe.grid import build_grid_1d
from fvbe.scheme_kind import SchemeKind
from fvbe.swe1d import (
    GRAVITY,
    SweSolver,
    SweState,
    advance_swe,
    lake_at_rest_diagnostic,
    swe_physical_flux,
    well_balanced_source,
)
from fvbe.wave_speed import WaveSpeedMode

SCHEME_MODES = [(scheme, mode) for scheme in SchemeKind for mode in scheme.allowed_modes]


def _bump(x: np.ndarray) -> np.ndarray:
    return 0.2 * np.exp(-(((x - 0.5) / 0.1) ** 2))


def test_physical_flux() -> None:
    assert_allclose(swe_physical_flux(1.0, 0.0), (0.0, 4.905))
    assert_allclose(swe_physical_flux(0.0, 0.0), (0.0, 0.0))
    assert_allclose(swe_physical_flux(2.0, 2.0), (2.0, 21.62))
    with pytest.raises(StateError):
        swe_physical_flux(-0.1, 0.0)


def test_well_balanced_source() -> None:
    assert float(well_balanced_source(1.0, 1.0, 0.05, GRAVITY, 0.01)) == pytest.approx(-49.05)
    assert float(well_balanced_source(1.0, 3.0, 0.0, GRAVITY, 0.01)) == 0.0


def test_state_checks() -> None:
    grid = build_grid_1d(0, 1, 10)
    with pytest.raises(StateError):
        SweState(grid, np.full(10, -1.0), 0.0, 0.0)
    with pytest.raises(StateError):
        SweState(grid, np.full(10, np.nan), 0.0, 0.0)
    with pytest.raises(ConfigurationError):
        SweState(grid, 1.0, 0.0, 0.0, gravity=0.0)


def test_state_views() -> None:
    grid = build_grid_1d(0, 1, 4)
    state = SweState.from_surface(grid, 1.0, [0.0, 0.5, 0.5, 0.0], hu=[0.0, 0.5, 0.0, 0.0])
    assert_allclose(state.h, [1.0, 0.5, 0.5, 1.0])
    assert_allclose(state.surface, 1.0)
    assert_allclose(state.velocity, [0.0, 1.0, 0.0, 0.0])
    assert_allclose(state.bed_interfaces, [0.0, 0.25, 0.5, 0.25, 0.0])
    assert state.mass() == pytest.approx(0.75)
    assert state.values.shape == (2, 4)


def test_dry_cells_carry_no_velocity() -> None:
    state = SweState(build_grid_1d(0, 1, 3), [0.0, 1.0, 2.0], [1.0, 1.0, 1.0], 0.0)
    assert_array_equal(state.velocity, [0.0, 1.0, 0.5])


@pytest.mark.parametrize(
    "scheme_mode", SCHEME_MODES, ids=lambda item: f"{item[0].value}-{item[1].value}"
)
def test_flat_lake_stays_at_rest(scheme_mode) -> None:
    scheme, mode = scheme_mode
    state = SweState.from_surface(build_grid_1d(0, 1, 40), 1.0, 0.0)
    solver = SweSolver(scheme, mode=mode)
    for _ in range(20):
        state, dt = solver.step(state)
    assert_array_equal(state.h, 1.0)
    assert_array_equal(state.hu, 0.0)
    assert dt == pytest.approx(0.8 * 0.025 / math.sqrt(GRAVITY))


def test_lake_at_rest_diagnostic() -> None:
    grid = build_grid_1d(0, 1, 100)
    flat = SweState.from_surface(grid, 1.0, 0.0)
    assert lake_at_rest_diagnostic(flat) == 0.0
    bumpy = SweState.from_surface(grid, 1.0, _bump(grid.centers))
    residual = lake_at_rest_diagnostic(bumpy, SchemeKind.KFDS, steps=100)
    assert math.isfinite(residual)
    assert residual >= 0.0


@pytest.mark.parametrize("scheme", [SchemeKind.KFDS, SchemeKind.KLW])
def test_reflective_walls_conserve_mass(scheme: SchemeKind) -> None:
    grid = build_grid_1d(0, 1, 100)
    h = np.where(grid.centers < 0.5, 2.0, 1.0)
    state = SweState(grid, h, 0.0, _bump(grid.centers))
    solver = SweSolver(scheme, BoundaryCondition.reflective())
    mass = state.mass()
    for _ in range(50):
        state, _ = solver.step(state)
        assert state.mass() == pytest.approx(mass, rel=1e-12)
    assert np.all(state.h > 0.0)


def test_dam_break_moves_water_downstream() -> None:
    grid = build_grid_1d(0, 1, 100)
    state = SweState(grid, np.where(grid.centers < 0.5, 2.0, 1.0), 0.0, 0.0)
    new = state
    while new.t < 0.05:
        new = advance_swe(new, SchemeKind.KFDS, t_final=0.05)
    assert new.t == 0.05
    assert np.all(new.hu >= -1e-8)
    assert np.max(new.hu) > 0.1
    assert np.all(new.h <= 2.0 + 1e-9) and np.all(new.h >= 1.0 - 1e-9)


def test_step_lands_on_the_final_time() -> None:
    state = SweState.from_surface(build_grid_1d(0, 1, 10), 1.0, 0.0)
    new, dt = SweSolver().step(state, t_final=1e-4)
    assert new.t == 1e-4
    assert dt == pytest.approx(1e-4)


def test_solver_rejects_bad_settings() -> None:
    with pytest.raises(ConfigurationError):
        SweSolver(SchemeKind.TVD_KFDS, mode=WaveSpeedMode.RH)
    with pytest.raises(ConfigurationError):
        SweSolver(cfl=0.0)
