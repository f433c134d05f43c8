"""Tests of the 1D interface fluxes and the explicit time loop."""
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from fvbe.boundary import BoundaryCondition
from fvbe.exceptions import ConfigurationError, DivergenceError, NoEvolution, NonConvergenceError
from fvbe.field import ScalarField1D
from fvbe.flux_model import FluxModel
from fvbe.grid import build_grid_1d
from fvbe.run_config import RunConfig
from fvbe.scheme_kind import SchemeKind, TvdSplit
from fvbe.solver1d import (
    Solver1D,
    advance,
    clip_to_final,
    interface_flux_kfds,
    interface_flux_klw,
    interface_flux_tvd,
    march,
    minmod,
    run_to_time,
    stable_dt,
    total_variation,
    viscous_fluxes,
    viscous_interface_flux,
)
from fvbe.wave_speed import WaveSpeedMode

BURGERS = FluxModel.burgers()
SCHEME_MODES = [(scheme, mode) for scheme in SchemeKind for mode in scheme.allowed_modes]


def _ids(item) -> str:
    return f"{item[0].value}-{item[1].value}"


def test_minmod() -> None:
    assert float(minmod(1.0, 2.0)) == 1.0
    assert float(minmod(-1.0, 2.0)) == 0.0
    assert float(minmod(3.0, 3.0)) == 3.0
    assert float(minmod(-3.0, -2.0)) == -2.0
    assert float(minmod(0.0, 2.0)) == 0.0


def test_kfds_flux() -> None:
    assert interface_flux_kfds(0.4, 0.4, 0.08, 0.08, 1.0) == pytest.approx(0.08)
    assert interface_flux_kfds(1.0, 0.0, 0.5, 0.0, 1.0) == pytest.approx(0.75)
    # Zero RH speed at a stationary shock: the flux equals g on both sides
    assert interface_flux_kfds(1.0, -1.0, 0.5, 0.5, 0.0) == pytest.approx(0.5)


def test_klw_flux() -> None:
    assert interface_flux_klw(0.4, 0.4, 0.08, 0.08, 1.0, 0.5) == pytest.approx(0.08)
    assert interface_flux_klw(1.0, 0.0, 0.5, 0.0, 1.0, 0.5) == pytest.approx(0.5)
    with pytest.raises(ConfigurationError):
        interface_flux_klw(1.0, 0.0, 0.5, 0.0, 1.0, 0.0)


@pytest.mark.parametrize("split", list(TvdSplit))
def test_tvd_flux_limits(split: TvdSplit) -> None:
    lam, ratio = 1.0, 0.6
    # Uniform slopes of a linear flux: the limiter is inactive, the flux is KLW
    u = np.array([0.0, 1.0, 2.0, 3.0])
    g = 0.5 * u
    assert interface_flux_tvd(u, g, lam, ratio, split) == pytest.approx(
        interface_flux_klw(u[1], u[2], g[1], g[2], lam, ratio)
    )
    # Alternating jumps: the limiter switches the correction off, the flux is KFDS
    u = np.array([0.0, 1.0, 0.0, 1.0])
    g = 0.5 * u
    assert interface_flux_tvd(u, g, lam, ratio, split) == pytest.approx(
        interface_flux_kfds(u[1], u[2], g[1], g[2], lam)
    )
    # Constant data
    flux = interface_flux_tvd(np.full(4, 0.3), np.full(4, 0.045), lam, ratio, split)
    assert flux == pytest.approx(0.045)


def test_tvd_flux_checks() -> None:
    with pytest.raises(ConfigurationError):
        interface_flux_tvd(np.zeros(3), np.zeros(3), 1.0, 0.5)
    with pytest.raises(ConfigurationError):
        interface_flux_tvd(np.zeros(4), np.zeros(4), 1.0, 1.5)


def test_tvd_flux_defaults_to_the_printed_correction() -> None:
    u = np.array([0.0, 1.0, 3.0, 3.5])
    g = 0.5 * u * u
    lam, ratio = 3.5, 0.2
    # KFDS -1.0 minus 1/2 minmod(A) = -0.3875 minus 1/2 minmod(B) = 0.275
    assert interface_flux_tvd(u, g, lam, ratio) == pytest.approx(-0.8875)
    assert interface_flux_tvd(u, g, lam, ratio, TvdSplit.PRINTED) == pytest.approx(-0.8875)
    assert interface_flux_tvd(u, g, lam, ratio, TvdSplit.UPWIND) != pytest.approx(-0.8875)
    assert Solver1D(BURGERS, SchemeKind.TVD_KFDS).tvd_split is TvdSplit.PRINTED


def test_viscous_fluxes() -> None:
    assert viscous_interface_flux(0.3, 0.3) == pytest.approx(0.3)
    dx, slope, nu = 0.1, 2.5, 0.2
    u_pad = slope * dx * np.arange(14.0)
    assert_allclose(viscous_fluxes(u_pad, nu, dx, 2, BoundaryCondition.periodic()), nu * slope)
    fluxes = viscous_fluxes(u_pad, nu, dx, 2, BoundaryCondition.extrapolation())
    assert_allclose(fluxes, nu * slope)
    assert_array_equal(viscous_fluxes(u_pad, 0.0, dx, 2, BoundaryCondition.periodic()), 0.0)


def test_stable_dt() -> None:
    assert stable_dt(1.0, 0.02, 0.8) == pytest.approx(0.016)
    assert stable_dt(1.0, 0.02, 0.8, nu=0.1) == pytest.approx(0.4 * 0.02**2 / 0.1)
    assert stable_dt(0.0, 0.02, 0.8, nu=0.1) == pytest.approx(0.0016)
    with pytest.raises(NoEvolution):
        stable_dt(0.0, 0.02, 0.8)
    with pytest.raises(ConfigurationError):
        stable_dt(1.0, 0.02, 1.2)


def test_total_variation_and_clip() -> None:
    assert total_variation([0.0, 1.0, -1.0, -1.0]) == 3.0
    assert clip_to_final(0.3, 0.9, 1.0) == pytest.approx((0.1, True))
    assert clip_to_final(0.05, 0.9, 1.0) == (0.05, False)
    assert clip_to_final(0.05, 0.9, None) == (0.05, False)


@pytest.mark.parametrize("scheme_mode", SCHEME_MODES, ids=_ids)
def test_constant_field_is_unchanged(scheme_mode) -> None:
    scheme, mode = scheme_mode
    field = ScalarField1D(build_grid_1d(0, 1, 20), np.full(20, 0.7))
    new = advance(field, BURGERS, scheme, BoundaryCondition.periodic(), mode)
    assert_allclose(new.u, 0.7, rtol=0, atol=1e-15)
    assert new.t > 0.0


@pytest.mark.parametrize("scheme_mode", SCHEME_MODES, ids=_ids)
def test_periodic_burgers_conserves_the_cell_sum(scheme_mode) -> None:
    scheme, mode = scheme_mode
    grid = build_grid_1d(0, 1, 100)
    field = ScalarField1D.from_function(grid, lambda x: 0.5 + np.sin(2.0 * math.pi * x))
    solver = Solver1D(BURGERS, scheme, BoundaryCondition.periodic(), mode)
    total = field.total()
    for _ in range(30):
        field, _ = solver.step(field)
        assert abs(field.total() - total) <= 1e-12 * abs(total)
        total = field.total()


def test_kfds_plus_holds_a_stationary_shock_exactly() -> None:
    grid = build_grid_1d(-1, 1, 100)
    field = ScalarField1D.from_function(grid, lambda x: np.where(x < 0.0, 1.0, -1.0))
    initial = field.u.copy()
    solver = Solver1D(BURGERS, SchemeKind.KFDS_PLUS, BoundaryCondition.extrapolation())
    for _ in range(1000):
        field, _ = solver.step(field)
    assert np.max(np.abs(field.u - initial)) <= 1e-12


def test_unit_courant_number_translates_exactly() -> None:
    grid = build_grid_1d(0, 1, 50)
    field = ScalarField1D.from_function(grid, lambda x: np.sin(2.0 * math.pi * x) + (x > 0.5))
    initial = field.u.copy()
    solver = Solver1D(
        FluxModel.linear_advection(1.0), SchemeKind.KFDS, BoundaryCondition.periodic(), cfl=1.0
    )
    for step in range(1, 101):
        field, dt = solver.step(field)
        assert dt == pytest.approx(grid.dx)
        if step == 7:
            assert np.max(np.abs(field.u - np.roll(initial, 7))) < 1e-12
    assert np.max(np.abs(field.u - initial)) < 1e-12


def test_courant_number_above_one_grows() -> None:
    grid = build_grid_1d(0, 1, 50)
    model = FluxModel.linear_advection(1.0)
    field = ScalarField1D.from_function(grid, lambda x: np.where(x < 0.5, 1.0, 0.0))
    start = np.max(np.abs(field.u))
    grown = False
    for _ in range(200):
        field = advance(
            field, model, SchemeKind.KFDS, BoundaryCondition.periodic(), dt=1.2 * grid.dx
        )
        if np.max(np.abs(field.u)) >= 1.1 * start:
            grown = True
            break
    assert grown


def test_divergence_names_the_cell() -> None:
    field = ScalarField1D(build_grid_1d(0, 1, 10), np.full(10, 1e200))
    with np.errstate(all="ignore"), pytest.raises(DivergenceError) as error:
        advance(field, BURGERS)
    assert error.value.cell == 0


def test_march_to_zero_time_returns_the_initial_field() -> None:
    field = ScalarField1D(build_grid_1d(0, 1, 10), np.linspace(0, 1, 10))
    solver = Solver1D(BURGERS)
    result = march(lambda state, stop: solver.step(state, t_final=stop), field, t_final=0.0)
    assert result.steps == 0
    assert result.state is field


def test_march_lands_on_the_final_time() -> None:
    field = ScalarField1D(build_grid_1d(0, 1, 10), np.linspace(0, 1, 10))
    solver = Solver1D(BURGERS)
    result = march(lambda state, stop: solver.step(state, t_final=stop), field, t_final=0.123)
    assert result.time == 0.123
    assert result.steps == len(result.residuals) > 1


def test_march_step_cap() -> None:
    field = ScalarField1D(build_grid_1d(0, 1, 10), np.linspace(0, 1, 10))
    solver = Solver1D(BURGERS)
    with pytest.raises(NonConvergenceError):
        march(
            lambda state, stop: solver.step(state, t_final=stop), field, t_final=10.0, max_steps=3
        )


def test_march_needs_an_end_condition() -> None:
    field = ScalarField1D(build_grid_1d(0, 1, 10), np.zeros(10))
    with pytest.raises(ConfigurationError):
        march(lambda state, stop: (state, 1.0), field)


def test_nothing_to_evolve_is_steady() -> None:
    field = ScalarField1D(build_grid_1d(0, 1, 10), np.zeros(10))
    solver = Solver1D(BURGERS, bc=BoundaryCondition.periodic())
    result = march(lambda state, stop: solver.step(state, t_final=stop), field, steady_tol=1e-10)
    assert result.steady
    assert result.steps == 0


def test_steady_run_warns_at_its_time_cap(recording_logger) -> None:
    field = ScalarField1D(build_grid_1d(0, 1, 10), np.linspace(0, 1, 10))
    solver = Solver1D(BURGERS, logger=recording_logger)
    result = march(
        lambda state, stop: solver.step(state, t_final=stop),
        field,
        steady_tol=1e-12,
        time_cap=0.05,
        logger=solver.logger,
        trace=True,
    )
    assert result.capped and result.time == 0.05
    assert len(recording_logger.messages("show")) == result.steps
    [warning] = recording_logger.messages("warning")
    assert warning.startswith("Steady run reached its time cap t=0.05 ")


def test_run_to_time_reaches_a_steady_boundary_layer() -> None:
    grid = build_grid_1d(0, 1, 20)
    config = RunConfig(scheme=SchemeKind.KFDS)
    model = FluxModel.linear_advection(1.0, nu=1.0)
    initial = ScalarField1D(grid, np.zeros(20))
    bc = BoundaryCondition.dirichlet(0.0, 1.0)
    result = run_to_time(config, model, initial, bc, steady=True, time_cap=50.0)
    assert result.steady
    assert result.last_residual < config.steady_tol
    assert np.all(np.diff(result.state.u) > 0.0)


def test_run_to_time_needs_a_final_time() -> None:
    field = ScalarField1D(build_grid_1d(0, 1, 10), np.zeros(10))
    with pytest.raises(ConfigurationError):
        run_to_time(RunConfig(), BURGERS, field)


def test_solver_rejects_bad_settings() -> None:
    with pytest.raises(ConfigurationError):
        Solver1D(BURGERS, SchemeKind.KFDS, mode=WaveSpeedMode.RH)
    with pytest.raises(ConfigurationError):
        Solver1D(BURGERS, cfl=1.5)


def test_viscous_solver_uses_the_gradient_ring() -> None:
    assert Solver1D(FluxModel.burgers(0.1)).width == 2
    assert Solver1D(BURGERS).width == 1
    assert Solver1D(BURGERS, SchemeKind.TVD_KFDS).width == 2
