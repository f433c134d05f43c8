#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Interface-flux kernels and the explicit time loop for 1D scalar conservation laws.

Kernels work along the last axis of padded arrays so that the shallow-water solver and the
2D sweeps reuse them unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, List, Optional, Tuple

import numpy as np
from pymate import LogIt

from fvbe.boundary import BoundaryCondition, BoundaryKind, pad_with_ghosts
from fvbe.exceptions import ConfigurationError, DivergenceError, NoEvolution, NonConvergenceError
from fvbe.field import ScalarField1D
from fvbe.flux_model import FluxModel
from fvbe.run_config import DEFAULT_CFL, MAX_STEPS, RunConfig
from fvbe.scheme_kind import SchemeKind, TvdSplit
from fvbe.wave_speed import (
    LAMBDA_FLOOR,
    WaveSpeedMode,
    lambda_ce,
    lambda_ce_local,
    lambda_hybrid,
    lambda_rh,
)

# Explicit diffusion bound dt <= VISCOUS_SAFETY * dx^2 / nu
VISCOUS_SAFETY = 0.4


# Kernels


def minmod(a, b) -> np.ndarray:
    """
    a if |a| <= |b|, b if |b| < |a|, 0 when the signs differ or one is zero.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    same_sign = np.sign(a) * np.sign(b) > 0.0
    return np.where(same_sign, np.where(np.abs(a) <= np.abs(b), a, b), 0.0)


def interface_flux_kfds(u_left, u_right, g_left, g_right, lam) -> np.ndarray:
    """
    First-order upwind flux 1/2 (gL + gR) - 1/2 lambda (uR - uL).
    """
    return 0.5 * (np.asarray(g_left) + np.asarray(g_right)) - 0.5 * np.asarray(lam) * (
        np.asarray(u_right) - np.asarray(u_left)
    )


def interface_flux_klw(u_left, u_right, g_left, g_right, lam, ratio: float) -> np.ndarray:
    """
    Kinetic Lax-Wendroff flux 1/2 (gL + gR) - 1/2 lambda^2 dt/dx (uR - uL).
    :param ratio: dt / dx, > 0.
    """
    if not ratio > 0.0:
        raise ConfigurationError(f"Time-step ratio must be > 0, got {ratio}.")
    lam = np.asarray(lam)
    return 0.5 * (np.asarray(g_left) + np.asarray(g_right)) - 0.5 * lam * lam * ratio * (
        np.asarray(u_right) - np.asarray(u_left)
    )


def _tvd_correction(
    du: np.ndarray, dg: np.ndarray, lam: np.ndarray, ratio: float, split: TvdSplit
) -> np.ndarray:
    """
    Limited correction at the interfaces 1 .. m-2 of m consecutive interface jumps.
    :param du: Jumps of u across each interface.
    :param dg: Jumps of g across each interface.
    :param lam: Lambda of each interface (same shape as du).
    :return: Correction added to the KFDS flux of the inner interfaces.
    """
    lam_c = lam[..., 1:-1]
    if split is TvdSplit.UPWIND:
        right_going = lam * du + dg
        left_going = lam * du - dg
        return (
            0.25
            * (1.0 - ratio * lam_c)
            * (
                minmod(right_going[..., 1:-1], right_going[..., :-2])
                + minmod(left_going[..., 1:-1], left_going[..., 2:])
            )
        )
    # Printed form, every jump weighted with the lambda of the centre interface
    common_c = (0.5 * ratio * lam_c * lam_c - 0.5 * lam_c) * du[..., 1:-1]
    common_m = (0.5 * ratio * lam_c * lam_c - 0.5 * lam_c) * du[..., :-2]
    common_p = (0.5 * ratio * lam_c * lam_c - 0.5 * lam_c) * du[..., 2:]
    a_c = common_c - 0.5 * dg[..., 1:-1]
    a_m = common_m - 0.5 * dg[..., :-2]
    b_c = common_c + 0.5 * dg[..., 1:-1]
    b_p = common_p + 0.5 * dg[..., 2:]
    return -0.5 * minmod(a_c, a_m) - 0.5 * minmod(b_c, b_p)


def interface_flux_tvd(
    u_stencil, g_stencil, lam, ratio: float, split: TvdSplit = TvdSplit.PRINTED
) -> np.ndarray:
    """
    Limited flux at j+1/2 from the four cells j-1 .. j+2.
    :param u_stencil: u_(j-1), u_j, u_(j+1), u_(j+2) (last axis).
    :param g_stencil: The matching fluxes.
    :param lam: Lambda, scalar or one per stencil interface (3 values).
    :param ratio: dt / dx with ratio * lambda <= 1.
    :param split: Correction form.
    :return: The flux.
    """
    u = np.asarray(u_stencil, dtype=float)
    g = np.asarray(g_stencil, dtype=float)
    if u.shape[-1] != 4 or g.shape != u.shape:
        raise ConfigurationError("TVD stencil needs four values and four fluxes.")
    du = np.diff(u, axis=-1)
    dg = np.diff(g, axis=-1)
    lam = np.broadcast_to(np.asarray(lam, dtype=float), du.shape)
    courant = ratio * lam[..., 1]
    if np.any(courant > 1.0 + 1e-12):
        raise ConfigurationError(f"TVD flux needs ratio * lambda <= 1, got {np.max(courant)}.")
    base = interface_flux_kfds(u[..., 1], u[..., 2], g[..., 1], g[..., 2], lam[..., 1])
    return base + _tvd_correction(du, dg, lam, ratio, split)[..., 0]


def viscous_interface_flux(gv_left_cell, gv_right_cell) -> np.ndarray:
    """
    Average of the diffusive fluxes of the two cells.
    """
    return 0.5 * (np.asarray(gv_left_cell) + np.asarray(gv_right_cell))


def ghost_width(scheme: SchemeKind, nu: float) -> int:
    """
    Ghost cells per side needed by a scheme: two for the TVD stencil or the viscous gradient ring.
    """
    return 2 if scheme.is_tvd or nu > 0.0 else 1


def interface_fluxes(
    u_pad: np.ndarray,
    g_pad: np.ndarray,
    lam: np.ndarray,
    ratio: float,
    scheme: SchemeKind,
    width: int,
    split: TvdSplit = TvdSplit.PRINTED,
) -> np.ndarray:
    """
    Convective fluxes at the n+1 interfaces of the interior cells.
    :param u_pad: Padded values, cells along the last axis (n + 2 * width).
    :param g_pad: Physical fluxes of the padded values.
    :param lam: Lambda at each padded interface (n + 2 * width - 1 along the last axis).
    :param ratio: dt / dx.
    :param scheme: Flux scheme.
    :param width: Ghost width of u_pad.
    :param split: TVD correction form.
    :return: Fluxes from the left boundary to the right boundary.
    """
    n = u_pad.shape[-1] - 2 * width
    lam = np.broadcast_to(lam, u_pad.shape[:-1] + (u_pad.shape[-1] - 1,))
    du = np.diff(u_pad, axis=-1)
    inner = slice(width - 1, width + n)
    g_mean = 0.5 * (g_pad[..., :-1] + g_pad[..., 1:])
    lam_i = lam[..., inner]
    if scheme is SchemeKind.KLW:
        return g_mean[..., inner] - 0.5 * lam_i * lam_i * ratio * du[..., inner]
    flux = g_mean[..., inner] - 0.5 * lam_i * du[..., inner]
    if scheme.is_tvd:
        if width < 2:
            raise ConfigurationError("TVD fluxes need two ghost cells per side.")
        dg = np.diff(g_pad, axis=-1)
        outer = slice(width - 2, width + n + 1)
        flux = flux + _tvd_correction(du[..., outer], dg[..., outer], lam[..., outer], ratio, split)
    return flux


def interface_speeds(
    u_pad: np.ndarray,
    model: FluxModel,
    scheme: SchemeKind,
    mode: WaveSpeedMode,
    axis: int = 0,
    global_ce: Optional[float] = None,
) -> np.ndarray:
    """
    Lambda at every padded interface.

    KFDS and KFDS+ fall back on the global Chapman-Enskog bound, the second-order schemes on the
    bound of each interface stencil.
    :param u_pad: Padded values.
    :param model: Flux model.
    :param scheme: Flux scheme.
    :param mode: Wave-speed mode, already checked against the scheme.
    :param axis: Direction of the flux.
    :param global_ce: Global bound to use, computed from u_pad when None.
    :return: Lambda, n + 2 * width - 1 along the last axis.
    """
    u_left = u_pad[..., :-1]
    u_right = u_pad[..., 1:]
    if mode is WaveSpeedMode.RH:
        return lambda_rh(u_left, u_right, model, axis)
    if scheme in (SchemeKind.KFDS, SchemeKind.KFDS_PLUS):
        ce = lambda_ce(u_pad, model, axis) if global_ce is None else global_ce
        fallback = np.full(u_left.shape, ce)
    else:
        fallback = lambda_ce_local(u_left, u_right, model, axis)
    if mode is WaveSpeedMode.HYBRID:
        return lambda_hybrid(u_left, u_right, model, fallback, axis)
    return fallback


def cell_gradients(u_pad: np.ndarray, dx: float, width: int, bc: BoundaryCondition) -> np.ndarray:
    """
    Gradients of the interior cells and of the ghost ring around them.

    Interior cells use central differences. A ghost cell uses the central difference on periodic
    sides and the one-sided difference towards the interior otherwise.
    :param u_pad: Padded values (width 2).
    :return: n + 2 gradients along the last axis.
    """
    if width < 2:
        raise ConfigurationError("Viscous fluxes need two ghost cells per side.")
    n = u_pad.shape[-1] - 2 * width
    ring = u_pad[..., width - 2 : width + n + 2]
    grad = (ring[..., 2:] - ring[..., :-2]) / (2.0 * dx)
    if bc.left.kind is not BoundaryKind.PERIODIC:
        grad[..., 0] = (ring[..., 2] - ring[..., 1]) / dx
    if bc.right.kind is not BoundaryKind.PERIODIC:
        grad[..., -1] = (ring[..., -2] - ring[..., -3]) / dx
    return grad


def viscous_fluxes(u_pad: np.ndarray, nu: float, dx: float, width: int, bc: BoundaryCondition) -> np.ndarray:
    """
    Diffusive fluxes nu u_x at the n+1 interior interfaces.
    """
    gv = nu * cell_gradients(u_pad, dx, width, bc)
    return viscous_interface_flux(gv[..., :-1], gv[..., 1:])


def stable_dt(lambda_max: float, dx: float, cfl: float, nu: float = 0.0) -> float:
    """
    Largest stable explicit time step.
    :param lambda_max: Largest wave speed.
    :param dx: Cell width.
    :param cfl: Courant number in (0, 1].
    :param nu: Diffusion coefficient.
    :return: min(cfl dx / lambda, 0.4 dx^2 / nu), each bound skipped when it does not apply.
    """
    if not dx > 0.0:
        raise ConfigurationError(f"Cell width must be > 0, got {dx}.")
    if not 0.0 < cfl <= 1.0:
        raise ConfigurationError(f"CFL number must lie in (0, 1], got {cfl}.")
    moving = lambda_max > LAMBDA_FLOOR
    if not moving and nu <= 0.0:
        raise NoEvolution("Zero wave speed and zero diffusion: nothing evolves.")
    dt = math.inf
    if moving:
        dt = cfl * dx / lambda_max
    if nu > 0.0:
        dt = min(dt, VISCOUS_SAFETY * dx * dx / nu)
    return dt


def total_variation(u) -> float:
    """
    Sum of |u_(j+1) - u_j| along the last axis.
    """
    return float(np.sum(np.abs(np.diff(np.asarray(u, dtype=float), axis=-1))))


def check_finite(values: np.ndarray, coordinates: Callable[[int], Any], time: float) -> None:
    """
    Raise DivergenceError on the first non-finite value.
    :param values: New values.
    :param coordinates: Maps a flat index to the cell position.
    :param time: Time level of the values.
    """
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        cell = int(bad[0])
        raise DivergenceError(cell, coordinates(cell), time)


def clip_to_final(dt: float, t: float, t_final: Optional[float]) -> Tuple[float, bool]:
    """
    Shorten dt so the step lands on t_final.
    :return: (dt, landed).
    """
    if t_final is not None and t + dt >= t_final:
        return t_final - t, True
    return dt, False


# Solver


@dataclass
class Solver1D:
    """
    Explicit finite-volume solver for u_t + g(u)_x = nu u_xx.
    """

    # Attributes

    model: FluxModel = field(metadata={"help": "Flux model."})
    scheme: SchemeKind = field(default=SchemeKind.KFDS, metadata={"help": "Interface flux scheme."})
    bc: BoundaryCondition = field(default_factory=BoundaryCondition.extrapolation, metadata={"help": "Boundary condition."})
    mode: Optional[WaveSpeedMode] = field(default=None, metadata={"help": "Wave-speed mode, scheme default when None."})
    cfl: float = field(default=DEFAULT_CFL, metadata={"help": "Courant number."})
    tvd_split: TvdSplit = field(default=TvdSplit.PRINTED, metadata={"help": "TVD correction form."})
    logger: LogIt = field(default_factory=LogIt, repr=False, metadata={"help": "The logger."})

    # Special methods

    # - Initialization and deletion

    def __post_init__(self) -> None:
        self.mode = self.scheme.resolve_mode(self.mode)
        if not 0.0 < self.cfl <= 1.0:
            raise ConfigurationError(f"CFL number must lie in (0, 1], got {self.cfl}.")

    # Public methods

    @property
    def width(self) -> int:
        return ghost_width(self.scheme, self.model.nu)

    def speeds(self, u_pad: np.ndarray) -> np.ndarray:
        assert self.mode is not None
        return interface_speeds(u_pad, self.model, self.scheme, self.mode)

    def time_step(self, field: ScalarField1D, u_pad: np.ndarray, lam: np.ndarray) -> float:
        """
        Stable dt for the current state.
        """
        lambda_max = max(lambda_ce(u_pad, self.model), float(np.max(lam)))
        return stable_dt(lambda_max, field.grid.dx, self.cfl, self.model.nu)

    def step(
        self, field: ScalarField1D, dt: Optional[float] = None, t_final: Optional[float] = None
    ) -> Tuple[ScalarField1D, float]:
        """
        Advance one time step.
        :param field: Current field.
        :param dt: Forced time step, the stable one when None.
        :param t_final: Time the step must not overshoot.
        :return: The new field and the dt used.
        """
        width = self.width
        u_pad = pad_with_ghosts(field, self.bc, width)
        lam = self.speeds(u_pad)
        if dt is None:
            dt = self.time_step(field, u_pad, lam)
        dt, landed = clip_to_final(dt, field.t, t_final)
        dx = field.grid.dx
        ratio = dt / dx
        flux = interface_fluxes(
            u_pad, self.model.g(u_pad), lam, ratio, self.scheme, width, self.tvd_split
        )
        if self.model.is_viscous:
            flux = flux - viscous_fluxes(u_pad, self.model.nu, dx, width, self.bc)
        u_new = field.u - ratio * np.diff(flux)
        t_new = t_final if landed else field.t + dt
        check_finite(u_new, lambda cell: float(field.grid.centers[cell]), t_new)
        return ScalarField1D(field.grid, u_new, t_new), dt


def advance(
    field: ScalarField1D,
    model: FluxModel,
    scheme: SchemeKind = SchemeKind.KFDS,
    bc: Optional[BoundaryCondition] = None,
    mode: Optional[WaveSpeedMode] = None,
    cfl: float = DEFAULT_CFL,
    dt: Optional[float] = None,
    t_final: Optional[float] = None,
    tvd_split: TvdSplit = TvdSplit.PRINTED,
) -> ScalarField1D:
    """
    Advance a 1D scalar field by one time step.
    :param field: Current field.
    :param model: Flux model.
    :param scheme: Flux scheme.
    :param bc: Boundary condition, extrapolation when None.
    :param mode: Wave-speed mode, scheme default when None.
    :param cfl: Courant number.
    :param dt: Forced time step, steps beyond cfl = 1 are allowed.
    :param t_final: Time the step must not overshoot.
    :param tvd_split: TVD correction form.
    :return: The field at t + dt.
    """
    solver = Solver1D(
        model, scheme, bc or BoundaryCondition.extrapolation(), mode, cfl, tvd_split
    )
    return solver.step(field, dt, t_final)[0]


# Time loop


@dataclass
class MarchResult:
    """
    Outcome of a time loop.
    """

    # Attributes

    state: Any = field(metadata={"help": "Final state."})
    steps: int = field(default=0, metadata={"help": "Steps taken."})
    residuals: List[float] = field(default_factory=list, metadata={"help": "max |du| / dt of every step."})
    steady: bool = field(default=False, metadata={"help": "Stopped on the residual criterion."})
    capped: bool = field(default=False, metadata={"help": "Steady run stopped at its time cap."})

    # Public methods

    @property
    def time(self) -> float:
        return float(self.state.t)

    @property
    def last_residual(self) -> Optional[float]:
        return self.residuals[-1] if self.residuals else None


def march(
    stepper: Callable[[Any, Optional[float]], Tuple[Any, float]],
    initial: Any,
    t_final: Optional[float] = None,
    steady_tol: Optional[float] = None,
    time_cap: Optional[float] = None,
    max_steps: int = MAX_STEPS,
    values: Callable[[Any], np.ndarray] = lambda state: state.u,
    logger: Optional[LogIt] = None,
    trace: bool = False,
) -> MarchResult:
    """
    Repeat a stepper up to a final time, or until the residual falls below steady_tol.
    :param stepper: (state, t_final) -> (new state, dt).
    :param initial: Initial state, with attribute t.
    :param t_final: Final time of a transient run.
    :param steady_tol: Residual ending a steady run (t_final None).
    :param time_cap: Time at which a steady run gives up.
    :param max_steps: Step cap.
    :param values: Array view of a state used for the residual.
    :param logger: The logger.
    :param trace: Show one line per step.
    :return: The result.
    """
    logger = logger or LogIt()
    if t_final is None and steady_tol is None:
        raise ConfigurationError("A run needs a final time or a steady tolerance.")
    stop = t_final if t_final is not None else time_cap
    result = MarchResult(initial)
    state = initial
    while stop is None or state.t < stop:
        if result.steps >= max_steps:
            raise NonConvergenceError(f"Step cap {max_steps} reached at t={state.t:.6g}.")
        try:
            new_state, dt = stepper(state, stop)
        except NoEvolution:
            logger.info(f"Nothing evolves at t={state.t:.6g}, state is steady.")
            result.steady = t_final is None
            break
        residual = float(np.max(np.abs(values(new_state) - values(state)))) / dt if dt > 0 else 0.0
        result.steps += 1
        result.residuals.append(residual)
        state = new_state
        if trace:
            logger.show(f"step={result.steps} t={state.t:.8g} dt={dt:.3e} residual={residual:.3e}")
        if t_final is None and residual < steady_tol:
            result.steady = True
            break
    else:
        if t_final is None:
            result.capped = True
            logger.warning(
                f"Steady run reached its time cap t={stop:.6g} with residual {result.last_residual or 0.0:.3e}."
            )
    result.state = state
    return result


def run_to_time(
    config: RunConfig,
    model: FluxModel,
    initial: ScalarField1D,
    bc: Optional[BoundaryCondition] = None,
    steady: bool = False,
    time_cap: Optional[float] = None,
    logger: Optional[LogIt] = None,
    verbose: bool = False,
    trace: bool = False,
) -> MarchResult:
    """
    March a 1D scalar field with the settings of a run configuration.
    :param config: Scheme, mode, cfl, final time, tolerance and step cap.
    :param model: Flux model.
    :param initial: Initial field.
    :param bc: Boundary condition, extrapolation when None.
    :param steady: Stop on the residual instead of a final time (used when config.t_final is None).
    :param time_cap: Time at which a steady run gives up.
    :param logger: The logger.
    :param verbose: Report the end of the run.
    :param trace: Show one line per step.
    :return: The final field and the step log.
    """
    solver = Solver1D(
        model,
        config.scheme,
        bc or BoundaryCondition.extrapolation(),
        config.mode,
        config.cfl,
        config.tvd_split,
        logger=logger or LogIt(),
    )
    t_final = config.t_final
    if t_final is None and not steady:
        raise ConfigurationError("Transient run needs a final time.")
    result = march(
        lambda state, stop: solver.step(state, t_final=stop),
        initial,
        t_final=t_final,
        steady_tol=config.steady_tol if t_final is None else None,
        time_cap=time_cap,
        max_steps=config.max_steps,
        logger=solver.logger,
        trace=trace,
    )
    if verbose:
        name = config.scheme.display_name(config.wave_speed_mode)
        solver.logger.info(f"{name} finished at t={result.time:.6g} after {result.steps} steps.")
    return result


__all__ = [
    "VISCOUS_SAFETY",
    "minmod",
    "interface_flux_kfds",
    "interface_flux_klw",
    "interface_flux_tvd",
    "viscous_interface_flux",
    "ghost_width",
    "interface_fluxes",
    "interface_speeds",
    "cell_gradients",
    "viscous_fluxes",
    "stable_dt",
    "total_variation",
    "check_finite",
    "clip_to_final",
    "Solver1D",
    "advance",
    "MarchResult",
    "march",
    "run_to_time",
]
