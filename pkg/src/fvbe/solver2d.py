#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Two-dimensional finite-volume advance on Cartesian grids.

Each step sums the face fluxes of both axes. The faces normal to x are handled by reusing the
1D kernels along the rows of the transposed field, the faces normal to y along the columns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np
from pymate import LogIt

from fvbe.boundary import BoundaryCondition, BoundaryCondition2D, ghost_centers, pad_array
from fvbe.exceptions import ConfigurationError, NoEvolution, PositivityError, StateError
from fvbe.field import Field2D
from fvbe.flux_model import FluxModel
from fvbe.grid import Grid1D
from fvbe.run_config import DEFAULT_CFL
from fvbe.scheme_kind import SchemeKind, TvdSplit
from fvbe.solver1d import (
    VISCOUS_SAFETY,
    check_finite,
    clip_to_final,
    ghost_width,
    interface_fluxes,
    interface_speeds,
    viscous_fluxes,
)
from fvbe.swe1d import DRY_DEPTH, DRY_DIVISOR, GRAVITY
from fvbe.wave_speed import LAMBDA_FLOOR, WaveSpeedMode, lambda_ce, lambda_swe, shock_indicator

AXIS_NORMALS = {(1, 0): (0, 1.0), (-1, 0): (0, -1.0), (0, 1): (1, 1.0), (0, -1): (1, -1.0)}

# Component order (h, normal discharge, tangential discharge) of each sweep
_SWE_ORDER = {0: [0, 1, 2], 1: [0, 2, 1]}


@dataclass(frozen=True)
class ShallowWaterFlux:
    """
    Flux vectors of the 2D shallow-water system on (h, hu, hv).
    """

    gravity: float = field(default=GRAVITY, metadata={"help": "Acceleration of gravity."})

    def flux(self, values: np.ndarray, axis: int = 0) -> np.ndarray:
        """
        G1 = (hu, hu^2/h + g h^2/2, huv/h) or G2 = (hv, huv/h, hv^2/h + g h^2/2).
        :param values: Stacked (h, hu, hv).
        :param axis: 0 for x, 1 for y.
        :return: The flux, same shape as values.
        """
        order = _SWE_ORDER[axis]
        rotated = np.asarray(values, dtype=float)[order]
        return _normal_swe_flux(rotated, self.gravity)[order]


def _normal_swe_flux(values: np.ndarray, gravity: float) -> np.ndarray:
    """
    Flux along the normal of (h, normal discharge, tangential discharge).
    """
    h, q_n, q_t = values[0], values[1], values[2]
    if np.any(h < 0.0):
        raise StateError(f"Negative depth {float(np.min(h)):.6g} has no flux.")
    depth = np.maximum(h, DRY_DIVISOR)
    return np.stack([q_n, q_n * q_n / depth + 0.5 * gravity * h * h, q_n * q_t / depth])


def normal_interface_flux_2d(u_left, u_right, normal: Tuple[int, int], lam, model) -> np.ndarray:
    """
    KFDS flux through an axis-aligned face: 1/2 (G_n(UL) + G_n(UR)) - 1/2 lambda (UR - UL).
    :param u_left: State on the owner side.
    :param u_right: State on the neighbour side.
    :param normal: Outward unit normal, one of (+-1, 0), (0, +-1).
    :param lam: Wave speed.
    :param model: Object with flux(values, axis), a FluxModel or ShallowWaterFlux.
    :return: Normal flux.
    """
    try:
        axis, sign = AXIS_NORMALS[tuple(normal)]
    except KeyError:
        raise ConfigurationError(f"Face normal must be axis aligned, got {normal}.") from None
    u_left = np.asarray(u_left, dtype=float)
    u_right = np.asarray(u_right, dtype=float)
    g_n = sign * (model.flux(u_left, axis) + model.flux(u_right, axis))
    return 0.5 * g_n - 0.5 * np.asarray(lam) * (u_right - u_left)


def stable_dt_2d(
    lambda_x: float, lambda_y: float, dx: float, dy: float, cfl: float, nu: float = 0.0
) -> float:
    """
    dt = min(cfl / (lambda_x/dx + lambda_y/dy), 0.4 / (nu (1/dx^2 + 1/dy^2))).
    """
    if not 0.0 < cfl <= 1.0:
        raise ConfigurationError(f"CFL number must lie in (0, 1], got {cfl}.")
    moving = max(lambda_x, lambda_y) > LAMBDA_FLOOR
    if not moving and nu <= 0.0:
        raise NoEvolution("Zero wave speed and zero diffusion: nothing evolves.")
    dt = cfl / (lambda_x / dx + lambda_y / dy) if moving else math.inf
    if nu > 0.0:
        dt = min(dt, VISCOUS_SAFETY / (nu * (1.0 / (dx * dx) + 1.0 / (dy * dy))))
    return dt


def _pad_sweep(
    values: np.ndarray,
    bc: BoundaryCondition,
    axis_grid: Grid1D,
    across: np.ndarray,
    axis: int,
    width: int,
    t: float,
    odd: Sequence[int] = (),
) -> np.ndarray:
    """
    Pad a sweep array (n_vars, n_across, n_along) along its last axis.

    Function-valued Dirichlet sides receive (x, y, t) at the ghost centres.
    """
    left, right = ghost_centers(axis_grid, width)
    shape = (across.size, width)
    along_lower = np.broadcast_to(left, shape)
    along_upper = np.broadcast_to(right, shape)
    across_block = np.broadcast_to(across[:, np.newaxis], shape)
    if axis == 0:
        lower, upper = (along_lower, across_block), (along_upper, across_block)
    else:
        lower, upper = (across_block, along_lower), (across_block, along_upper)
    return pad_array(values, bc, width, t, lower, upper, odd)


def _swe_speeds(u_pad: np.ndarray, gravity: float, mode: WaveSpeedMode) -> Tuple[np.ndarray, float]:
    """
    Lambda of the three equations at each padded interface of a sweep, and the largest
    Chapman-Enskog bound.

    RH gives the depth |u_nL - a_L|, the normal discharge |u_nL + a_L| and the tangential
    discharge |u_nL|.
    """
    h_left, h_right = u_pad[0, ..., :-1], u_pad[0, ..., 1:]
    q_left, q_right = u_pad[1, ..., :-1], u_pad[1, ..., 1:]
    bound = lambda_swe(h_left, q_left, h_right, q_right, gravity, WaveSpeedMode.CE)[0]
    bound_max = float(np.max(bound)) if bound.size else 0.0
    if mode is WaveSpeedMode.CE:
        return np.stack([bound, bound, bound]), bound_max
    rh_1, rh_2 = lambda_swe(h_left, q_left, h_right, q_right, gravity, WaveSpeedMode.RH)
    velocity = np.where(h_left < DRY_DEPTH, 0.0, q_left / np.maximum(h_left, DRY_DEPTH))
    rh = np.stack([rh_1, rh_2, np.abs(velocity)])
    if mode is WaveSpeedMode.RH:
        return rh, bound_max
    a_left = np.sqrt(gravity * h_left)
    a_right = np.sqrt(gravity * h_right)
    v_right = np.where(h_right < DRY_DEPTH, 0.0, q_right / np.maximum(h_right, DRY_DEPTH))
    shock = shock_indicator(velocity - a_left, v_right - a_right) | shock_indicator(
        velocity + a_left, v_right + a_right
    )
    return np.where(shock, rh, bound), bound_max


@dataclass
class Solver2D:
    """
    Explicit solver for 2D scalar convection-diffusion and 2D shallow water.
    """

    # Attributes

    model: Optional[FluxModel] = field(default=None, metadata={"help": "Scalar model, None for shallow water."})
    scheme: SchemeKind = field(default=SchemeKind.KFDS, metadata={"help": "Interface flux scheme."})
    bc: BoundaryCondition2D = field(
        default_factory=lambda: BoundaryCondition2D.uniform(BoundaryCondition.extrapolation()),
        metadata={"help": "Boundary conditions of both axes."},
    )
    mode: Optional[WaveSpeedMode] = field(default=None, metadata={"help": "Wave-speed mode, scheme default when None."})
    cfl: float = field(default=DEFAULT_CFL, metadata={"help": "Courant number."})
    tvd_split: TvdSplit = field(default=TvdSplit.PRINTED, metadata={"help": "TVD correction form."})
    gravity: float = field(default=GRAVITY, metadata={"help": "Gravity of the shallow-water system."})
    logger: LogIt = field(default_factory=LogIt, repr=False, metadata={"help": "The logger."})

    # Special methods

    # - Initialization and deletion

    def __post_init__(self) -> None:
        self.mode = self.scheme.resolve_mode(self.mode)
        if not 0.0 < self.cfl <= 1.0:
            raise ConfigurationError(f"CFL number must lie in (0, 1], got {self.cfl}.")
        if self.model is not None and not self.model.is_2d:
            raise ConfigurationError(f"Model {self.model.name} has no y flux.")

    # Private methods

    def _scalar_fluxes(self, field: Field2D, dt: Optional[float], t_final: Optional[float]):
        assert self.model is not None and self.mode is not None
        model, grid = self.model, field.grid
        width = ghost_width(self.scheme, model.nu)
        pad_x = _pad_sweep(
            field.values.transpose(0, 2, 1), self.bc.x, grid.x_axis, grid.y_centers, 0, width, field.t
        )
        pad_y = _pad_sweep(field.values, self.bc.y, grid.y_axis, grid.x_centers, 1, width, field.t)
        ce_x = lambda_ce(pad_x, model, 0)
        ce_y = lambda_ce(pad_y, model, 1)
        lam_x = interface_speeds(pad_x, model, self.scheme, self.mode, 0, ce_x)
        lam_y = interface_speeds(pad_y, model, self.scheme, self.mode, 1, ce_y)
        if dt is None:
            dt = stable_dt_2d(
                max(ce_x, float(np.max(lam_x))),
                max(ce_y, float(np.max(lam_y))),
                grid.dx,
                grid.dy,
                self.cfl,
                model.nu,
            )
        dt, landed = clip_to_final(dt, field.t, t_final)
        ratio_x, ratio_y = dt / grid.dx, dt / grid.dy
        split = self.tvd_split
        flux_x = interface_fluxes(pad_x, model.flux(pad_x, 0), lam_x, ratio_x, self.scheme, width, split)
        flux_y = interface_fluxes(pad_y, model.flux(pad_y, 1), lam_y, ratio_y, self.scheme, width, split)
        if model.is_viscous:
            flux_x = flux_x - viscous_fluxes(pad_x, model.nu, grid.dx, width, self.bc.x)
            flux_y = flux_y - viscous_fluxes(pad_y, model.nu, grid.dy, width, self.bc.y)
        return flux_x, flux_y, dt, landed

    def _swe_fluxes(self, field: Field2D, dt: Optional[float], t_final: Optional[float]):
        assert self.mode is not None
        grid = field.grid
        width = ghost_width(self.scheme, 0.0)
        values = field.values.copy()
        dry = values[0] < DRY_DEPTH
        values[1][dry] = 0.0
        values[2][dry] = 0.0
        sweeps = []
        for axis in (0, 1):
            rotated = values[_SWE_ORDER[axis]]
            if axis == 0:
                rotated = rotated.transpose(0, 2, 1)
                pad = _pad_sweep(rotated, self.bc.x, grid.x_axis, grid.y_centers, 0, width, field.t, (1,))
            else:
                pad = _pad_sweep(rotated, self.bc.y, grid.y_axis, grid.x_centers, 1, width, field.t, (1,))
            if np.any(pad[0] < 0.0):
                raise StateError("Boundary data gives a negative ghost depth.")
            lam, bound = _swe_speeds(pad, self.gravity, self.mode)
            sweeps.append((pad, lam, max(bound, float(np.max(lam)))))
        if dt is None:
            dt = stable_dt_2d(sweeps[0][2], sweeps[1][2], grid.dx, grid.dy, self.cfl)
        dt, landed = clip_to_final(dt, field.t, t_final)
        fluxes = []
        for axis, (pad, lam, _) in enumerate(sweeps):
            ratio = dt / (grid.dx if axis == 0 else grid.dy)
            flux = interface_fluxes(
                pad, _normal_swe_flux(pad, self.gravity), lam, ratio, self.scheme, width, self.tvd_split
            )
            fluxes.append(flux[_SWE_ORDER[axis]])
        return fluxes[0], fluxes[1], dt, landed

    # Public methods

    def step(
        self, field: Field2D, dt: Optional[float] = None, t_final: Optional[float] = None
    ) -> Tuple[Field2D, float]:
        """
        Advance one time step.
        :param field: Current field.
        :param dt: Forced time step, the stable one when None.
        :param t_final: Time the step must not overshoot.
        :return: The new field and the dt used.
        """
        grid = field.grid
        if self.model is None:
            if not field.is_swe:
                raise ConfigurationError("Shallow-water solver needs an (h, hu, hv) field.")
            flux_x, flux_y, dt, landed = self._swe_fluxes(field, dt, t_final)
        else:
            if field.n_vars != 1:
                raise ConfigurationError("Scalar solver needs a one-component field.")
            flux_x, flux_y, dt, landed = self._scalar_fluxes(field, dt, t_final)
        jump_x = np.diff(flux_x, axis=-1).transpose(0, 2, 1)
        jump_y = np.diff(flux_y, axis=-1)
        values = (field.values - (dt / grid.dx) * jump_x) - (dt / grid.dy) * jump_y
        t_new = t_final if landed else field.t + dt

        def position(cell: int):
            i, k = np.unravel_index(cell % (grid.n_x * grid.n_y), grid.shape)
            return (float(grid.x_centers[i]), float(grid.y_centers[k]))

        check_finite(values, position, t_new)
        if self.model is None and np.any(values[0] < 0.0):
            cell = int(np.flatnonzero(values[0] < 0.0)[0])
            raise PositivityError(cell, t_new, float(values[0].flat[cell]))
        return Field2D(grid, values, t_new, field.names), dt


def advance_2d_scalar(
    field: Field2D,
    model: FluxModel,
    scheme: SchemeKind = SchemeKind.KFDS,
    bc: Optional[BoundaryCondition2D] = None,
    cfl: float = DEFAULT_CFL,
    mode: Optional[WaveSpeedMode] = None,
    dt: Optional[float] = None,
    t_final: Optional[float] = None,
    tvd_split: TvdSplit = TvdSplit.PRINTED,
) -> Field2D:
    """
    Advance a 2D scalar field by one time step.
    :return: The field at t + dt.
    """
    bc = bc or BoundaryCondition2D.uniform(BoundaryCondition.extrapolation())
    solver = Solver2D(model, scheme, bc, mode, cfl, tvd_split)
    return solver.step(field, dt, t_final)[0]


def advance_2d_swe(
    field: Field2D,
    scheme: SchemeKind = SchemeKind.KFDS,
    bc: Optional[BoundaryCondition2D] = None,
    cfl: float = DEFAULT_CFL,
    mode: Optional[WaveSpeedMode] = None,
    gravity: float = GRAVITY,
    dt: Optional[float] = None,
    t_final: Optional[float] = None,
    tvd_split: TvdSplit = TvdSplit.PRINTED,
) -> Field2D:
    """
    Advance a 2D shallow-water field (flat bed) by one time step.
    :return: The field at t + dt.
    """
    bc = bc or BoundaryCondition2D.uniform(BoundaryCondition.reflective())
    solver = Solver2D(None, scheme, bc, mode, cfl, tvd_split, gravity)
    return solver.step(field, dt, t_final)[0]


__all__ = [
    "ShallowWaterFlux",
    "normal_interface_flux_2d",
    "stable_dt_2d",
    "Solver2D",
    "advance_2d_scalar",
    "advance_2d_swe",
]
