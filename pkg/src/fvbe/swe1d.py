#!/usr/bin/env python
# -*- coding: utf-8 -*-
""" One-dimensional shallow water over a variable bed. """

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
from pymate import LogIt

from fvbe.boundary import BoundaryCondition, ghost_centers, pad_array
from fvbe.exceptions import ConfigurationError, PositivityError, StateError
from fvbe.grid import Grid1D
from fvbe.run_config import DEFAULT_CFL
from fvbe.scheme_kind import SchemeKind, TvdSplit
from fvbe.solver1d import check_finite, ghost_width, interface_fluxes, stable_dt
from fvbe.wave_speed import WaveSpeedMode, lambda_swe

GRAVITY = 9.81
# Depth used in place of h when dividing by it
DRY_DIVISOR = 1e-12
# Cells shallower than this carry no velocity
DRY_DEPTH = 1e-10
# Discharge component flipped by a reflective wall
_ODD = (1,)


def swe_physical_flux(h, hu, gravity: float = GRAVITY) -> Tuple[np.ndarray, np.ndarray]:
    """
    Flux vector (hu, hu^2/h + g h^2 / 2).
    :param h: Depths, >= 0.
    :param hu: Discharges.
    :param gravity: Acceleration of gravity.
    :return: Mass and momentum fluxes.
    """
    h = np.asarray(h, dtype=float)
    hu = np.asarray(hu, dtype=float)
    if np.any(h < 0.0):
        raise StateError(f"Negative depth {float(np.min(h)):.6g} has no flux.")
    momentum = hu * hu / np.maximum(h, DRY_DIVISOR) + 0.5 * gravity * h * h
    return hu.copy(), momentum


def well_balanced_source(h_minus, h_plus, b_jump, gravity: float, dx: float) -> np.ndarray:
    """
    Momentum source -g (h_(j-1/2) + h_(j+1/2)) / 2 * (b_(j+1/2) - b_(j-1/2)) / dx.
    :param h_minus: Depth at the left interface of each cell.
    :param h_plus: Depth at the right interface of each cell.
    :param b_jump: Bed jump across each cell.
    :param gravity: Acceleration of gravity.
    :param dx: Cell width.
    :return: Source per cell (the continuity source is zero).
    """
    mean_depth = 0.5 * (np.asarray(h_minus, dtype=float) + np.asarray(h_plus, dtype=float))
    return -gravity * mean_depth * np.asarray(b_jump, dtype=float) / dx


@dataclass
class SweState:
    """
    Depth and discharge per cell over a bed profile.
    """

    # Attributes

    grid: Grid1D = field(metadata={"help": "The grid."})
    h: np.ndarray = field(metadata={"help": "Depth per cell (m)."})
    hu: np.ndarray = field(metadata={"help": "Discharge per cell (m^2/s)."})
    bed: np.ndarray = field(metadata={"help": "Bed elevation at the cell centres (m)."})
    gravity: float = field(default=GRAVITY, metadata={"help": "Acceleration of gravity (m/s^2)."})
    t: float = field(default=0.0, metadata={"help": "Time level."})

    # Special methods

    # - Initialization and deletion

    def __post_init__(self) -> None:
        """
        Broadcasts scalars to the grid and checks depth and finiteness.
        """
        shape = (self.grid.n_cells,)
        self.h = np.array(np.broadcast_to(np.asarray(self.h, dtype=float), shape))
        self.hu = np.array(np.broadcast_to(np.asarray(self.hu, dtype=float), shape))
        self.bed = np.array(np.broadcast_to(np.asarray(self.bed, dtype=float), shape))
        for name in ("h", "hu", "bed"):
            values = getattr(self, name)
            if not np.all(np.isfinite(values)):
                raise StateError(f"Shallow-water {name} holds non-finite values.")
        if np.any(self.h < 0.0):
            cell = int(np.argmin(self.h))
            raise StateError(f"Negative depth {self.h[cell]:.6g} in cell {cell}.")
        if not self.gravity > 0.0:
            raise ConfigurationError(f"Gravity must be > 0, got {self.gravity}.")

    # Public methods

    @property
    def values(self) -> np.ndarray:
        """
        Conserved variables as a (2, n) array.
        """
        return np.stack([self.h, self.hu])

    @property
    def velocity(self) -> np.ndarray:
        return np.where(self.h < DRY_DEPTH, 0.0, self.hu / np.maximum(self.h, DRY_DEPTH))

    @property
    def surface(self) -> np.ndarray:
        """
        Free-surface elevation h + b.
        """
        return self.h + self.bed

    @property
    def bed_interfaces(self) -> np.ndarray:
        """
        Bed at the n+1 interfaces, mean of the adjacent cells with the edge cell copied outside.
        """
        padded = np.concatenate([self.bed[:1], self.bed, self.bed[-1:]])
        return 0.5 * (padded[:-1] + padded[1:])

    def mass(self) -> float:
        return float(np.sum(self.h) * self.grid.dx)

    def with_values(self, values: np.ndarray, t: float) -> "SweState":
        return SweState(self.grid, values[0], values[1], self.bed, self.gravity, t)

    @classmethod
    def from_surface(cls, grid: Grid1D, surface, bed, hu=0.0, gravity: float = GRAVITY) -> "SweState":
        """
        Build a state from the free surface eta = h + b.
        """
        bed = np.broadcast_to(np.asarray(bed, dtype=float), (grid.n_cells,))
        h = np.broadcast_to(np.asarray(surface, dtype=float), (grid.n_cells,)) - bed
        return cls(grid, h, hu, bed, gravity)


@dataclass
class SweSolver:
    """
    Explicit finite-volume solver of the 1D shallow-water equations with bed source.
    """

    # Attributes

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
        return ghost_width(self.scheme, 0.0)

    def step(
        self, state: SweState, dt: Optional[float] = None, t_final: Optional[float] = None
    ) -> Tuple[SweState, float]:
        """
        Advance one time step.
        :param state: Current state.
        :param dt: Forced time step, the stable one when None.
        :param t_final: Time the step must not overshoot.
        :return: The new state and the dt used.
        """
        assert self.mode is not None
        width = self.width
        grid = state.grid
        # Dry cells carry no discharge
        hu = np.where(state.h < DRY_DEPTH, 0.0, state.hu)
        left, right = ghost_centers(grid, width)
        u_pad = pad_array(np.stack([state.h, hu]), self.bc, width, state.t, (left,), (right,), _ODD)
        if np.any(u_pad[0] < 0.0):
            raise StateError("Boundary data gives a negative ghost depth.")
        g_pad = np.stack(swe_physical_flux(u_pad[0], u_pad[1], state.gravity))
        h_left, h_right = u_pad[0, :-1], u_pad[0, 1:]
        hu_left, hu_right = u_pad[1, :-1], u_pad[1, 1:]
        lam = np.stack(lambda_swe(h_left, hu_left, h_right, hu_right, state.gravity, self.mode))
        if dt is None:
            bound = lambda_swe(h_left, hu_left, h_right, hu_right, state.gravity, WaveSpeedMode.CE)[0]
            dt = stable_dt(max(float(np.max(bound)), float(np.max(lam))), grid.dx, self.cfl)
        landed = t_final is not None and state.t + dt >= t_final
        if landed:
            dt = t_final - state.t
        ratio = dt / grid.dx
        flux = interface_fluxes(u_pad, g_pad, lam, ratio, self.scheme, width, self.tvd_split)
        # Well-balanced bed source on the momentum equation only
        inner = slice(width - 1, width + grid.n_cells)
        h_interface = 0.5 * (h_left + h_right)[inner]
        b_interface = state.bed_interfaces
        source = well_balanced_source(
            h_interface[:-1], h_interface[1:], np.diff(b_interface), state.gravity, grid.dx
        )
        values = state.values - ratio * np.diff(flux, axis=-1)
        values[1] += dt * source
        t_new = t_final if landed else state.t + dt
        check_finite(values, lambda cell: float(grid.centers[cell % grid.n_cells]), t_new)
        if np.any(values[0] < 0.0):
            cell = int(np.flatnonzero(values[0] < 0.0)[0])
            raise PositivityError(cell, t_new, float(values[0, cell]))
        return state.with_values(values, t_new), dt


def advance_swe(
    state: SweState,
    scheme: SchemeKind = SchemeKind.KFDS,
    bc: Optional[BoundaryCondition] = None,
    mode: Optional[WaveSpeedMode] = None,
    cfl: float = DEFAULT_CFL,
    dt: Optional[float] = None,
    t_final: Optional[float] = None,
    tvd_split: TvdSplit = TvdSplit.PRINTED,
) -> SweState:
    """
    Advance a shallow-water state by one time step.
    :return: The state at t + dt.
    """
    solver = SweSolver(scheme, bc or BoundaryCondition.extrapolation(), mode, cfl, tvd_split)
    return solver.step(state, dt, t_final)[0]


def lake_at_rest_diagnostic(
    state: SweState, scheme: SchemeKind = SchemeKind.KFDS, steps: int = 100, cfl: float = DEFAULT_CFL
) -> float:
    """
    Largest velocity that builds up from a lake at rest after a number of steps.
    :param state: Initial state, expected with constant h + b and zero discharge.
    :param scheme: Flux scheme.
    :param steps: Steps to take.
    :param cfl: Courant number.
    :return: max |u| after the steps.
    """
    solver = SweSolver(scheme, BoundaryCondition.extrapolation(), cfl=cfl)
    for _ in range(steps):
        state, _ = solver.step(state)
    return float(np.max(np.abs(state.velocity)))


__all__ = [
    "GRAVITY",
    "swe_physical_flux",
    "well_balanced_source",
    "SweState",
    "SweSolver",
    "advance_swe",
    "lake_at_rest_diagnostic",
]
