#!/usr/bin/env python
# -*- coding: utf-8 -*-

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from fvbe.exceptions import ConfigurationError, StateError
from fvbe.grid import Grid1D, Grid2D


def _first_bad_cell(values: np.ndarray) -> int:
    """
    Flat index of the first non-finite value, -1 when all are finite.
    """
    bad = np.flatnonzero(~np.isfinite(values))
    return int(bad[0]) if bad.size else -1


@dataclass
class ScalarField1D:
    """
    Cell averages of a scalar on a 1D grid at time t.
    """

    # Attributes

    grid: Grid1D = field(metadata={"help": "The grid."})
    u: np.ndarray = field(metadata={"help": "Cell averages, one per cell."})
    t: float = field(default=0.0, metadata={"help": "Time level."})

    # Special methods

    # - Initialization and deletion

    def __post_init__(self) -> None:
        """
        Copies the values to a float array and checks their shape and finiteness.
        """
        self.u = np.array(self.u, dtype=float)
        if self.u.shape != (self.grid.n_cells,):
            raise ConfigurationError(
                f"Field has shape {self.u.shape}, grid expects ({self.grid.n_cells},)."
            )
        bad = _first_bad_cell(self.u)
        if bad >= 0:
            raise StateError(f"Field value {self.u[bad]} in cell {bad} is not finite.")

    # Public methods

    @property
    def x(self) -> np.ndarray:
        return self.grid.centers

    def total(self) -> float:
        """
        Discrete integral sum(u) * dx.
        """
        return float(np.sum(self.u) * self.grid.dx)

    def copy(self) -> "ScalarField1D":
        return ScalarField1D(self.grid, self.u.copy(), self.t)

    @classmethod
    def from_function(cls, grid: Grid1D, function, t: float = 0.0) -> "ScalarField1D":
        """
        Sample a function at the cell centres.
        :param grid: The grid.
        :param function: Vectorised u0(x).
        :param t: Time level.
        :return: The field.
        """
        values = np.broadcast_to(np.asarray(function(grid.centers), dtype=float), grid.centers.shape)
        return cls(grid, values, t)


@dataclass
class Field2D:
    """
    Conserved variables on a Cartesian grid, stored as (n_vars, n_x, n_y).
    """

    # Attributes

    grid: Grid2D = field(metadata={"help": "The grid."})
    values: np.ndarray = field(metadata={"help": "Cell averages with shape (n_vars, n_x, n_y)."})
    t: float = field(default=0.0, metadata={"help": "Time level."})
    names: Sequence[str] = field(default=("u",), metadata={"help": "Variable names, one per component."})

    # Special methods

    # - Initialization and deletion

    def __post_init__(self) -> None:
        """
        Promotes a bare (n_x, n_y) array to one component and validates the layout.
        """
        values = np.array(self.values, dtype=float)
        if values.ndim == 2:
            values = values[np.newaxis]
        if values.ndim != 3 or values.shape[1:] != self.grid.shape:
            raise ConfigurationError(
                f"Field has shape {values.shape}, grid expects (n_vars, {self.grid.n_x}, {self.grid.n_y})."
            )
        self.names = tuple(self.names)
        if len(self.names) != values.shape[0]:
            raise ConfigurationError(f"{len(self.names)} names given for {values.shape[0]} variables.")
        bad = _first_bad_cell(values)
        if bad >= 0:
            raise StateError(f"Field value {values.flat[bad]} at flat index {bad} is not finite.")
        if self.is_swe and np.any(values[0] < 0.0):
            raise StateError(f"Negative depth {values[0].min():.6g} in shallow-water field.")
        self.values = values

    # Public methods

    @property
    def n_vars(self) -> int:
        return self.values.shape[0]

    @property
    def is_swe(self) -> bool:
        return tuple(self.names) == ("h", "hu", "hv")

    @property
    def u(self) -> np.ndarray:
        """
        The first component as an (n_x, n_y) array.
        """
        return self.values[0]

    def total(self) -> np.ndarray:
        """
        Discrete integrals sum(U) * dA, one per component.
        """
        return np.sum(self.values, axis=(1, 2)) * self.grid.cell_area

    def copy(self) -> "Field2D":
        return Field2D(self.grid, self.values.copy(), self.t, self.names)

    @classmethod
    def scalar(cls, grid: Grid2D, function, t: float = 0.0) -> "Field2D":
        """
        Sample a scalar function u0(x, y) at the cell centres.
        """
        x, y = grid.mesh()
        values = np.broadcast_to(np.asarray(function(x, y), dtype=float), grid.shape)
        return cls(grid, values[np.newaxis], t, ("u",))

    @classmethod
    def shallow_water(cls, grid: Grid2D, h: np.ndarray, hu=0.0, hv=0.0, t: float = 0.0) -> "Field2D":
        """
        Build a (h, hu, hv) field.
        """
        shape = grid.shape
        values = np.stack(
            [np.broadcast_to(np.asarray(part, dtype=float), shape) for part in (h, hu, hv)]
        )
        return cls(grid, values, t, ("h", "hu", "hv"))


__all__ = ["ScalarField1D", "Field2D"]
