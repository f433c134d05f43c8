#!/usr/bin/env python
# -*- coding: utf-8 -*-

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from fvbe.exceptions import ConfigurationError

# Smallest grid the two-cell TVD stencil accepts on each side
MIN_CELLS = 4


@dataclass(frozen=True)
class Grid1D:
    """
    Uniform one-dimensional finite-volume grid.
    """

    # Attributes

    x_min: float = field(metadata={"help": "Left end of the domain."})
    x_max: float = field(metadata={"help": "Right end of the domain."})
    n_cells: int = field(metadata={"help": "Number of cells."})
    dx: float = field(init=False, compare=False, metadata={"help": "Cell width."})
    centers: np.ndarray = field(init=False, compare=False, repr=False, metadata={"help": "Cell centres."})

    # Special methods

    # - Initialization and deletion

    def __post_init__(self) -> None:
        """
        Validates the extents and derives the cell width and centres.
        """
        # Check the domain orientation
        if not self.x_max > self.x_min:
            raise ConfigurationError(f"Grid domain is inverted or empty: [{self.x_min}, {self.x_max}].")
        # Check the stencil minimum
        if int(self.n_cells) != self.n_cells or self.n_cells < MIN_CELLS:
            raise ConfigurationError(f"Grid needs at least {MIN_CELLS} cells, got {self.n_cells}.")
        dx = (self.x_max - self.x_min) / self.n_cells
        centers = self.x_min + (np.arange(self.n_cells) + 0.5) * dx
        centers.flags.writeable = False
        object.__setattr__(self, "dx", dx)
        object.__setattr__(self, "centers", centers)

    # Public methods

    @property
    def interfaces(self) -> np.ndarray:
        """
        The n_cells + 1 interface coordinates.
        :return: Interface positions from x_min to x_max.
        """
        return self.x_min + np.arange(self.n_cells + 1) * self.dx


@dataclass(frozen=True)
class Grid2D:
    """
    Uniform Cartesian grid. Arrays on this grid are indexed [i, k] with i along x and k along y.
    """

    # Attributes

    x_min: float = field(metadata={"help": "Lower x extent."})
    x_max: float = field(metadata={"help": "Upper x extent."})
    y_min: float = field(metadata={"help": "Lower y extent."})
    y_max: float = field(metadata={"help": "Upper y extent."})
    n_x: int = field(metadata={"help": "Cells along x."})
    n_y: int = field(metadata={"help": "Cells along y."})
    x_axis: Grid1D = field(init=False, compare=False, repr=False, metadata={"help": "The x axis."})
    y_axis: Grid1D = field(init=False, compare=False, repr=False, metadata={"help": "The y axis."})

    # Special methods

    # - Initialization and deletion

    def __post_init__(self) -> None:
        """
        Builds both axes, which validates the extents.
        """
        object.__setattr__(self, "x_axis", Grid1D(self.x_min, self.x_max, self.n_x))
        object.__setattr__(self, "y_axis", Grid1D(self.y_min, self.y_max, self.n_y))

    # Public methods

    @property
    def dx(self) -> float:
        return self.x_axis.dx

    @property
    def dy(self) -> float:
        return self.y_axis.dx

    @property
    def x_centers(self) -> np.ndarray:
        return self.x_axis.centers

    @property
    def y_centers(self) -> np.ndarray:
        return self.y_axis.centers

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_x, self.n_y)

    @property
    def cell_area(self) -> float:
        """
        Area A of every cell.
        """
        return self.dx * self.dy

    @property
    def face_lengths(self) -> tuple[float, float]:
        """
        Lengths of the faces normal to x and to y.
        :return: (dy, dx).
        """
        return (self.dy, self.dx)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """
        Cell-centre coordinates as two (n_x, n_y) arrays.
        :return: X and Y.
        """
        return np.meshgrid(self.x_centers, self.y_centers, indexing="ij")


def build_grid_1d(x_min: float, x_max: float, n: int) -> Grid1D:
    """
    Build a uniform 1D grid.
    :param x_min: Left end.
    :param x_max: Right end.
    :param n: Number of cells, at least 4.
    :return: The grid.
    """
    return Grid1D(float(x_min), float(x_max), n)


def build_grid_2d(x_min: float, x_max: float, y_min: float, y_max: float, n_x: int, n_y: int) -> Grid2D:
    """
    Build a uniform Cartesian grid.
    :return: The grid.
    """
    return Grid2D(float(x_min), float(x_max), float(y_min), float(y_max), n_x, n_y)


__all__ = ["MIN_CELLS", "Grid1D", "Grid2D", "build_grid_1d", "build_grid_2d"]
