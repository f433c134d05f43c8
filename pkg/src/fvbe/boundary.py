#!/usr/bin/env python
# -*- coding: utf-8 -*-
""" Ghost-cell boundary conditions. """

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np

from fvbe.exceptions import ConfigurationError
from fvbe.field import ScalarField1D
from fvbe.grid import Grid1D

# Constant, one constant per component, or a function of the ghost-centre coordinates and time
BoundaryValue = Union[float, Sequence[float], Callable[..., np.ndarray]]


class BoundaryKind(Enum):
    """
    Enum class for ghost-cell fills.
    """

    DIRICHLET = "dirichlet"
    EXTRAPOLATION = "extrapolation"
    PERIODIC = "periodic"
    REFLECTIVE = "reflective"


@dataclass(frozen=True)
class BoundarySide:
    """
    Treatment of one side of the domain.
    """

    # Attributes

    kind: BoundaryKind = field(metadata={"help": "Ghost fill rule."})
    value: Optional[BoundaryValue] = field(default=None, metadata={"help": "Dirichlet data."})

    # Special methods

    # - Initialization and deletion

    def __post_init__(self) -> None:
        if self.kind is BoundaryKind.DIRICHLET and self.value is None:
            raise ConfigurationError("Dirichlet side needs a value.")

    # Public methods

    @classmethod
    def dirichlet(cls, value: BoundaryValue) -> "BoundarySide":
        return cls(BoundaryKind.DIRICHLET, value)

    @classmethod
    def extrapolation(cls) -> "BoundarySide":
        return cls(BoundaryKind.EXTRAPOLATION)

    @classmethod
    def periodic(cls) -> "BoundarySide":
        return cls(BoundaryKind.PERIODIC)

    @classmethod
    def reflective(cls) -> "BoundarySide":
        return cls(BoundaryKind.REFLECTIVE)

    def describe(self) -> str:
        """
        Short text form used in metadata.
        """
        if self.kind is BoundaryKind.DIRICHLET:
            value = "f(x,t)" if callable(self.value) else self.value
            return f"dirichlet({value})"
        return self.kind.value


@dataclass(frozen=True)
class BoundaryCondition:
    """
    Pair of sides along one axis (left/right, or bottom/top).
    """

    # Attributes

    left: BoundarySide = field(metadata={"help": "Lower side."})
    right: BoundarySide = field(metadata={"help": "Upper side."})

    # Special methods

    # - Initialization and deletion

    def __post_init__(self) -> None:
        """
        Periodicity is a property of the axis, not of one side.
        """
        if (self.left.kind is BoundaryKind.PERIODIC) != (self.right.kind is BoundaryKind.PERIODIC):
            raise ConfigurationError("Periodic boundary must be set on both sides or neither.")

    # Public methods

    @property
    def is_periodic(self) -> bool:
        return self.left.kind is BoundaryKind.PERIODIC

    @property
    def has_reflective(self) -> bool:
        return BoundaryKind.REFLECTIVE in (self.left.kind, self.right.kind)

    @classmethod
    def periodic(cls) -> "BoundaryCondition":
        return cls(BoundarySide.periodic(), BoundarySide.periodic())

    @classmethod
    def extrapolation(cls) -> "BoundaryCondition":
        return cls(BoundarySide.extrapolation(), BoundarySide.extrapolation())

    @classmethod
    def reflective(cls) -> "BoundaryCondition":
        return cls(BoundarySide.reflective(), BoundarySide.reflective())

    @classmethod
    def dirichlet(cls, left: BoundaryValue, right: BoundaryValue) -> "BoundaryCondition":
        return cls(BoundarySide.dirichlet(left), BoundarySide.dirichlet(right))

    def describe(self) -> str:
        return f"{self.left.describe()}/{self.right.describe()}"


@dataclass(frozen=True)
class BoundaryCondition2D:
    """
    Boundary treatment of a Cartesian domain: one pair along x, one along y.
    """

    # Attributes

    x: BoundaryCondition = field(metadata={"help": "Left and right sides."})
    y: BoundaryCondition = field(metadata={"help": "Bottom and top sides."})

    # Public methods

    @classmethod
    def from_sides(
        cls, left: BoundarySide, right: BoundarySide, bottom: BoundarySide, top: BoundarySide
    ) -> "BoundaryCondition2D":
        return cls(BoundaryCondition(left, right), BoundaryCondition(bottom, top))

    @classmethod
    def uniform(cls, condition: BoundaryCondition) -> "BoundaryCondition2D":
        return cls(condition, condition)

    def along(self, axis: int) -> BoundaryCondition:
        return self.x if axis == 0 else self.y

    def describe(self) -> str:
        return f"x={self.x.describe()} y={self.y.describe()}"


def ghost_centers(axis: Grid1D, width: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Centres of the ghost cells, in padded order.
    :param axis: The grid axis.
    :param width: Ghost cells per side.
    :return: Left ghost centres and right ghost centres.
    """
    offsets = np.arange(width) + 0.5
    left = axis.x_min - offsets[::-1] * axis.dx
    right = axis.x_max + offsets * axis.dx
    return left, right


def _ghost_block(
    values: np.ndarray,
    side: BoundarySide,
    width: int,
    lower: bool,
    t: float,
    points: Optional[Tuple[np.ndarray, ...]],
    odd: Sequence[int],
) -> np.ndarray:
    """
    Ghost values for one side, shape values.shape[:-1] + (width,).
    """
    shape = values.shape[:-1] + (width,)
    kind = side.kind
    if kind is BoundaryKind.PERIODIC:
        block = values[..., -width:] if lower else values[..., :width]
        return block.copy()
    if kind is BoundaryKind.EXTRAPOLATION:
        edge = values[..., :1] if lower else values[..., -1:]
        return np.broadcast_to(edge, shape).copy()
    if kind is BoundaryKind.REFLECTIVE:
        block = values[..., :width][..., ::-1] if lower else values[..., -width:][..., ::-1]
        block = block.copy()
        for component in odd:
            block[component] = -block[component]
        return block
    # Dirichlet
    value = side.value
    if callable(value):
        if points is None:
            raise ConfigurationError("Function-valued Dirichlet side needs ghost coordinates.")
        data = np.asarray(value(*points, t), dtype=float)
    else:
        data = np.asarray(value, dtype=float)
        if data.ndim == 1 and values.ndim > 1 and data.shape[0] == values.shape[0]:
            # One constant per component
            data = data.reshape((-1,) + (1,) * (values.ndim - 1))
    return np.broadcast_to(data, shape).copy()


def pad_array(
    values: np.ndarray,
    bc: BoundaryCondition,
    width: int,
    t: float = 0.0,
    lower_points: Optional[Tuple[np.ndarray, ...]] = None,
    upper_points: Optional[Tuple[np.ndarray, ...]] = None,
    odd: Sequence[int] = (),
) -> np.ndarray:
    """
    Extend an array along its last axis with ghost cells.
    :param values: Cell values, the last axis runs across the cells.
    :param bc: Boundary pair along that axis.
    :param width: Ghost cells per side, 1 or 2.
    :param t: Time at which Dirichlet functions are evaluated.
    :param lower_points: Ghost-centre coordinates passed to a function-valued lower side.
    :param upper_points: Ghost-centre coordinates passed to a function-valued upper side.
    :param odd: Leading-axis components negated by a reflective wall.
    :return: Array with 2 * width more entries along the last axis.
    """
    if width not in (1, 2):
        raise ConfigurationError(f"Ghost width must be 1 or 2, got {width}.")
    values = np.asarray(values, dtype=float)
    if values.shape[-1] < width:
        raise ConfigurationError(f"Cannot pad {values.shape[-1]} cells with {width} ghosts per side.")
    lower = _ghost_block(values, bc.left, width, True, t, lower_points, odd)
    upper = _ghost_block(values, bc.right, width, False, t, upper_points, odd)
    return np.concatenate([lower, values, upper], axis=-1)


def pad_with_ghosts(field: ScalarField1D, bc: BoundaryCondition, width: int) -> np.ndarray:
    """
    Ghost-extended cell values of a 1D scalar field.
    :param field: The field.
    :param bc: Boundary condition.
    :param width: Ghost cells per side, 1 or 2.
    :return: n_cells + 2 * width values.
    """
    if bc.has_reflective:
        raise ConfigurationError("Reflective walls apply to shallow-water and 2D fields only.")
    left, right = ghost_centers(field.grid, width)
    return pad_array(field.u, bc, width, field.t, (left,), (right,))


__all__ = [
    "BoundaryKind",
    "BoundarySide",
    "BoundaryCondition",
    "BoundaryCondition2D",
    "ghost_centers",
    "pad_array",
    "pad_with_ghosts",
]
