#!/usr/bin/env python
# -*- coding: utf-8 -*-

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Optional

import numpy as np

from fvbe.exceptions import ConfigurationError

ArrayFunction = Callable[[np.ndarray], np.ndarray]


# Flux and speed functions, module level so models stay picklable


def _linear_flux(u: np.ndarray, speed: float) -> np.ndarray:
    return speed * np.asarray(u, dtype=float)


def _linear_speed(u: np.ndarray, speed: float) -> np.ndarray:
    return np.full_like(np.asarray(u, dtype=float), speed)


def _burgers_flux(u: np.ndarray) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    return 0.5 * u * u


def _burgers_speed(u: np.ndarray) -> np.ndarray:
    return np.array(u, dtype=float)


def _zero(u: np.ndarray) -> np.ndarray:
    return np.zeros_like(np.asarray(u, dtype=float))


@dataclass(frozen=True)
class FluxModel:
    """
    Scalar conservation law u_t + g(u)_x (+ g2(u)_y) = nu * laplacian(u).
    """

    # Attributes

    name: str = field(metadata={"help": "Short model name used in logs and metadata."})
    g: ArrayFunction = field(repr=False, metadata={"help": "Flux along x."})
    a: ArrayFunction = field(repr=False, metadata={"help": "Wave speed dg/du along x."})
    nu: float = field(default=0.0, metadata={"help": "Diffusion coefficient."})
    g2: Optional[ArrayFunction] = field(default=None, repr=False, metadata={"help": "Flux along y."})
    a2: Optional[ArrayFunction] = field(default=None, repr=False, metadata={"help": "Wave speed along y."})

    # Special methods

    # - Initialization and deletion

    def __post_init__(self) -> None:
        """
        Validates the diffusion coefficient and the 2D pairing.
        """
        if not math.isfinite(self.nu) or self.nu < 0.0:
            raise ConfigurationError(f"Diffusion coefficient must be finite and >= 0, got {self.nu}.")
        if (self.g2 is None) != (self.a2 is None):
            raise ConfigurationError(f"Model {self.name}: g2 and a2 must be given together.")

    # Public methods

    @property
    def is_2d(self) -> bool:
        return self.g2 is not None

    @property
    def is_viscous(self) -> bool:
        return self.nu > 0.0

    def flux(self, u: np.ndarray, axis: int = 0) -> np.ndarray:
        """
        Flux along an axis.
        :param u: States.
        :param axis: 0 for x, 1 for y.
        :return: g(u) or g2(u).
        """
        if axis == 0:
            return self.g(u)
        if self.g2 is None:
            raise ConfigurationError(f"Model {self.name} has no y flux.")
        return self.g2(u)

    def speed(self, u: np.ndarray, axis: int = 0) -> np.ndarray:
        """
        Wave speed along an axis.
        :param u: States.
        :param axis: 0 for x, 1 for y.
        :return: a(u) or a2(u).
        """
        if axis == 0:
            return self.a(u)
        if self.a2 is None:
            raise ConfigurationError(f"Model {self.name} has no y speed.")
        return self.a2(u)

    def derivative_mismatch(
        self, samples: int = 1000, low: float = -2.0, high: float = 2.0, h: float = 1e-5, seed: int = 0
    ) -> float:
        """
        Worst relative gap between a(u) and a central difference of g at random states.
        :param samples: Number of random states.
        :param low: Lower sampling bound.
        :param high: Upper sampling bound.
        :param h: Finite-difference step.
        :param seed: Random seed.
        :return: max |a - dg/du| / max(1, |a|) over all samples and axes.
        """
        rng = np.random.default_rng(seed)
        u = rng.uniform(low, high, samples)
        worst = 0.0
        for axis in (0, 1) if self.is_2d else (0,):
            exact = self.speed(u, axis)
            central = (self.flux(u + h, axis) - self.flux(u - h, axis)) / (2.0 * h)
            gap = np.abs(exact - central) / np.maximum(1.0, np.abs(exact))
            worst = max(worst, float(np.max(gap)))
        return worst

    def check_derivative(self, tolerance: float = 1e-6, **kwargs) -> None:
        """
        Raise when a is not the derivative of g.
        :param tolerance: Accepted relative gap.
        """
        mismatch = self.derivative_mismatch(**kwargs)
        if mismatch > tolerance:
            raise ConfigurationError(
                f"Model {self.name}: wave speed is not dg/du (relative gap {mismatch:.3e})."
            )

    def with_viscosity(self, nu: float) -> "FluxModel":
        """
        Same fluxes with another diffusion coefficient.
        :param nu: The new coefficient.
        :return: A new model.
        """
        return FluxModel(self.name, self.g, self.a, nu, self.g2, self.a2)

    # - Factories

    @classmethod
    def linear_advection(cls, speed: float = 1.0, nu: float = 0.0) -> "FluxModel":
        """
        g(u) = c u.
        """
        return cls(
            name="linear-advection",
            g=partial(_linear_flux, speed=speed),
            a=partial(_linear_speed, speed=speed),
            nu=nu,
        )

    @classmethod
    def burgers(cls, nu: float = 0.0) -> "FluxModel":
        """
        g(u) = u^2 / 2.
        """
        return cls(name="burgers", g=_burgers_flux, a=_burgers_speed, nu=nu)

    @classmethod
    def linear_advection_2d(cls, angle_degrees: float = 45.0, nu: float = 0.0) -> "FluxModel":
        """
        g1 = cos(phi) u, g2 = sin(phi) u.
        """
        angle = math.radians(angle_degrees)
        cx, cy = math.cos(angle), math.sin(angle)
        return cls(
            name="linear-advection-2d",
            g=partial(_linear_flux, speed=cx),
            a=partial(_linear_speed, speed=cx),
            nu=nu,
            g2=partial(_linear_flux, speed=cy),
            a2=partial(_linear_speed, speed=cy),
        )

    @classmethod
    def burgers_2d(cls, nu: float = 0.0) -> "FluxModel":
        """
        g1 = g2 = u^2 / 2.
        """
        return cls(
            name="burgers-2d", g=_burgers_flux, a=_burgers_speed, nu=nu, g2=_burgers_flux, a2=_burgers_speed
        )

    @classmethod
    def burgers_transport_2d(cls) -> "FluxModel":
        """
        g1 = u^2 / 2, g2 = u (steady Burgers with y as a time-like direction).
        """
        return cls(
            name="burgers-transport-2d",
            g=_burgers_flux,
            a=_burgers_speed,
            g2=partial(_linear_flux, speed=1.0),
            a2=partial(_linear_speed, speed=1.0),
        )

    @classmethod
    def passive_y(cls, model: "FluxModel") -> "FluxModel":
        """
        Attach g2 = 0 to a 1D model.
        """
        return cls(model.name + "-2d", model.g, model.a, model.nu, _zero, _zero)


__all__ = ["FluxModel"]
