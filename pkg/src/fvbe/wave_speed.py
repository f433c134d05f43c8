#!/usr/bin/env python
# -*- coding: utf-8 -*-
""" Strategies fixing the kinetic wave speed lambda. """

from __future__ import annotations

from enum import Enum
from typing import Tuple

import numpy as np

from fvbe.exceptions import ConfigurationError, StateError
from fvbe.flux_model import FluxModel

# Positive guard for a global lambda that divides
LAMBDA_FLOOR = 1e-12
# Relative jump below which the secant speed is replaced by the tangent
SECANT_TOLERANCE = 1e-12


class WaveSpeedMode(Enum):
    """
    Enum class for the ways of fixing lambda.
    """

    CE = "ce"
    RH = "rh"
    HYBRID = "hybrid"

    @classmethod
    def from_flag(cls, flag: str) -> "WaveSpeedMode":
        try:
            return cls(flag.lower())
        except ValueError:
            raise ConfigurationError(f"Unknown wave-speed mode {flag!r}.") from None


def lambda_ce(states: np.ndarray, model: FluxModel, axis: int = 0) -> float:
    """
    Global Chapman-Enskog bound max |a(u_j)|, floored at LAMBDA_FLOOR.
    :param states: All cell values.
    :param model: The flux model.
    :param axis: Direction of the wave speed.
    :return: Lambda.
    """
    states = np.asarray(states, dtype=float)
    if states.size == 0:
        raise ConfigurationError("Cannot fix lambda from an empty state array.")
    return max(float(np.max(np.abs(model.speed(states, axis)))), LAMBDA_FLOOR)


def lambda_ce_local(u_left: np.ndarray, u_right: np.ndarray, model: FluxModel, axis: int = 0) -> np.ndarray:
    """
    Chapman-Enskog bound of one interface stencil, max(|a(uL)|, |a(uR)|).
    """
    return np.maximum(np.abs(model.speed(u_left, axis)), np.abs(model.speed(u_right, axis)))


def lambda_rh(u_left, u_right, model: FluxModel, axis: int = 0) -> np.ndarray:
    """
    Rankine-Hugoniot speed |dg / du|, tangent |a(mean)| when the jump vanishes.
    :param u_left: Left states.
    :param u_right: Right states.
    :param model: The flux model.
    :param axis: Direction of the flux.
    :return: Lambda per interface, may be 0.
    """
    u_left = np.asarray(u_left, dtype=float)
    u_right = np.asarray(u_right, dtype=float)
    jump = u_right - u_left
    scale = np.maximum(1.0, np.maximum(np.abs(u_left), np.abs(u_right)))
    tangent = np.abs(jump) <= SECANT_TOLERANCE * scale
    safe_jump = np.where(tangent, 1.0, jump)
    secant = np.abs(model.flux(u_right, axis) - model.flux(u_left, axis)) / np.abs(safe_jump)
    return np.where(tangent, np.abs(model.speed(0.5 * (u_left + u_right), axis)), secant)


def shock_indicator(a_left, a_right) -> np.ndarray:
    """
    Characteristics converge on the interface: a_L > 0 and a_R < 0.
    """
    return np.logical_and(np.asarray(a_left) > 0.0, np.asarray(a_right) < 0.0)


def lambda_hybrid(u_left, u_right, model: FluxModel, fallback, axis: int = 0) -> np.ndarray:
    """
    RH speed where the shock indicator fires, the Chapman-Enskog fallback elsewhere.
    :param u_left: Left states.
    :param u_right: Right states.
    :param model: The flux model.
    :param fallback: Chapman-Enskog lambda, scalar or per interface.
    :param axis: Direction of the flux.
    :return: Lambda per interface.
    """
    shock = shock_indicator(model.speed(u_left, axis), model.speed(u_right, axis))
    return np.where(shock, lambda_rh(u_left, u_right, model, axis), fallback)


def _celerity(h: np.ndarray, gravity: float) -> np.ndarray:
    h = np.asarray(h, dtype=float)
    if np.any(h < 0.0):
        raise StateError(f"Negative depth {float(np.min(h)):.6g} has no celerity.")
    return np.sqrt(gravity * h)


def _velocity(h: np.ndarray, hu: np.ndarray) -> np.ndarray:
    """
    hu / h, zero in (nearly) dry cells.
    """
    h = np.asarray(h, dtype=float)
    return np.where(h < 1e-10, 0.0, np.asarray(hu, dtype=float) / np.maximum(h, 1e-10))


def lambda_swe(
    h_left, hu_left, h_right, hu_right, gravity: float, mode: WaveSpeedMode
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Per-equation lambda pair of the shallow-water system at each interface.
    :param h_left: Left depths.
    :param hu_left: Left discharges (normal component).
    :param h_right: Right depths.
    :param hu_right: Right discharges (normal component).
    :param gravity: Acceleration of gravity.
    :param mode: CE gives both equations the largest eigenvalue, RH the left-state eigenvalues,
        HYBRID the RH pair where either characteristic family converges and CE elsewhere.
    :return: (lambda_1, lambda_2).
    """
    a_left = _celerity(h_left, gravity)
    a_right = _celerity(h_right, gravity)
    u_left = _velocity(h_left, hu_left)
    u_right = _velocity(h_right, hu_right)
    rh_1, rh_2 = np.abs(u_left - a_left), np.abs(u_left + a_left)
    if mode is WaveSpeedMode.RH:
        return rh_1, rh_2
    bound = np.maximum(
        np.maximum(np.abs(u_left - a_left), np.abs(u_left + a_left)),
        np.maximum(np.abs(u_right - a_right), np.abs(u_right + a_right)),
    )
    if mode is WaveSpeedMode.HYBRID:
        shock = shock_indicator(u_left - a_left, u_right - a_right) | shock_indicator(
            u_left + a_left, u_right + a_right
        )
        return np.where(shock, rh_1, bound), np.where(shock, rh_2, bound)
    return bound, bound.copy()


__all__ = [
    "LAMBDA_FLOOR",
    "WaveSpeedMode",
    "lambda_ce",
    "lambda_ce_local",
    "lambda_rh",
    "shock_indicator",
    "lambda_hybrid",
    "lambda_swe",
]
