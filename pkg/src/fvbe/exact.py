#!/usr/bin/env python
# -*- coding: utf-8 -*-
""" Closed-form and semi-analytic reference solutions of the test cases. """

from __future__ import annotations

import math
import warnings

import numpy as np
from scipy import optimize, special

from fvbe.exceptions import EvaluationError

# Default truncation of the Fourier-Bessel series of the viscous sine case
SERIES_TERMS = 60
NEWTON_TOLERANCE = 1e-13
# Relative margin below which a point counts as lying on the diagonal of the 2D linear case
DIAGONAL_TOLERANCE = 1e-12


def riemann_burgers(u_left: float, u_right: float, x, t: float, x0: float = 0.0) -> np.ndarray:
    """
    Entropy solution of the inviscid Burgers Riemann problem.
    :param u_left: State left of the jump.
    :param u_right: State right of the jump.
    :param x: Positions.
    :param t: Time, t = 0 returns the initial step.
    :param x0: Initial position of the jump.
    :return: u(x, t).
    """
    xi = np.asarray(x, dtype=float) - x0
    if t < 0.0:
        raise EvaluationError(f"Riemann solution needs t >= 0, got {t}.")
    if t == 0.0 or u_left == u_right:
        return np.where(xi < 0.0, u_left, u_right).astype(float)
    if u_left > u_right:
        speed = 0.5 * (u_left + u_right)
        return np.where(xi < speed * t, u_left, u_right).astype(float)
    # Expansion fan u = x/t between the characteristic speeds
    return np.clip(xi / t, u_left, u_right)


def two_jump_burgers(
    u_left: float, u_mid: float, u_right: float, x_a: float, x_b: float, x, t: float
) -> np.ndarray:
    """
    Burgers solution of three constant states with jumps at x_a < x_b, valid until the two waves meet.
    :return: u(x, t).
    """
    x = np.asarray(x, dtype=float)
    split = 0.5 * (x_a + x_b)
    left = riemann_burgers(u_left, u_mid, x, t, x_a)
    right = riemann_burgers(u_mid, u_right, x, t, x_b)
    return np.where(x < split, left, right)


def linear_advection_profile(x, t: float, speed: float = 1.0) -> np.ndarray:
    """
    Three-state profile 0 / 1 / -1 with jumps at -1/3 and 1/3, both translated by speed * t.
    :return: u(x, t).
    """
    x = np.asarray(x, dtype=float)
    shift = speed * t
    return np.where(x < -1.0 / 3.0 + shift, 0.0, np.where(x <= 1.0 / 3.0 + shift, 1.0, -1.0))


def advection_diffusion_steady(x, pe: float) -> np.ndarray:
    """
    Steady boundary layer u = (1 - exp(x Pe)) / (1 - exp(Pe)) of u_x = u_xx / Pe on [0, 1].
    :param x: Positions.
    :param pe: Peclet number, non-zero.
    :return: u(x).
    """
    if pe == 0.0:
        raise EvaluationError("Peclet number must be non-zero.")
    x = np.asarray(x, dtype=float)
    if pe < 0.0:
        return np.expm1(x * pe) / math.expm1(pe)
    # Scaled by exp(-Pe) so large Peclet numbers do not overflow
    return np.exp((x - 1.0) * pe) * np.expm1(-x * pe) / math.expm1(-pe)


def viscous_front(x, t: float, nu: float) -> np.ndarray:
    """
    Travelling viscous front from 1 down to 0 moving at speed 1/2.
    :return: 1 - (1 - tanh((t/2 - x) / (4 nu))) / 2.
    """
    if not nu > 0.0:
        raise EvaluationError(f"Viscous front needs nu > 0, got {nu}.")
    x = np.asarray(x, dtype=float)
    return 1.0 - 0.5 * (1.0 - np.tanh((0.5 * t - x) / (4.0 * nu)))


def viscous_sine_series(x, t: float, nu: float, n_terms: int = SERIES_TERMS) -> np.ndarray:
    """
    Cole-Hopf series of viscous Burgers with u(x, 0) = -sin(pi x) and u(+-1, t) = 0.

    u = 4 pi nu sum n a_n e_n sin(n pi x) / (a_0 + 2 sum a_n e_n cos(n pi x)) with
    a_n = (-1)^n I_n(1 / (2 pi nu)) and e_n = exp(-n^2 pi^2 nu t).
    :param x: Positions.
    :param t: Time.
    :param nu: Diffusion coefficient, > 0.
    :param n_terms: Number of terms n = 1 .. n_terms.
    :return: u(x, t).
    """
    if not nu > 0.0:
        raise EvaluationError(f"Series solution needs nu > 0, got {nu}.")
    if n_terms < 1:
        raise EvaluationError(f"Series needs at least one term, got {n_terms}.")
    x = np.asarray(x, dtype=float)
    z = 1.0 / (2.0 * math.pi * nu)
    n = np.arange(1, n_terms + 1, dtype=float)
    # Exponentially scaled Bessel functions, the common factor cancels in the quotient
    a0 = special.ive(0, z)
    a_n = (-1.0) ** n * special.ive(n, z) * np.exp(-(n**2) * math.pi**2 * nu * t)
    phase = math.pi * np.multiply.outer(x, n)
    numerator = 4.0 * math.pi * nu * np.sum(n * a_n * np.sin(phase), axis=-1)
    denominator = a0 + 2.0 * np.sum(a_n * np.cos(phase), axis=-1)
    if np.any(np.abs(denominator) < 1e-300):
        raise EvaluationError("Series denominator vanishes.")
    return numerator / denominator


def viscous_steady_shock(x, nu: float, u_left: float = 1.0, u_right: float = -1.0) -> np.ndarray:
    """
    Steady viscous shock (uL + uR)/2 - (uL - uR)/2 tanh(x (uL - uR) / (4 nu)).
    :return: u(x).
    """
    if not nu > 0.0:
        raise EvaluationError(f"Viscous shock needs nu > 0, got {nu}.")
    x = np.asarray(x, dtype=float)
    jump = u_left - u_right
    return 0.5 * ((u_left + u_right) - jump * np.tanh(x * jump / (4.0 * nu)))


def lce2d_diagonal(x, y, angle_degrees: float = 45.0) -> np.ndarray:
    """
    Steady transport of the inflow discontinuity: 1 where b x - a y < 0, 0 elsewhere,
    with (a, b) = (cos phi, sin phi). Points on the line get 0.
    :return: u(x, y).
    """
    angle = math.radians(angle_degrees)
    a, b = math.cos(angle), math.sin(angle)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    scale = np.maximum(1.0, np.maximum(np.abs(x), np.abs(y)))
    return np.where(b * x - a * y < -DIAGONAL_TOLERANCE * scale, 1.0, 0.0)


def burgers2d_front(x, y, t: float, nu: float) -> np.ndarray:
    """
    Diagonal viscous front u = 1/2 - tanh((x + y - t) / (2 nu)) of 2D viscous Burgers.
    :return: u(x, y, t).
    """
    if not nu > 0.0:
        raise EvaluationError(f"Viscous front needs nu > 0, got {nu}.")
    return 0.5 - np.tanh((np.asarray(x, dtype=float) + np.asarray(y, dtype=float) - t) / (2.0 * nu))


def smooth_burgers(x, t: float) -> np.ndarray:
    """
    Smooth solution of inviscid Burgers with u(x, 0) = sin(2 pi x), before the shock forms.

    Solves u = sin(2 pi (x - u t)) per point with Newton's method, falling back on bracketing
    where Newton does not converge.
    :param x: Positions.
    :param t: Time, below the breaking time 1 / (2 pi).
    :return: u(x, t).
    """
    x = np.asarray(x, dtype=float)
    if t == 0.0:
        return np.sin(2.0 * math.pi * x)
    if not 0.0 < t < 1.0 / (2.0 * math.pi):
        raise EvaluationError(f"Smooth solution exists for 0 <= t < 1/(2 pi), got {t}.")
    flat = x.ravel()
    two_pi = 2.0 * math.pi

    def residual(u, xs=flat):
        return u - np.sin(two_pi * (xs - u * t))

    def slope(u, xs=flat):
        return 1.0 + two_pi * t * np.cos(two_pi * (xs - u * t))

    converged = np.zeros(flat.shape, dtype=bool)
    root = np.sin(two_pi * flat)
    # The vectorised Newton path needs more than one point, single points go to brentq
    if flat.size > 1:
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RuntimeWarning)
                result = optimize.newton(
                    residual, root, fprime=slope, tol=NEWTON_TOLERANCE, maxiter=100, full_output=True
                )
            root = np.asarray(result.root, dtype=float)
            converged = np.asarray(result.converged, dtype=bool)
        except RuntimeError:
            pass
    for index in np.flatnonzero(~converged):
        point = flat[index]
        root[index] = optimize.brentq(
            lambda u: u - math.sin(two_pi * (point - u * t)), -1.0, 1.0, xtol=NEWTON_TOLERANCE
        )
    return root.reshape(x.shape)


__all__ = [
    "SERIES_TERMS",
    "riemann_burgers",
    "two_jump_burgers",
    "linear_advection_profile",
    "advection_diffusion_steady",
    "viscous_front",
    "viscous_sine_series",
    "viscous_steady_shock",
    "lce2d_diagonal",
    "burgers2d_front",
    "smooth_burgers",
]
