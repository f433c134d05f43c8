#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Discrete kinetic layer: two- and four-velocity equilibria, their moments, split fluxes,
the Chapman-Enskog viscous component and the kinetic forms of the interface fluxes.

The production kernels in solver1d use the macroscopic closed forms. The functions here
build the same fluxes from distributions and are used to check that both agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np

from fvbe.exceptions import InvalidWaveSpeedError
from fvbe.scheme_kind import TvdSplit


def _check_lambda(lam) -> None:
    if np.any(np.asarray(lam) <= 0.0):
        raise InvalidWaveSpeedError(f"Wave speed must be > 0, got {lam}.")


@dataclass(frozen=True)
class KineticPair:
    """
    Two-velocity distribution (f+, f-) moving at +lambda and -lambda.
    """

    # Attributes

    f_plus: np.ndarray = field(metadata={"help": "Component moving right."})
    f_minus: np.ndarray = field(metadata={"help": "Component moving left."})

    # Special methods

    def __sub__(self, other: "KineticPair") -> "KineticPair":
        return KineticPair(self.f_plus - other.f_plus, self.f_minus - other.f_minus)


@dataclass(frozen=True)
class KineticQuad:
    """
    Four-velocity distribution with velocities (-l,-l), (+l,-l), (+l,+l), (-l,+l).
    """

    # Attributes

    f1: np.ndarray = field(metadata={"help": "Velocity (-lambda, -lambda)."})
    f2: np.ndarray = field(metadata={"help": "Velocity (+lambda, -lambda)."})
    f3: np.ndarray = field(metadata={"help": "Velocity (+lambda, +lambda)."})
    f4: np.ndarray = field(metadata={"help": "Velocity (-lambda, +lambda)."})


@dataclass(frozen=True)
class ViscousMoments:
    """
    Moments of the viscous component of the Chapman-Enskog distribution.
    """

    density: np.ndarray = field(metadata={"help": "P f_v, identically zero."})
    flux: np.ndarray = field(metadata={"help": "P Lambda f_v = g_v."})
    second: np.ndarray = field(metadata={"help": "P Lambda^2 f_v, identically zero."})
    flux_plus: np.ndarray = field(metadata={"help": "P Lambda+ f_v = g_v / 2."})
    flux_minus: np.ndarray = field(metadata={"help": "P Lambda- f_v = g_v / 2."})


# Public functions

# - One dimension


def equilibrium_1d(u, g, lam) -> KineticPair:
    """
    f+ = u/2 + g/(2 lambda), f- = u/2 - g/(2 lambda).
    :param u: Conserved value(s).
    :param g: Flux value(s).
    :param lam: Wave speed, > 0.
    :return: The equilibrium pair.
    """
    _check_lambda(lam)
    half_u = 0.5 * np.asarray(u, dtype=float)
    g_term = np.asarray(g, dtype=float) / (2.0 * np.asarray(lam, dtype=float))
    return KineticPair(half_u + g_term, half_u - g_term)


def moments_1d(f: KineticPair, lam) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Density, flux and second moment of a pair.
    :param f: The distribution.
    :param lam: Wave speed.
    :return: (P f, P Lambda f, P Lambda^2 f).
    """
    lam = np.asarray(lam, dtype=float)
    density = f.f_plus + f.f_minus
    flux = lam * f.f_plus - lam * f.f_minus
    second = lam * lam * density
    return density, flux, second


def split_macroscopic_flux(u, g, lam) -> Tuple[np.ndarray, np.ndarray]:
    """
    g+ = g/2 + lambda u/2 and g- = g/2 - lambda u/2.
    :return: (g+, g-).
    """
    _check_lambda(lam)
    half_g = 0.5 * np.asarray(g, dtype=float)
    half_lu = 0.5 * np.asarray(lam, dtype=float) * np.asarray(u, dtype=float)
    return half_g + half_lu, half_g - half_lu


def chapman_enskog_viscous(nu, du_dx, lam) -> Tuple[KineticPair, ViscousMoments]:
    """
    Viscous component f_v = (nu u_x / (2 lambda), -nu u_x / (2 lambda)) and its moments.
    :param nu: Diffusion coefficient.
    :param du_dx: Gradient of u.
    :param lam: Wave speed, > 0.
    :return: The component and its moments.
    """
    _check_lambda(lam)
    lam = np.asarray(lam, dtype=float)
    component = np.asarray(nu, dtype=float) * np.asarray(du_dx, dtype=float) / (2.0 * lam)
    f_v = KineticPair(component, -component)
    # Symmetric sums so the zero moments cancel exactly
    density = f_v.f_plus + f_v.f_minus
    flux_plus = lam * f_v.f_plus
    flux_minus = -lam * f_v.f_minus
    moments = ViscousMoments(
        density=density,
        flux=flux_plus + flux_minus,
        second=lam * lam * density,
        flux_plus=flux_plus,
        flux_minus=flux_minus,
    )
    return f_v, moments


# - Two dimensions


def equilibrium_2d(u, g1, g2, lam) -> KineticQuad:
    """
    Four-velocity equilibrium u/4 with the signs (-,-), (+,-), (+,+), (-,+) on (G1, G2)/(4 lambda).
    :param u: Conserved value(s).
    :param g1: Flux along x.
    :param g2: Flux along y.
    :param lam: Wave speed, > 0.
    :return: The equilibrium quad.
    """
    _check_lambda(lam)
    quarter_u = 0.25 * np.asarray(u, dtype=float)
    lam = np.asarray(lam, dtype=float)
    x_term = np.asarray(g1, dtype=float) / (4.0 * lam)
    y_term = np.asarray(g2, dtype=float) / (4.0 * lam)
    return KineticQuad(
        quarter_u - x_term - y_term,
        quarter_u + x_term - y_term,
        quarter_u + x_term + y_term,
        quarter_u - x_term + y_term,
    )


def moments_2d(f: KineticQuad, lam) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Density and both flux moments of a quad.
    :return: (u, G1, G2).
    """
    lam = np.asarray(lam, dtype=float)
    density = (f.f1 + f.f3) + (f.f2 + f.f4)
    flux_x = lam * ((f.f2 + f.f3) - (f.f1 + f.f4))
    flux_y = lam * ((f.f3 + f.f4) - (f.f1 + f.f2))
    return density, flux_x, flux_y


# - Kinetic interface fluxes


def kinetic_kfds_flux(f_left: KineticPair, f_right: KineticPair, lam) -> np.ndarray:
    """
    Density moment of the upwinded kinetic flux: f+ from the left, f- from the right.
    """
    lam = np.asarray(lam, dtype=float)
    return lam * f_left.f_plus - lam * f_right.f_minus


def kinetic_klw_flux(f_left: KineticPair, f_right: KineticPair, lam, ratio: float) -> np.ndarray:
    """
    Density moment of the Lax-Wendroff flux of each kinetic transport equation.
    :param ratio: dt / dx.
    """
    lam = np.asarray(lam, dtype=float)
    weight = 0.5 * (1.0 - ratio * lam)
    jump = f_right - f_left
    f_plus = f_left.f_plus + weight * jump.f_plus
    f_minus = f_right.f_minus - weight * jump.f_minus
    return lam * f_plus - lam * f_minus


def limiter_ratios(stencil: Sequence[KineticPair]) -> Tuple[np.ndarray, np.ndarray]:
    """
    Upwind slope ratios of a four-cell stencil j-1 .. j+2 at the interface j+1/2.
    r+ = (f+_j - f+_(j-1)) / (f+_(j+1) - f+_j) and r- = (f-_(j+2) - f-_(j+1)) / (f-_(j+1) - f-_j).
    A zero denominator gives r = 0.
    :param stencil: Four pairs.
    :return: (r+, r-).
    """
    f_m, f_j, f_p, f_pp = stencil
    return (
        _ratio(f_j.f_plus - f_m.f_plus, f_p.f_plus - f_j.f_plus),
        _ratio(f_pp.f_minus - f_p.f_minus, f_p.f_minus - f_j.f_minus),
    )


def _ratio(numerator, denominator) -> np.ndarray:
    numerator = np.asarray(numerator, dtype=float)
    denominator = np.asarray(denominator, dtype=float)
    zero = denominator == 0.0
    return np.where(zero, 0.0, numerator / np.where(zero, 1.0, denominator))


def minmod_limiter(r) -> np.ndarray:
    """
    phi(r) = max(0, min(1, r)).
    """
    return np.maximum(0.0, np.minimum(1.0, np.asarray(r, dtype=float)))


def kinetic_tvd_flux(
    stencil: Sequence[KineticPair], lam, ratio: float, split: TvdSplit = TvdSplit.PRINTED
) -> np.ndarray:
    """
    Limited kinetic flux at j+1/2 in ratio form.
    :param stencil: Pairs of cells j-1 .. j+2, all built with the same lambda.
    :param lam: Wave speed.
    :param ratio: dt / dx.
    :param split: Correction form.
    :return: Density moment of the limited flux.
    """
    lam = np.asarray(lam, dtype=float)
    f_m, f_j, f_p, f_pp = stencil
    base = kinetic_kfds_flux(f_j, f_p, lam)
    courant = ratio * lam
    if split is TvdSplit.UPWIND:
        r_plus, r_minus = limiter_ratios(stencil)
        jump = f_p - f_j
        limited = minmod_limiter(r_plus) * jump.f_plus + minmod_limiter(r_minus) * jump.f_minus
        return base + 0.5 * lam * (1.0 - courant) * limited

    def jumps(left: KineticPair, right: KineticPair):
        du = (right.f_plus + right.f_minus) - (left.f_plus + left.f_minus)
        dg = lam * ((right.f_plus - right.f_minus) - (left.f_plus - left.f_minus))
        common = 0.5 * courant * lam * du - 0.5 * lam * du
        return common - 0.5 * dg, common + 0.5 * dg

    a_m, _ = jumps(f_m, f_j)
    a_c, b_c = jumps(f_j, f_p)
    _, b_p = jumps(f_p, f_pp)
    return (
        base
        - 0.5 * minmod_limiter(_ratio(a_m, a_c)) * a_c
        - 0.5 * minmod_limiter(_ratio(b_p, b_c)) * b_c
    )


__all__ = [
    "KineticPair",
    "KineticQuad",
    "ViscousMoments",
    "equilibrium_1d",
    "moments_1d",
    "split_macroscopic_flux",
    "chapman_enskog_viscous",
    "equilibrium_2d",
    "moments_2d",
    "kinetic_kfds_flux",
    "kinetic_klw_flux",
    "limiter_ratios",
    "minmod_limiter",
    "kinetic_tvd_flux",
]
