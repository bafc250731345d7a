"""Spontaneous decay rates with classical and noise-polarization local fields.

Rates are returned in units of the free-space rate ``Gamma0(omega_a)``.
Two routes are provided and cross-checked in the tests:

* closed forms (:func:`gamma_perp`, :func:`gamma_par`, :func:`gamma_classical`);
* :func:`assemble_breakdown`, which builds the classical, noise-only and
  cross contributions from the sphere-averaged Green and delta tensors.

Units inside: hbar = eps0 = c = 1, frequencies in units of ``omega_t``.
The dipole orientation drops out because every averaged tensor is
proportional to ``delta_ij``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from scipy import constants as _sc

from .errors import DomainError
from .green_average import CavityGeometry, averaged_delta, averaged_green
from .permittivity import Medium, Permittivity, RefractiveIndex, epsilon, refractive_index


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = _sc.hbar
    eps0: float = _sc.epsilon_0
    c: float = _sc.c


SI = PhysicalConstants()


@dataclass(frozen=True)
class Transition:
    omega_a: float
    mu: Optional[float] = None

    def __post_init__(self):
        if not self.omega_a > 0:
            raise DomainError(f"transition frequency must be positive, got {self.omega_a}")


@dataclass(frozen=True)
class RateBreakdown:
    """All entries in units of Gamma0; ``total = perp + par``."""

    perp: float
    par: float
    cl_perp: float
    cl_par: float
    noise_perp: float
    noise_par: float
    cross_perp: float
    cross_par: float

    @property
    def total(self) -> float:
        return self.perp + self.par


def gamma0(transition: Transition, constants: PhysicalConstants = SI, omega_unit: float = 1.0) -> float:
    """Free-space rate ``w^3 mu^2 / (3 pi c^3 hbar eps0)`` in inverse seconds.

    ``omega_unit`` converts ``transition.omega_a`` to rad/s (leave at 1 when
    ``omega_a`` is already absolute).
    """
    if transition.mu is None:
        raise DomainError("absolute rates need the dipole matrix element mu")
    w = transition.omega_a * omega_unit
    k = constants
    return w**3 * transition.mu**2 / (3.0 * math.pi * k.c**3 * k.hbar * k.eps0)


def _lf_factor2(eps: Permittivity) -> float:
    """``|(eps + 2) / 3|^2``, the classical local-field enhancement."""
    return ((eps.re + 2.0) ** 2 + eps.im**2) / 9.0


def _mod2(eps: Permittivity) -> float:
    m2 = eps.re**2 + eps.im**2
    if m2 == 0.0:
        raise DomainError("rates are singular for eps = 0")
    return m2


def size_parameter(transition: Transition, geom: CavityGeometry) -> float:
    """``x = c / (omega_a r_bar) = r omega_t / (2 pi omega_a)``."""
    return 1.0 / (transition.omega_a * geom.r_bar)


def gamma_classical(
    eps: Permittivity, n: RefractiveIndex, transition: Transition, geom: CavityGeometry
) -> tuple[float, float]:
    lf2 = _lf_factor2(eps)
    x = size_parameter(transition, geom)
    return n.eta * lf2, lf2 * 1.5 * eps.im / _mod2(eps) * x**3


def gamma_perp(
    eps: Permittivity, n: RefractiveIndex, transition: Transition, geom: CavityGeometry
) -> float:
    """Transverse rate; may be negative when the cavity is too large."""
    x = size_parameter(transition, geom)
    ei = eps.im
    return (
        n.eta * (_lf_factor2(eps) - 2.0 * ei**2 / 9.0)
        - ei * (eps.re + 2.0) * (2.0 / 9.0 * n.kappa - x / 3.0)
        + ei * x**3 / 3.0
    )


def gamma_par(eps: Permittivity, transition: Transition, geom: CavityGeometry) -> float:
    m2 = _mod2(eps)
    x = size_parameter(transition, geom)
    braces = (
        _lf_factor2(eps)
        + m2 / 9.0
        - 2.0 / 9.0 * eps.re * (eps.re + 2.0)
        - 2.0 / 9.0 * eps.im**2
    )
    return 1.5 * eps.im * x**3 / m2 * braces


def assemble_breakdown(
    eps: Permittivity, n: RefractiveIndex, transition: Transition, geom: CavityGeometry
) -> RateBreakdown:
    w = transition.omega_a
    g = averaged_green(eps, n, w, geom)
    d = averaged_delta(geom)
    g0 = w**3 / (3.0 * math.pi)  # mu = 1
    lf = complex(eps.re + 2.0, eps.im) / 3.0
    lf2 = abs(lf) ** 2

    def classical(im_g):
        return 2.0 * w**2 * lf2 * im_g / g0

    def noise(delta_avg):
        return 2.0 / 9.0 * eps.im * delta_avg / g0

    def cross(g_avg: complex):
        return 4.0 / 3.0 * w**2 * eps.im * (lf * g_avg).real / g0

    parts = dict(
        cl_perp=classical(g.im_perp),
        cl_par=classical(g.im_par),
        noise_perp=noise(d.perp),
        noise_par=noise(d.par),
        cross_perp=cross(g.perp),
        cross_par=cross(g.par),
    )
    return RateBreakdown(
        perp=parts["cl_perp"] + parts["noise_perp"] + parts["cross_perp"],
        par=parts["cl_par"] + parts["noise_par"] + parts["cross_par"],
        **parts,
    )


def breakdown_at(medium: Medium, omega_a: float, geom: CavityGeometry) -> RateBreakdown:
    eps = epsilon(medium, omega_a)
    return assemble_breakdown(eps, refractive_index(eps), Transition(omega_a), geom)
