"""Sphere-averaged short-distance Green tensor and delta tensor.

The bulk Green tensor diverges as the two points merge, so its singular
pieces are volume-averaged over a ball of radius ``r_bar`` (the virtual
cavity). Every averaged tensor is isotropic; only its ``delta_ij``
coefficient is kept. Units: c = 1, frequencies in units of ``omega_t``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConvergenceError, DomainError
from .permittivity import Permittivity, RefractiveIndex


@dataclass(frozen=True)
class CavityGeometry:
    """Virtual cavity described by ``r = lambda_T / r_bar``."""

    r_param: float
    omega_t: float = 1.0

    def __post_init__(self):
        if not self.r_param > 0:
            raise DomainError(f"r must be positive, got {self.r_param}")
        if not self.omega_t > 0:
            raise DomainError(f"omega_t must be positive, got {self.omega_t}")

    @classmethod
    def from_radius(cls, r_bar: float, omega_t: float = 1.0) -> "CavityGeometry":
        if not r_bar > 0:
            raise DomainError(f"cavity radius must be positive, got {r_bar}")
        return cls(2.0 * math.pi / (omega_t * r_bar), omega_t)

    @property
    def r_bar(self) -> float:
        return 2.0 * math.pi / (self.omega_t * self.r_param)


@dataclass(frozen=True)
class AveragedGreen:
    re_perp: float
    im_perp: float
    re_par: float
    im_par: float

    @property
    def perp(self) -> complex:
        return complex(self.re_perp, self.im_perp)

    @property
    def par(self) -> complex:
        return complex(self.re_par, self.im_par)


@dataclass(frozen=True)
class AveragedDelta:
    perp: float
    par: float


def averaged_delta(geom: CavityGeometry) -> AveragedDelta:
    par = 1.0 / (4.0 * math.pi * geom.r_bar**3)
    return AveragedDelta(2.0 * par, par)


def averaged_green(
    eps: Permittivity, n: RefractiveIndex, omega: float, geom: CavityGeometry
) -> AveragedGreen:
    if not omega > 0:
        raise DomainError(f"frequency must be positive, got {omega}")
    mod2 = eps.re**2 + eps.im**2
    if mod2 == 0.0:
        raise DomainError("longitudinal Green tensor is singular for eps = 0")
    rb = geom.r_bar
    long_scale = 4.0 * math.pi * omega**2 * mod2 * rb**3
    return AveragedGreen(
        re_perp=1.0 / (4.0 * math.pi * rb) - omega * n.kappa / (6.0 * math.pi),
        im_perp=omega * n.eta / (6.0 * math.pi),
        re_par=-eps.re / long_scale,
        im_par=eps.im / long_scale,
    )


# -- quadrature oracle ------------------------------------------------------

TensorField = Callable[[np.ndarray, np.ndarray], np.ndarray]


def sphere_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre in cos(theta) times uniform azimuth.

    Integrates polynomials in the unit vector exactly up to degree
    ``2*order - 1``; weights sum to 4 pi.
    """
    mu, wmu = np.polynomial.legendre.leggauss(order)
    nphi = 2 * order
    phi = 2.0 * math.pi * np.arange(nphi) / nphi
    sin_t = np.sqrt(1.0 - mu**2)
    dirs = np.stack(
        [
            np.outer(sin_t, np.cos(phi)).ravel(),
            np.outer(sin_t, np.sin(phi)).ravel(),
            np.repeat(mu, nphi),
        ],
        axis=1,
    )
    weights = np.repeat(wmu, nphi) * (2.0 * math.pi / nphi)
    return dirs, weights


def ball_average(field: TensorField, radius: float, order: int) -> np.ndarray:
    """Volume average of a 3x3 tensor field over the ball ``|R| <= radius``.

    ``field(R, n)`` receives radial nodes of shape (N,) and unit vectors of
    shape (M, 3) and returns an array of shape (N, M, 3, 3).
    """
    x, wx = np.polynomial.legendre.leggauss(order)
    rad = 0.5 * radius * (x + 1.0)
    wrad = 0.5 * radius * wx * rad**2
    dirs, wdir = sphere_rule(order)
    values = field(rad, dirs)
    total = np.einsum("i,j,ijkl->kl", wrad, wdir, values)
    return total * 3.0 / (4.0 * math.pi * radius**3)


def _outer(dirs: np.ndarray) -> np.ndarray:
    return dirs[:, :, None] * dirs[:, None, :]


def transverse_short_distance(eps: Permittivity, n: RefractiveIndex, omega: float) -> TensorField:
    """Regular-at-average part of the transverse Green tensor, O(R) dropped."""
    const = 2j * omega / 3.0 * n.value
    eye = np.eye(3)

    def field(rad, dirs):
        nn = _outer(dirs)
        inv = 1.0 / rad
        out = (0.5 * inv[:, None, None, None]) * (nn + eye)[None]
        return (out + const * eye) / (4.0 * math.pi)

    return field


def dipole_field(rad: np.ndarray, dirs: np.ndarray) -> np.ndarray:
    """``(delta_ij - 3 n_i n_j) / R^3``; averages to zero by symmetry."""
    shape = (np.eye(3) - 3.0 * _outer(dirs))[None]
    return shape / rad[:, None, None, None] ** 3


def longitudinal_short_distance(eps: Permittivity, omega: float) -> TensorField:
    """Dipole part of the longitudinal Green tensor; the contact term is separate."""
    pref = -1.0 / (4.0 * math.pi * omega**2 * eps.value)

    def field(rad, dirs):
        return pref * dipole_field(rad, dirs)

    return field


def _oracle_once(eps, n, omega, geom, order) -> AveragedGreen:
    rb = geom.r_bar
    g_perp = ball_average(transverse_short_distance(eps, n, omega), rb, order)
    g_par = ball_average(longitudinal_short_distance(eps, omega), rb, order)
    # contact term (4 pi / 3) delta_ij delta(R): its ball average is exact
    contact = (4.0 * math.pi / 3.0) * 3.0 / (4.0 * math.pi * rb**3)
    g_par = g_par - contact / (4.0 * math.pi * omega**2 * eps.value) * np.eye(3)
    cp = np.trace(g_perp) / 3.0
    cl = np.trace(g_par) / 3.0
    return AveragedGreen(float(cp.real), float(cp.imag), float(cl.real), float(cl.imag))


def ball_average_oracle(
    eps: Permittivity,
    n: RefractiveIndex,
    omega: float,
    geom: CavityGeometry,
    quadrature_order: int = 16,
    tol: float = 1e-10,
) -> AveragedGreen:
    """Numerically averaged Green scalars, independent of :func:`averaged_green`.

    Runs the quadrature at ``quadrature_order`` and twice that, and raises
    :class:`ConvergenceError` if the two disagree beyond ``tol`` (relative to
    the largest scalar).
    """
    if quadrature_order < 8:
        raise DomainError(f"quadrature_order must be >= 8, got {quadrature_order}")
    if not omega > 0:
        raise DomainError(f"frequency must be positive, got {omega}")
    if eps.modulus == 0.0:
        raise DomainError("longitudinal Green tensor is singular for eps = 0")
    lo = _oracle_once(eps, n, omega, geom, quadrature_order)
    hi = _oracle_once(eps, n, omega, geom, 2 * quadrature_order)
    a = np.array([lo.re_perp, lo.im_perp, lo.re_par, lo.im_par])
    b = np.array([hi.re_perp, hi.im_perp, hi.re_par, hi.im_par])
    scale = max(np.max(np.abs(b)), np.finfo(float).tiny)
    if np.max(np.abs(a - b)) > tol * scale:
        raise ConvergenceError(
            f"oracle orders {quadrature_order} and {2 * quadrature_order} differ by "
            f"{np.max(np.abs(a - b)) / scale:.3e} (relative)"
        )
    return hi


def ball_average_delta_oracle(geom: CavityGeometry, order: int = 16) -> AveragedDelta:
    """Average the transverse/longitudinal split of ``delta_ij delta(R)``.

    Uses ``delta_par = delta/3 delta(R) + dipole/(4 pi)`` and
    ``delta_perp = 2 delta/3 delta(R) - dipole/(4 pi)``; the contact parts
    are averaged analytically, the dipole parts by quadrature.
    """
    rb = geom.r_bar
    contact = 3.0 / (4.0 * math.pi * rb**3)
    dip = float(np.trace(ball_average(dipole_field, rb, order))) / 3.0 / (4.0 * math.pi)
    return AveragedDelta(2.0 / 3.0 * contact - dip, contact / 3.0 + dip)
