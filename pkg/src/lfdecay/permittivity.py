"""Dielectric response: Lorentz model, tabulated data, refractive index.

Frequencies are angular and expressed in units of the medium resonance
``omega_t`` (natural units with c = 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from os import PathLike
from typing import Union

import numpy as np
from scipy.integrate import trapezoid

from .errors import DomainError, PoleError

DEFAULT_COUPLING = 0.46
KK_MIN_POINTS = 8


@dataclass(frozen=True)
class Permittivity:
    re: float
    im: float

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    @property
    def modulus(self) -> float:
        return math.hypot(self.re, self.im)


@dataclass(frozen=True)
class RefractiveIndex:
    eta: float
    kappa: float

    @property
    def value(self) -> complex:
        return complex(self.eta, self.kappa)


@dataclass(frozen=True)
class LorentzMedium:
    """Single-resonance medium ``1 + (f w_T)^2 / (w_T^2 - w^2 - i g w)``."""

    gamma: float
    coupling: float = DEFAULT_COUPLING
    omega_t: float = 1.0

    def __post_init__(self):
        if not self.omega_t > 0:
            raise DomainError(f"omega_t must be positive, got {self.omega_t}")
        if not self.gamma >= 0:
            raise DomainError(f"gamma must be non-negative, got {self.gamma}")
        if not self.coupling >= 0:
            raise DomainError(f"coupling must be non-negative, got {self.coupling}")

    @property
    def omega_l(self) -> float:
        """Upper edge of the lossless polariton gap."""
        return self.omega_t * math.sqrt(1.0 + self.coupling**2)


@dataclass(frozen=True, eq=False)
class TabulatedMedium:
    frequencies: np.ndarray
    values: np.ndarray
    source: str = field(default="", compare=False)

    def __post_init__(self):
        w = np.array(self.frequencies, dtype=float)
        eps = np.array(self.values, dtype=complex)
        if w.ndim != 1 or eps.shape != w.shape:
            raise DomainError("frequencies and values must be 1-D and of equal length")
        if w.size < 2:
            raise DomainError("a table needs at least two samples")
        if not np.all(w > 0):
            raise DomainError("tabulated frequencies must be positive")
        if not np.all(np.diff(w) > 0):
            raise DomainError("tabulated frequencies must be strictly increasing")
        if np.any(eps.imag < 0):
            raise DomainError("tabulated medium has eps_im < 0 (gain media are not supported)")
        w.flags.writeable = False
        eps.flags.writeable = False
        object.__setattr__(self, "frequencies", w)
        object.__setattr__(self, "values", eps)


Medium = Union[LorentzMedium, TabulatedMedium]


def _lorentz_complex(omega_t: float, coupling: float, gamma: float, omega: float) -> complex:
    # no sign check: also used to probe the crossing relation at negative omega
    return 1.0 + (coupling * omega_t) ** 2 / complex(omega_t**2 - omega**2, -gamma * omega)


def epsilon_lorentz(medium: LorentzMedium, omega: float) -> Permittivity:
    if omega < 0:
        raise DomainError(f"frequency must be non-negative, got {omega}")
    if medium.gamma == 0 and omega == medium.omega_t and medium.coupling != 0:
        raise PoleError(f"undamped resonance evaluated on its pole (omega = {omega})")
    eps = _lorentz_complex(medium.omega_t, medium.coupling, medium.gamma, omega)
    return Permittivity(eps.real, eps.imag)


def epsilon_table(medium: TabulatedMedium, omega: float) -> Permittivity:
    w = medium.frequencies
    if not w[0] <= omega <= w[-1]:
        raise DomainError(f"frequency {omega} outside tabulated range [{w[0]}, {w[-1]}]")
    re = float(np.interp(omega, w, medium.values.real))
    im = float(np.interp(omega, w, medium.values.imag))
    return Permittivity(re, im)


def epsilon(medium: Medium, omega: float) -> Permittivity:
    if isinstance(medium, LorentzMedium):
        return epsilon_lorentz(medium, omega)
    return epsilon_table(medium, omega)


def refractive_index(eps: Permittivity) -> RefractiveIndex:
    """Principal square root of ``eps`` for a passive medium.

    The larger of the two half-angle roots is taken directly and the other
    one recovered from ``2 eta kappa = eps_im``, which avoids the
    cancellation in ``|eps| - eps_re`` (or ``|eps| + eps_re``) near the
    real axis.
    """
    if eps.im < 0:
        raise DomainError(f"eps_im = {eps.im} < 0; gain media are not supported")
    mod = eps.modulus
    if mod == 0.0:
        return RefractiveIndex(0.0, 0.0)
    if eps.re >= 0:
        eta = math.sqrt(0.5 * (mod + eps.re))
        kappa = eps.im / (2.0 * eta)
    else:
        kappa = math.sqrt(0.5 * (mod - eps.re))
        eta = eps.im / (2.0 * kappa)
    return RefractiveIndex(eta, kappa)


def static_epsilon(medium: Medium, allow_lowest: bool = False) -> float:
    """Real static permittivity ``eps(0)``.

    Tables never contain ``omega = 0``; with ``allow_lowest`` the real part
    at the lowest tabulated frequency stands in for it.
    """
    if isinstance(medium, LorentzMedium):
        return 1.0 + medium.coupling**2
    if not allow_lowest:
        raise DomainError(
            "tabulated medium does not cover omega = 0; pass allow_lowest=True "
            "to use the lowest-frequency sample"
        )
    return float(medium.values.real[0])


def sample_lorentz(medium: LorentzMedium, frequencies) -> TabulatedMedium:
    w = np.asarray(frequencies, dtype=float)
    eps = 1.0 + (medium.coupling * medium.omega_t) ** 2 / (
        medium.omega_t**2 - w**2 - 1j * medium.gamma * w
    )
    return TabulatedMedium(w, eps, source=f"lorentz(gamma={medium.gamma})")


def load_table(path: Union[str, PathLike]) -> TabulatedMedium:
    """Read ``omega eps_re eps_im`` records; ``#`` starts a comment."""
    data = np.loadtxt(path, comments="#", ndmin=2)
    if data.shape[1] != 3:
        raise DomainError(f"{path}: expected 3 columns, found {data.shape[1]}")
    return TabulatedMedium(data[:, 0], data[:, 1] + 1j * data[:, 2], source=str(path))


@dataclass(frozen=True, eq=False)
class KKResult:
    frequencies: np.ndarray
    residuals: np.ndarray
    max_abs: float


def kk_residual(medium: TabulatedMedium) -> KKResult:
    """Kramers-Kronig residual ``eps_re - 1 - (2/pi) PV int w' eps_im / (w'^2 - w^2)``.

    The principal value is taken by subtracting ``g(w) = w eps_im(w)`` from
    the numerator; the subtracted piece integrates in closed form over the
    table support. The remaining integrand is regular and handled with the
    trapezoidal rule, its removable singularity replaced by ``g'(w)/(2w)``.

    ``eps_im`` is assumed to vanish outside the table, so the grid must
    carry essentially all absorption. Residuals are reported on interior
    knots only: at the two end knots the truncated principal value
    diverges logarithmically unless ``eps_im`` is exactly zero there.
    """
    w = medium.frequencies
    if w.size < KK_MIN_POINTS:
        raise DomainError(f"KK check needs at least {KK_MIN_POINTS} samples, got {w.size}")
    g = w * medium.values.imag
    dg = np.gradient(g, w, edge_order=2)
    a, b = w[0], w[-1]

    interior = w[1:-1]
    res = np.empty(interior.size)
    for k, wk in enumerate(interior, start=1):
        denom = w**2 - wk**2
        denom[k] = 1.0
        h = (g - g[k]) / denom
        h[k] = dg[k] / (2.0 * wk)
        pv_const = math.log((b - wk) * (wk + a) / ((b + wk) * (wk - a))) / (2.0 * wk)
        integral = trapezoid(h, w) + g[k] * pv_const
        res[k - 1] = medium.values.real[k] - 1.0 - 2.0 / math.pi * integral
    return KKResult(interior, res, float(np.max(np.abs(res))))
