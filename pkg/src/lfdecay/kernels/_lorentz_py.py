"""NumPy implementation of the Lorentz transverse-rate kernel.

Used when the compiled extension is unavailable or when
``LFDECAY_BACKEND=python`` is set.
"""
import math

import numpy as np


def _eps_parts(omega, omega_t, coupling, gamma):
    a = omega_t * omega_t - omega * omega
    b = gamma * omega
    d = a * a + b * b
    s = (coupling * omega_t) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        return 1.0 + s * a / d, s * b / d


def gamma_perp_from_eps(omega, eps_re, eps_im, r, omega_t=1.0):
    """Transverse rate in units of Gamma0 from sampled permittivity."""
    omega = np.asarray(omega, dtype=float)
    er = np.asarray(eps_re, dtype=float)
    ei = np.asarray(eps_im, dtype=float)
    mod = np.hypot(er, ei)
    pos = er >= 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        eta_p = np.sqrt(0.5 * (mod + er))
        kap_n = np.sqrt(0.5 * (mod - er))
        eta = np.where(pos, eta_p, ei / (2.0 * kap_n))
        kappa = np.where(pos, ei / (2.0 * eta_p), kap_n)
    lf2 = ((er + 2.0) * (er + 2.0) + ei * ei) / 9.0
    x = r * omega_t / (2.0 * math.pi * omega)
    return (eta * (lf2 - 2.0 * ei * ei / 9.0)
            - ei * (er + 2.0) * (2.0 / 9.0 * kappa - x / 3.0)
            + ei * x * x * x / 3.0)


def gamma_perp_lorentz_grid(omegas, omega_t, coupling, gamma, r):
    omegas = np.ascontiguousarray(omegas, dtype=float)
    er, ei = _eps_parts(omegas, omega_t, coupling, gamma)
    return gamma_perp_from_eps(omegas, er, ei, r, omega_t)


def gamma_perp_lorentz(omega, omega_t, coupling, gamma, r):
    return float(gamma_perp_lorentz_grid(np.array([omega]), omega_t, coupling, gamma, r)[0])
