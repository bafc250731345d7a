# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled transverse-rate kernel for the single-resonance Lorentz medium.

Mirrors ``_lorentz_py`` operation for operation; see that module for the
formulas.
"""
from libc.math cimport sqrt, hypot, NAN, M_PI
import numpy as np

cdef inline double _perp(double w, double wt, double f, double g, double r) noexcept nogil:
    cdef double a = wt * wt - w * w
    cdef double b = g * w
    cdef double d = a * a + b * b
    cdef double s = (f * wt) * (f * wt)
    cdef double er, ei, mod, eta, kappa, lf2, x
    if d == 0.0:
        return NAN
    er = 1.0 + s * a / d
    ei = s * b / d
    mod = hypot(er, ei)
    if er >= 0.0:
        eta = sqrt(0.5 * (mod + er))
        kappa = ei / (2.0 * eta)
    else:
        kappa = sqrt(0.5 * (mod - er))
        eta = ei / (2.0 * kappa)
    lf2 = ((er + 2.0) * (er + 2.0) + ei * ei) / 9.0
    x = r * wt / (2.0 * M_PI * w)
    return (eta * (lf2 - 2.0 * ei * ei / 9.0)
            - ei * (er + 2.0) * (2.0 / 9.0 * kappa - x / 3.0)
            + ei * x * x * x / 3.0)


cpdef double gamma_perp_lorentz(double omega, double omega_t, double coupling,
                                double gamma, double r):
    return _perp(omega, omega_t, coupling, gamma, r)


def gamma_perp_lorentz_grid(double[::1] omegas, double omega_t, double coupling,
                            double gamma, double r):
    cdef Py_ssize_t i, n = omegas.shape[0]
    out = np.empty(n)
    cdef double[::1] o = out
    with nogil:
        for i in range(n):
            o[i] = _perp(omegas[i], omega_t, coupling, gamma, r)
    return out
