"""Brute-force references that share no code with the solver path."""
import numpy as np


def gamma_perp_dense(omega, gamma, r, coupling=0.46):
    """Transverse rate from complex arithmetic and numpy's principal sqrt."""
    eps = 1.0 + coupling**2 / (1.0 - omega**2 - 1j * gamma * omega)
    n = np.sqrt(eps)
    x = r / (2.0 * np.pi * omega)
    lf2 = np.abs((eps + 2.0) / 3.0) ** 2
    return (
        n.real * (lf2 - 2.0 * eps.imag**2 / 9.0)
        - eps.imag * (eps.real + 2.0) * (2.0 / 9.0 * n.imag - x / 3.0)
        + eps.imag * x**3 / 3.0
    )


def dense_rmin_scan(gamma, r_values, omega, coupling=0.46):
    """Smallest scanned r from which the grid minimum stays non-negative.

    Returns ``(r_min_upper, r_below)``: the first admissible scanned r and
    its predecessor (``None`` when the whole scan is admissible).
    """
    mins = np.array([gamma_perp_dense(omega, gamma, r, coupling).min() for r in r_values])
    bad = np.nonzero(mins < 0)[0]
    if bad.size == 0:
        return r_values[0], None
    k = bad[-1]
    if k == len(r_values) - 1:
        return None, r_values[k]
    return r_values[k + 1], r_values[k]
