"""Lower bound on the cavity parameter r from positivity of the transverse rate.

For a given medium the smallest ``r = lambda_T / r_bar`` is sought such that
``Gamma_perp(omega_a) >= 0`` for every transition frequency on the spectral
grid. The spectral minimum is found by a grid scan (compiled kernel for
Lorentz media) refined by golden-section search; the boundary in r is
bracketed geometrically and bisected.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from . import kernels
from .errors import DomainError, MonotonicityError, NoSignChangeError, NumericalError
from .permittivity import DEFAULT_COUPLING, LorentzMedium, Medium, TabulatedMedium

GOLDEN_TOL = 1e-10
MONOTONE_SCAN_POINTS = 16
R_FLOOR = 1e-3
R_CEILING = 1e6


@dataclass(frozen=True)
class SpectrumGrid:
    """Uniform grid of transition frequencies (units of omega_t)."""

    omega_min: float = 0.5
    omega_max: float = 1.5
    count: int = 2000

    def __post_init__(self):
        if not 0 < self.omega_min < self.omega_max:
            raise DomainError(
                f"need 0 < omega_min < omega_max, got [{self.omega_min}, {self.omega_max}]"
            )
        if self.count < 2:
            raise DomainError(f"grid needs at least 2 points, got {self.count}")

    def omegas(self) -> np.ndarray:
        return np.linspace(self.omega_min, self.omega_max, self.count)

    def covers_gap(self, medium: LorentzMedium) -> bool:
        return self.omega_min <= medium.omega_t and medium.omega_l <= self.omega_max


@dataclass(frozen=True)
class SpectralMinimum:
    omega_star: float
    value: float


@dataclass(frozen=True)
class RminResult:
    gamma: float
    r_min: float
    omega_critical: float
    value_at_r_min: float
    bracket: tuple[float, float]
    bracket_values: tuple[float, float]
    tol: float
    iterations: int


@dataclass(frozen=True)
class RminRow:
    gamma: float
    status: str
    result: Optional[RminResult] = None
    message: str = field(default="", compare=False)

    @property
    def r_min(self) -> float:
        return self.result.r_min if self.result else math.nan

    @property
    def omega_critical(self) -> float:
        return self.result.omega_critical if self.result else math.nan


def _scalar_rate(medium: Medium, r: float) -> Callable[[float], float]:
    if isinstance(medium, LorentzMedium):
        args = (medium.omega_t, medium.coupling, medium.gamma, r)
        return lambda w: kernels.gamma_perp_lorentz(w, *args)
    w_tab, eps_tab = medium.frequencies, medium.values

    def rate(w):
        er = np.interp(w, w_tab, eps_tab.real)
        ei = np.interp(w, w_tab, eps_tab.imag)
        return float(kernels.gamma_perp_from_eps(w, er, ei, r))

    return rate


def _grid_values(medium: Medium, r: float, omegas: np.ndarray) -> np.ndarray:
    if isinstance(medium, LorentzMedium):
        return kernels.gamma_perp_lorentz_grid(
            omegas, medium.omega_t, medium.coupling, medium.gamma, r
        )
    w_tab = medium.frequencies
    if omegas[0] < w_tab[0] or omegas[-1] > w_tab[-1]:
        raise DomainError("spectral grid extends beyond the tabulated frequency range")
    er = np.interp(omegas, w_tab, medium.values.real)
    ei = np.interp(omegas, w_tab, medium.values.imag)
    return kernels.gamma_perp_from_eps(omegas, er, ei, r)


def _local_minima(vals: np.ndarray) -> np.ndarray:
    """Indices of interior discrete local minima (NaN never qualifies)."""
    mid = vals[1:-1]
    with np.errstate(invalid="ignore"):
        mask = (mid <= vals[:-2]) & (mid <= vals[2:])
    return np.nonzero(mask)[0] + 1


def min_gamma_perp(medium: Medium, r: float, grid: SpectrumGrid = SpectrumGrid()) -> SpectralMinimum:
    """Minimum over the grid of Gamma_perp / Gamma0.

    Every discrete local minimum of the samples is refined by golden-section
    search inside its two neighbouring cells. Near the resonance the true
    minimum can hide between samples while the coarse global argmin sits
    in a different, shallower valley.
    """
    if not r > 0:
        raise DomainError(f"r must be positive, got {r}")
    omegas = grid.omegas()
    vals = _grid_values(medium, r, omegas)
    if np.all(np.isnan(vals)):
        raise NumericalError("transverse rate is undefined on the whole grid")
    i = int(np.nanargmin(vals))
    best_w, best_v = float(omegas[i]), float(vals[i])
    f = _scalar_rate(medium, r)
    for k in _local_minima(vals):
        try:
            res = minimize_scalar(
                f, bracket=(omegas[k - 1], omegas[k], omegas[k + 1]),
                method="golden", tol=GOLDEN_TOL,
            )
        except ValueError:
            # flat triple: the sample itself is the minimum
            continue
        if res.fun < best_v:
            best_w, best_v = float(res.x), float(res.fun)
    return SpectralMinimum(best_w, best_v)


def _check_monotone(f: Callable[[float], float], lo: float, hi: float) -> None:
    rs = np.geomspace(lo, hi, MONOTONE_SCAN_POINTS)
    vals = np.array([f(r) for r in rs])
    slack = 1e-12 * np.maximum(1.0, np.abs(vals[:-1]))
    bad = np.nonzero(np.diff(vals) < -slack)[0]
    if bad.size:
        k = int(bad[0])
        raise MonotonicityError(
            f"spectral minimum decreases from r={rs[k]:.6g} ({vals[k]:.6g}) "
            f"to r={rs[k + 1]:.6g} ({vals[k + 1]:.6g})"
        )


def find_r_min(
    medium: Medium,
    grid: SpectrumGrid = SpectrumGrid(),
    tol: float = 1e-6,
    r_start: float = 1.0,
) -> RminResult:
    """Smallest r keeping Gamma_perp non-negative across ``grid``.

    Raises :class:`NoSignChangeError` when the rate stays non-negative down
    to ``r = 1e-3`` and :class:`MonotonicityError` when the spectral minimum
    is not non-decreasing in r across the bracket.
    """
    if not 0 < tol <= 1e-2:
        raise DomainError(f"tol must lie in (0, 1e-2], got {tol}")

    def f(r):
        return min_gamma_perp(medium, r, grid).value

    r = r_start
    if f(r) < 0:
        lo = r
        hi = 2.0 * r
        while f(hi) < 0:
            lo, hi = hi, 2.0 * hi
            if hi > R_CEILING:
                raise NumericalError(f"transverse rate still negative at r = {hi:.3g}")
    else:
        hi = r
        lo = 0.5 * r
        while f(lo) >= 0:
            hi, lo = lo, 0.5 * lo
            if lo < R_FLOOR:
                raise NoSignChangeError(
                    f"transverse rate non-negative for all r down to {R_FLOOR:g}"
                )
    _check_monotone(f, lo, hi)

    f_lo, f_hi = f(lo), f(hi)
    iterations = 0
    while hi - lo > tol * lo:
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid < 0:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
        iterations += 1
    r_min = 0.5 * (lo + hi)
    at = min_gamma_perp(medium, r_min, grid)
    gamma = medium.gamma if isinstance(medium, LorentzMedium) else math.nan
    return RminResult(
        gamma, r_min, at.omega_star, at.value, (lo, hi), (f_lo, f_hi), tol, iterations
    )


def _row(medium: LorentzMedium, grid: SpectrumGrid, tol: float) -> RminRow:
    try:
        res = find_r_min(medium, grid, tol)
    except NoSignChangeError as exc:
        return RminRow(medium.gamma, "no_sign_change", None, str(exc))
    except MonotonicityError as exc:
        return RminRow(medium.gamma, "monotonicity_violation", None, str(exc))
    except NumericalError as exc:
        return RminRow(medium.gamma, "numerical_error", None, str(exc))
    return RminRow(medium.gamma, "ok", res)


def rmin_curve(
    gammas: Sequence[float],
    grid: SpectrumGrid = SpectrumGrid(),
    tol: float = 1e-6,
    coupling: float = DEFAULT_COUPLING,
    omega_t: float = 1.0,
    jobs: int = 1,
) -> list[RminRow]:
    """One row per damping value, in input order; solver failures become statuses."""
    media = []
    for g in gammas:
        if not g > 0:
            raise DomainError(f"damping must be positive, got {g}")
        media.append(LorentzMedium(g, coupling, omega_t))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda m: _row(m, grid, tol), media))
    return [_row(m, grid, tol) for m in media]


def gamma_range(start: float, stop: float, step: float) -> list[float]:
    """Inclusive arithmetic range, rounded to suppress float drift in labels."""
    n = int(round((stop - start) / step))
    return [round(start + k * step, 12) for k in range(n + 1)]


def monotone_nonincreasing(rows: Iterable[RminRow]) -> bool:
    """True if r_min never increases with gamma.

    Rows without a sign change count as ``r_min <= 1e-3`` (the floor of the
    bracket search), so they may only follow solved rows.
    """
    prev = math.inf
    for row in sorted(rows, key=lambda x: x.gamma):
        if row.status == "ok":
            cur = row.r_min
        elif row.status == "no_sign_change":
            cur = R_FLOOR
        else:
            return False
        if cur > prev:
            return False
        prev = cur
    return True
