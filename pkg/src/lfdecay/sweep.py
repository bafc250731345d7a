"""Frequency sweeps, figure tables and their CSV/JSON serialisation."""
from __future__ import annotations

import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from typing import Sequence

import numpy as np

from .green_average import CavityGeometry
from .permittivity import LorentzMedium, Medium, epsilon, refractive_index
from .rates import Transition, assemble_breakdown, gamma_classical
from .rmin import RminRow, SpectrumGrid, gamma_range, rmin_curve


@dataclass(frozen=True)
class SweepRow:
    omega_a: float
    eps_re: float
    eps_im: float
    eta: float
    kappa: float
    gamma_perp: float
    gamma_par: float
    gamma_total: float
    gamma_cl_perp: float
    gamma_cl_par: float
    noise_perp: float
    cross_perp: float
    validity_flag: str


SWEEP_COLUMNS = tuple(f.name for f in fields(SweepRow))
RMIN_COLUMNS = ("gamma", "r_min", "omega_critical", "status")
FIGURE_R_VALUES = (10.0, 20.0, 30.0)
FIGURE_GAMMAS = {"fig1": 0.01, "fig2": 0.05, "fig3": 0.1}
FIGURE_STEPS = 600
RMIN_STEPS = 2000
PRESETS = ("fig1", "fig2", "fig3", "fig4")


def validity_flag(perp: float, par: float) -> str:
    if perp < 0 and par < 0:
        return "negative_perp_par"
    if perp < 0:
        return "negative_perp"
    if par < 0:
        return "negative_par"
    return "ok"


def sweep_row(medium: Medium, omega_a: float, geom: CavityGeometry) -> SweepRow:
    eps = epsilon(medium, omega_a)
    n = refractive_index(eps)
    b = assemble_breakdown(eps, n, Transition(omega_a), geom)
    return SweepRow(
        omega_a=omega_a,
        eps_re=eps.re,
        eps_im=eps.im,
        eta=n.eta,
        kappa=n.kappa,
        gamma_perp=b.perp,
        gamma_par=b.par,
        gamma_total=b.total,
        gamma_cl_perp=b.cl_perp,
        gamma_cl_par=b.cl_par,
        noise_perp=b.noise_perp,
        cross_perp=b.cross_perp,
        validity_flag=validity_flag(b.perp, b.par),
    )


def sweep(medium: Medium, geom: CavityGeometry, grid: SpectrumGrid, jobs: int = 1) -> list[SweepRow]:
    omegas = [float(w) for w in grid.omegas()]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda w: sweep_row(medium, w, geom), omegas))
    return [sweep_row(medium, w, geom) for w in omegas]


def figure_table(
    gamma: float,
    coupling: float = 0.46,
    omega_t: float = 1.0,
    grid: SpectrumGrid = SpectrumGrid(count=FIGURE_STEPS),
    r_values: Sequence[float] = FIGURE_R_VALUES,
) -> tuple[list[str], list[list[float]]]:
    """Classical transverse rate plus the corrected one for each r, per frequency."""
    medium = LorentzMedium(gamma, coupling, omega_t)
    geoms = [CavityGeometry(r, omega_t) for r in r_values]
    header = ["omega_a", "gamma_cl_perp"] + [f"gamma_perp_r{r:g}" for r in r_values]
    rows = []
    for w in grid.omegas():
        w = float(w)
        eps = epsilon(medium, w)
        n = refractive_index(eps)
        t = Transition(w)
        cl_perp, _ = gamma_classical(eps, n, t, geoms[0])
        row = [w, cl_perp]
        row += [assemble_breakdown(eps, n, t, g).perp for g in geoms]
        rows.append(row)
    return header, rows


def fig4_rows(
    coupling: float = 0.46,
    omega_t: float = 1.0,
    tol: float = 1e-6,
    grid: SpectrumGrid = SpectrumGrid(count=RMIN_STEPS),
    jobs: int = 1,
) -> list[RminRow]:
    return rmin_curve(gamma_range(0.005, 0.2, 0.005), grid, tol, coupling, omega_t, jobs)


# -- serialisation ----------------------------------------------------------


def fmt(value) -> str:
    """17 significant digits, locale independent; NaN as empty field."""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    value = float(value)
    if math.isnan(value):
        return ""
    return format(value, ".17g")


def to_csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _json_value(v):
    if isinstance(v, float) and math.isnan(v):
        return None
    return v


def to_json(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    records = [{k: _json_value(v) for k, v in zip(header, row)} for row in rows]
    return json.dumps(records, indent=2) + "\n"


def sweep_records(rows: Sequence[SweepRow]) -> list[list]:
    return [list(asdict(r).values()) for r in rows]


def rmin_records(rows: Sequence[RminRow]) -> list[list]:
    return [[r.gamma, r.r_min, r.omega_critical, r.status] for r in rows]
