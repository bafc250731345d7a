"""Spontaneous decay of an atom in an absorbing dielectric, including the
noise-polarization contribution to the Clausius-Mosotti local field."""

from .consistency import StructureConstant, commutator_coefficient, validity_margin
from .green_average import (
    AveragedDelta,
    AveragedGreen,
    CavityGeometry,
    averaged_delta,
    averaged_green,
    ball_average_oracle,
)
from .permittivity import (
    LorentzMedium,
    Permittivity,
    RefractiveIndex,
    TabulatedMedium,
    epsilon_lorentz,
    epsilon_table,
    kk_residual,
    load_table,
    refractive_index,
    static_epsilon,
)
from .rates import (
    RateBreakdown,
    Transition,
    assemble_breakdown,
    breakdown_at,
    gamma0,
    gamma_classical,
    gamma_par,
    gamma_perp,
)
from .rmin import RminResult, SpectrumGrid, find_r_min, min_gamma_perp, rmin_curve

__version__ = "0.1.0"
