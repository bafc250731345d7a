"""Equal-time commutator check for the noise-corrected local field.

With a local-field relation ``E_loc = E + (1/3 + s) P / eps0`` the
commutator ``[E_loc, B_loc]`` picks up a factor
``1 + alpha^2 (eps_S - 1) / 9`` with ``alpha = 1 + 3 s``. Canonical QED
needs this factor close to one.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import DomainError

STRICT_LIMIT = 0.1
VIOLATION_LIMIT = 1.0


@dataclass(frozen=True)
class StructureConstant:
    """Departure ``s`` from cubic symmetry; ``s = 0`` is the cubic case."""

    s: float = 0.0

    @property
    def alpha(self) -> float:
        return 1.0 + 3.0 * self.s


@dataclass(frozen=True)
class ValidityMargin:
    rho: float
    classification: str  # "strict" | "marginal" | "violated"


def _as_structure(s: Union[StructureConstant, float]) -> StructureConstant:
    return s if isinstance(s, StructureConstant) else StructureConstant(float(s))


def _margin(eps_static: float, s: StructureConstant) -> float:
    if not eps_static >= 1.0:
        raise DomainError(f"static permittivity must be >= 1, got {eps_static}")
    return s.alpha**2 * (eps_static - 1.0) / 9.0


def commutator_coefficient(eps_static: float, s: Union[StructureConstant, float] = 0.0) -> float:
    return 1.0 + _margin(eps_static, _as_structure(s))


def classify(rho: float) -> str:
    if rho < STRICT_LIMIT:
        return "strict"
    if rho < VIOLATION_LIMIT:
        return "marginal"
    return "violated"


def validity_margin(eps_static: float, s: Union[StructureConstant, float] = 0.0) -> ValidityMargin:
    rho = _margin(eps_static, _as_structure(s))
    return ValidityMargin(rho, classify(rho))
