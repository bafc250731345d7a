import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lfdecay.errors import DomainError, PoleError
from lfdecay.permittivity import (
    LorentzMedium,
    Permittivity,
    TabulatedMedium,
    _lorentz_complex,
    epsilon_lorentz,
    epsilon_table,
    kk_residual,
    load_table,
    refractive_index,
    sample_lorentz,
    static_epsilon,
)

MEDIUM = LorentzMedium(gamma=0.1)


def test_lorentz_static_limit():
    eps = epsilon_lorentz(MEDIUM, 0.0)
    assert eps.re == pytest.approx(1.2116, rel=1e-15)
    assert eps.im == 0.0


def test_lorentz_on_resonance():
    # denominator is -i*gamma*omega_t on resonance: 0.2116 / (-0.1 i) = 2.116 i
    eps = epsilon_lorentz(MEDIUM, 1.0)
    assert eps.re == pytest.approx(1.0, abs=1e-15)
    assert eps.im == pytest.approx(2.116, rel=1e-14)


def test_lorentz_high_frequency_transparency():
    eps = epsilon_lorentz(MEDIUM, 1e6)
    assert abs(eps.value - 1.0) < 1e-12


def test_lorentz_rejects_pole_and_negative_frequency():
    with pytest.raises(PoleError):
        epsilon_lorentz(LorentzMedium(gamma=0.0), 1.0)
    with pytest.raises(DomainError):
        epsilon_lorentz(MEDIUM, -0.5)


@pytest.mark.parametrize("kwargs", [dict(gamma=-1.0), dict(gamma=0.1, omega_t=0.0), dict(gamma=0.1, coupling=-0.2)])
def test_lorentz_medium_validation(kwargs):
    with pytest.raises(DomainError):
        LorentzMedium(**kwargs)


@given(
    w=st.floats(1e-4, 1e3),
    g=st.floats(1e-4, 10.0),
    f=st.floats(0.01, 3.0),
)
def test_lorentz_passive(w, g, f):
    assert epsilon_lorentz(LorentzMedium(g, f), w).im > 0


@given(w=st.floats(1e-4, 1e3), g=st.floats(0.0, 10.0))
def test_crossing_relation(w, g):
    plus = _lorentz_complex(1.0, 0.46, g, w)
    minus = _lorentz_complex(1.0, 0.46, g, -w)
    assert minus == pytest.approx(plus.conjugate(), rel=1e-14, abs=1e-300)


@pytest.mark.parametrize("f", [0.0, 0.46, 3.0])
def test_static_epsilon_matches_zero_frequency_limit(f):
    m = LorentzMedium(0.1, f)
    assert static_epsilon(m) == pytest.approx(1.0 + f**2, rel=1e-15)
    assert static_epsilon(m) == pytest.approx(epsilon_lorentz(m, 1e-9).re, rel=1e-12)


def test_static_epsilon_values():
    assert static_epsilon(LorentzMedium(0.1, 0.0)) == 1.0
    assert static_epsilon(LorentzMedium(0.1, 3.0)) == 10.0


def test_static_epsilon_table_needs_flag():
    t = TabulatedMedium([0.5, 1.0], [3 + 0j, 2 + 1j])
    with pytest.raises(DomainError):
        static_epsilon(t)
    assert static_epsilon(t, allow_lowest=True) == 3.0


# -- tabulated ---------------------------------------------------------------

GRID = TabulatedMedium([1.0, 2.0], [2 + 1j, 4 + 3j])


def test_table_midpoint():
    assert epsilon_table(GRID, 1.5) == Permittivity(3.0, 2.0)


def test_table_knot_reproduced():
    assert epsilon_table(GRID, 1.0) == Permittivity(2.0, 1.0)


def test_table_no_extrapolation():
    with pytest.raises(DomainError):
        epsilon_table(GRID, 2.5)


@pytest.mark.parametrize(
    "w, eps",
    [
        ([1.0], [1 + 0j]),
        ([2.0, 1.0], [1 + 0j, 1 + 0j]),
        ([1.0, 2.0], [1 + 0j, 1 - 1e-3j]),
        ([0.0, 2.0], [1 + 0j, 1 + 0j]),
    ],
)
def test_table_validation(w, eps):
    with pytest.raises(DomainError):
        TabulatedMedium(w, eps)


def test_table_is_immutable():
    with pytest.raises(ValueError):
        GRID.frequencies[0] = 5.0


def test_load_table(tmp_path):
    path = tmp_path / "medium.txt"
    path.write_text("# omega eps_re eps_im\n1.0 2.0 1.0\n\n2.0 4.0 3.0  # trailing\n")
    t = load_table(path)
    assert epsilon_table(t, 1.5) == Permittivity(3.0, 2.0)


def test_load_table_wrong_columns(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1 2\n3 4\n")
    with pytest.raises(DomainError):
        load_table(path)


# -- refractive index --------------------------------------------------------


def test_index_vacuum():
    n =refractive_index(Permittivity(1.0, 0.0))
    assert (n.eta, n.kappa) == (1.0, 0.0)


def test_index_negative_real_axis_from_above():
    n = refractive_index(Permittivity(-4.0, 0.0))
    assert (n.eta, n.kappa) == (0.0, 2.0)


def test_index_on_resonance():
    n = refractive_index(Permittivity(1.0, 2.116))
    # cross-check against the library square root
    ref = cmath.sqrt(1 + 2.116j)
    assert n.eta == pytest.approx(ref.real, rel=1e-14)
    assert n.kappa == pytest.approx(ref.imag, rel=1e-14)
    assert n.eta == pytest.approx(1.292361510490806, rel=1e-14)
    assert n.kappa == pytest.approx(0.8186563832268563, rel=1e-14)
    assert 2 * n.eta * n.kappa == pytest.approx(2.116, rel=1e-14)


def test_index_rejects_gain():
    with pytest.raises(DomainError):
        refractive_index(Permittivity(1.0, -1e-6))


@settings(max_examples=500)
@given(
    mod=st.floats(1e-6, 1e6),
    phase=st.floats(0.0, math.pi),
)
def test_index_squares_back(mod, phase):
    z = cmath.rect(mod, phase)
    eps = Permittivity(z.real, max(z.imag, 0.0))
    n = refractive_index(eps)
    assert n.eta >= 0 and n.kappa >= 0
    assert abs(n.value**2 - eps.value) <= 1e-12 * eps.modulus
    assert abs(n.eta**2 - n.kappa**2 - eps.re) <= 1e-12 * eps.modulus
    assert abs(2 * n.eta * n.kappa - eps.im) <= 1e-12 * eps.modulus


# -- Kramers-Kronig ----------------------------------------------------------


def test_kk_lorentz_dense_grid():
    m = sample_lorentz(LorentzMedium(0.1), np.logspace(-3, 3, 1024))
    res = kk_residual(m)
    assert res.max_abs < 5e-2
    assert res.residuals.shape == (1022,)


def test_kk_converges_with_grid():
    errs = [
        kk_residual(sample_lorentz(LorentzMedium(0.1), np.logspace(-3, 3, n))).max_abs
        for n in (512, 1024, 2048)
    ]
    assert errs[0] > errs[1] > errs[2]


def test_kk_vacuum():
    t = TabulatedMedium(np.linspace(0.1, 5, 20), np.ones(20, dtype=complex))
    res = kk_residual(t)
    assert res.max_abs == 0.0


def test_kk_constant_offset():
    t = TabulatedMedium(np.linspace(0.1, 5, 20), np.full(20, 2 + 0j))
    res = kk_residual(t)
    np.testing.assert_array_equal(res.residuals, 1.0)


def test_kk_short_grid_rejected():
    with pytest.raises(DomainError):
        kk_residual(TabulatedMedium(np.arange(1.0, 8.0), np.ones(7, dtype=complex)))
