import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lfdecay.errors import ConvergenceError, DomainError
from lfdecay.green_average import (
    CavityGeometry,
    ball_average,
    ball_average_delta_oracle,
    ball_average_oracle,
    averaged_delta,
    averaged_green,
    dipole_field,
    sphere_rule,
)
from lfdecay.permittivity import Permittivity, refractive_index

VACUUM = Permittivity(1.0, 0.0)
UNIT = CavityGeometry.from_radius(1.0)


def _as_array(g):
    return np.array([g.re_perp, g.im_perp, g.re_par, g.im_par])


def test_geometry_roundtrip():
    g = CavityGeometry(20.0)
    assert g.r_param * g.r_bar * g.omega_t == pytest.approx(2 * math.pi, rel=1e-15)
    assert CavityGeometry.from_radius(g.r_bar).r_param == pytest.approx(20.0, rel=1e-15)


@pytest.mark.parametrize("r", [0.0, -1.0])
def test_geometry_rejects_nonpositive(r):
    with pytest.raises(DomainError):
        CavityGeometry(r)
    with pytest.raises(DomainError):
        CavityGeometry.from_radius(r)


def test_averaged_delta_unit_radius():
    d = averaged_delta(UNIT)
    assert d.perp == pytest.approx(1 / (2 * math.pi), rel=1e-14)
    assert d.par == pytest.approx(1 / (4 * math.pi), rel=1e-14)


def test_averaged_delta_scaling():
    d = averaged_delta(CavityGeometry.from_radius(2.0))
    assert d.perp == pytest.approx(1 / (16 * math.pi), rel=1e-14)
    assert d.par == pytest.approx(1 / (32 * math.pi), rel=1e-14)


@given(st.floats(1e-3, 1e3))
def test_averaged_delta_ratio_exact(r):
    d = averaged_delta(CavityGeometry(r))
    assert d.perp / d.par == 2.0


def test_averaged_delta_oracle():
    for rb in (0.5, 1.0, 3.0):
        g = CavityGeometry.from_radius(rb)
        np.testing.assert_allclose(
            [ball_average_delta_oracle(g).perp, ball_average_delta_oracle(g).par],
            [averaged_delta(g).perp, averaged_delta(g).par],
            rtol=1e-12,
        )


def test_averaged_green_vacuum():
    g = averaged_green(VACUUM, refractive_index(VACUUM), 1.0, UNIT)
    np.testing.assert_allclose(
        _as_array(g), [1 / (4 * math.pi), 1 / (6 * math.pi), -1 / (4 * math.pi), 0.0],
        rtol=1e-14, atol=0,
    )


def test_averaged_green_pure_imaginary_eps():
    eps = Permittivity(0.0, 1.0)
    assert averaged_green(eps, refractive_index(eps), 1.0, UNIT).re_par == 0.0


def test_averaged_green_rejects_zero_eps():
    with pytest.raises(DomainError):
        averaged_green(Permittivity(0.0, 0.0), refractive_index(Permittivity(0.0, 0.0)), 1.0, UNIT)


def test_sphere_rule_moments():
    dirs, w = sphere_rule(8)
    assert w.sum() == pytest.approx(4 * math.pi, rel=1e-14)
    second = np.einsum("m,mi,mj->ij", w, dirs, dirs)
    np.testing.assert_allclose(second, 4 * math.pi / 3 * np.eye(3), atol=1e-13)
    fourth = np.einsum("m,m->", w, dirs[:, 2] ** 4)
    assert fourth == pytest.approx(4 * math.pi / 5, rel=1e-13)


def test_dipole_term_averages_to_zero():
    avg = ball_average(dipole_field, 1.0, 16)
    assert np.max(np.abs(avg)) < 1e-12


def test_ball_average_of_inverse_distance():
    # <1/R> over the unit ball = 3/2
    avg = ball_average(lambda r, d: (1.0 / r)[:, None, None, None] * np.eye(3)[None, None], 1.0, 8)
    np.testing.assert_allclose(avg, 1.5 * np.eye(3), rtol=1e-14)


def test_oracle_vacuum():
    o = ball_average_oracle(VACUUM, refractive_index(VACUUM), 1.0, UNIT)
    np.testing.assert_allclose(
        _as_array(o), [1 / (4 * math.pi), 1 / (6 * math.pi), -1 / (4 * math.pi), 0.0],
        rtol=1e-10, atol=1e-15,
    )


def test_oracle_resonant_medium():
    eps = Permittivity(1.0, 2.116)
    n = refractive_index(eps)
    np.testing.assert_allclose(
        _as_array(ball_average_oracle(eps, n, 1.0, UNIT)),
        _as_array(averaged_green(eps, n, 1.0, UNIT)),
        rtol=1e-6,
    )


def test_oracle_order_guard():
    with pytest.raises(DomainError):
        ball_average_oracle(VACUUM, refractive_index(VACUUM), 1.0, UNIT, quadrature_order=4)


def test_oracle_convergence_failure_is_reported(monkeypatch):
    import lfdecay.green_average as ga

    real = ga._oracle_once

    def skewed(eps, n, omega, geom, order):
        g = real(eps, n, omega, geom, order)
        return ga.AveragedGreen(g.re_perp * (1 + order * 1e-6), g.im_perp, g.re_par, g.im_par)

    monkeypatch.setattr(ga, "_oracle_once", skewed)
    with pytest.raises(ConvergenceError):
        ball_average_oracle(VACUUM, refractive_index(VACUUM), 1.0, UNIT)


passive = st.tuples(st.floats(-20.0, 20.0), st.floats(0.0, 50.0)).filter(lambda t: math.hypot(*t) > 1e-3)


@settings(max_examples=50, deadline=None)
@given(passive, st.floats(0.2, 5.0), st.floats(2.0, 100.0))
def test_oracle_matches_closed_form(e, w, r):
    eps = Permittivity(*e)
    n = refractive_index(eps)
    geom = CavityGeometry(r)
    a = _as_array(averaged_green(eps, n, w, geom))
    b = _as_array(ball_average_oracle(eps, n, w, geom))
    assert np.all(np.abs(a - b) <= 1e-6 * np.max(np.abs(a)))


@given(passive, st.floats(0.2, 5.0), st.floats(2.0, 100.0))
def test_scaling_and_reconstruction(e, w, r):
    eps = Permittivity(*e)
    n = refractive_index(eps)
    g1 = averaged_green(eps, n, w, CavityGeometry(r))
    g2 = averaged_green(eps, n, w, CavityGeometry(2 * r))  # r_bar halves
    base = w * n.kappa / (6 * math.pi)
    assert (g2.re_perp + base) == pytest.approx(2 * (g1.re_perp + base), rel=1e-12, abs=1e-15)
    assert g2.re_par == pytest.approx(8 * g1.re_par, rel=1e-12, abs=1e-300)
    assert g2.im_par == pytest.approx(8 * g1.im_par, rel=1e-12, abs=1e-300)
    assert g2.im_perp == g1.im_perp
    assert g1.im_perp >= 0 and g1.im_par >= 0
    rb = CavityGeometry(r).r_bar
    recon = g1.im_par * (eps.re**2 + eps.im**2) * 4 * math.pi * w**2 * rb**3
    assert recon == pytest.approx(eps.im, rel=1e-12, abs=1e-300)
