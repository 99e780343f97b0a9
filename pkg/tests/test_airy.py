import math

import mpmath
import numpy as np
import pytest
from scipy import integrate

from sixj.airy import (Potential1D, action_map, airy_ai, airy_ai_prime, turning_point, uniform_wavefunction)
from sixj.checks import airy_check, harmonic_ode_solution, harmonic_potential
from sixj.errors import DomainError, MultipleTurningPoints, NoTurningPoint


def ai_integral(x):
    """Ai(x) for x > 0 from a steepest-descent integral, an oracle independent of scipy's Amos code."""
    zeta = 2.0 / 3.0 * x ** 1.5
    val, _ = integrate.quad(lambda s: math.exp(-math.sqrt(x) * s * s) * math.cos(s ** 3 / 3.0), 0, np.inf,
                            epsabs=1e-15, epsrel=1e-13, limit=400)
    return math.exp(-zeta) / math.pi * val


def test_values_at_origin():
    assert airy_ai(0.0) == pytest.approx(0.355028053887817239, abs=1e-15)
    assert airy_ai_prime(0.0) == pytest.approx(-0.258819403792806798, abs=1e-15)


@pytest.mark.parametrize("x", [0.5, 2.5, 5.0])
def test_integral_oracle(x):
    assert airy_ai(x) == pytest.approx(ai_integral(x), rel=1e-9)


@pytest.mark.parametrize("x", [-5.0, -1.3, 2.5, 5.0])
def test_mpmath(x):
    assert airy_ai(x) == pytest.approx(float(mpmath.airyai(x)), rel=1e-12, abs=1e-16)


def test_equation_residual():
    xs = np.linspace(-6, 4, 41)
    h = 1e-3
    second = (airy_ai(xs + h) - 2 * airy_ai(xs) + airy_ai(xs - h)) / h ** 2
    assert np.max(np.abs(second - xs * airy_ai(xs))) < 1e-6


def test_ramp_is_exact():
    ramp = Potential1D(lambda x: x, 0.0, -10.0, 3.0)
    assert turning_point(ramp) == pytest.approx(0.0, abs=1e-12)
    for x in (-9.0, -2.0, -1e-3, 0.0, 0.5, 2.9):
        assert uniform_wavefunction(ramp, x) == pytest.approx(float(airy_ai(x)), abs=1e-10)


def test_harmonic_action_closed_form():
    h = harmonic_potential()
    xt = turning_point(h)
    assert xt == pytest.approx(2 ** 0.25, abs=1e-12)
    # integral_0^xt sqrt(E - x^2/2) dx is a quarter ellipse with semi-axes sqrt(2E), sqrt(E)
    area = math.pi * math.sqrt(2) * h.E / 4
    assert action_map(h, 0.0, xt) == pytest.approx(-(1.5 * area) ** (2 / 3), rel=1e-12)
    assert action_map(h, 3.0, xt) > 0


def test_continuous_through_turning_point():
    h = harmonic_potential()
    xt = turning_point(h)
    at = uniform_wavefunction(h, xt, xt)
    for eps in (1e-4, 1e-6):
        assert uniform_wavefunction(h, xt + eps, xt) == pytest.approx(at, rel=1e-3)
        assert uniform_wavefunction(h, xt - eps, xt) == pytest.approx(at, rel=1e-3)


def test_harmonic_matches_ode_near_turning_point():
    h = harmonic_potential()
    xt = turning_point(h)
    xs = np.linspace(0.75 * xt, 1.75 * xt, 21)
    u = np.array([uniform_wavefunction(h, x, xt) for x in xs])
    ode = harmonic_ode_solution(np.append(xs, xt))
    scale = ode[-1] / uniform_wavefunction(h, xt, xt)
    assert np.max(np.abs(u * scale / ode[:-1] - 1)) < 0.01


def test_ode_solution_is_ground_state():
    # the inward integration recovers exp(-x^2/sqrt(2)/2) up to normalisation
    xs = np.array([0.0, 1.0, 2.0])
    y = harmonic_ode_solution(xs)
    ref = np.exp(-xs ** 2 / (2 * math.sqrt(2)))
    assert np.allclose(y / y[0], ref, rtol=1e-6)


def test_check_report():
    assert airy_check().passed


def test_turning_point_errors():
    with pytest.raises(NoTurningPoint):
        turning_point(Potential1D(lambda x: x * x + 1, 0.0, -1, 1))
    with pytest.raises(MultipleTurningPoints):
        turning_point(Potential1D(lambda x: x * x, 1.0, -2, 2))
    with pytest.raises(DomainError):
        action_map(harmonic_potential(), 9.0)
