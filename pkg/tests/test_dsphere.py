import math
from fractions import Fraction as F

import numpy as np
import pytest

from sixj.checks import alpha_check
from sixj.dsphere import (DSphereConfig, beta_window, cap_area, intersection, lune_area_d, quantum_numbers,
                          scan_bisect, solve_alpha, tangency_heights)
from sixj.errors import DomainError, NoIntersection, NoRoot
from sixj.exact import SixJArguments


def monte_carlo_area(J, m, mp, beta, n=400_000, seed=0):
    """Symplectic area (dz dphi, i.e. geometric area / J) of {z >= m} and {n.x >= m'} by sampling."""
    rng = np.random.default_rng(seed)
    v = rng.normal(size=(n, 3))
    v *= J / np.linalg.norm(v, axis=1)[:, None]
    jn = v[:, 0] * math.sin(beta) + v[:, 2] * math.cos(beta)
    frac = np.mean((v[:, 2] >= m) & (jn >= mp))
    return 4 * math.pi * J * frac, 4 * math.pi * J * math.sqrt(frac * (1 - frac) / n)


def test_quantum_numbers():
    assert quantum_numbers(SixJArguments(2, 3, 4, 5, 4, 4)) == (2, 1, 1)


def test_intersection_example():
    cfg = DSphereConfig(2, 0, 1, math.pi / 2)
    phi0, jy = intersection(cfg)
    assert cfg.J == 2.5
    assert jy == pytest.approx(1.0)
    assert phi0 == pytest.approx(math.asin(1.0 / 2.5))
    # the bracket uses the normal coordinate, sqrt(J^2 - m^2 - Jy^2)
    assert cfg.bracket_Jz_Jn == pytest.approx(math.sqrt(6.25 - 1.0))


def test_missed_circles():
    cfg = DSphereConfig(2, 2, -2, 0.1)
    assert not cfg.exists
    with pytest.raises(NoIntersection):
        intersection(cfg)


def test_half_integer_and_negative_projections():
    cfg = DSphereConfig(F(7, 2), F(-3, 2), F(1, 2), 1.0)
    assert cfg.m == -1.5 and cfg.exists


@pytest.mark.parametrize("J,m,mp,beta", [(2.5, 0.0, 1.0, math.pi / 2), (10.5, 3.0, -2.0, 1.2),
                                         (10.5, -4.0, 5.0, 2.0), (5.5, 1.0, 1.0, 0.4)])
def test_area_against_monte_carlo(J, m, mp, beta):
    lo, hi = tangency_heights(J, mp, beta)
    assert lo <= m <= hi
    mc, sigma = monte_carlo_area(J, m, mp, beta)
    assert lune_area_d(J - 0.5, m, mp, beta) == pytest.approx(mc, abs=4 * sigma + 1e-9)


def test_area_monotone_in_beta():
    J, m, mp = 10.5, 3.0, -2.0
    lo, hi = beta_window(J, m, mp)
    bs = np.linspace(lo + 1e-3, hi - 1e-3, 25)
    vals = [lune_area_d(J - 0.5, m, mp, b) for b in bs]
    assert all(np.diff(vals) < 0)


def test_swap_symmetry():
    # reflection through the plane bisecting the two axes swaps J_z and J_n
    for m, mp, b in [(3.0, -2.0, 1.2), (-1.0, 4.0, 0.9)]:
        assert lune_area_d(10, m, mp, b) == pytest.approx(lune_area_d(10, mp, m, b), abs=1e-9)


def test_tangency_limits():
    J, m, mp = 10.5, 3.0, -2.0
    lo, hi = beta_window(J, m, mp)
    # at the wide end the circles touch from outside: only the tangency point is shared
    assert lune_area_d(J - 0.5, m, mp, hi - 1e-10) == pytest.approx(0.0, abs=1e-3)
    # at the narrow end one cap contains the other, so the area is the smaller cap
    small = min(cap_area(J, m), cap_area(J, mp))
    assert lune_area_d(J - 0.5, m, mp, lo + 1e-10) == pytest.approx(small, abs=1e-3)


def test_beta_outside_open_interval():
    with pytest.raises(DomainError):
        lune_area_d(3, 0, 0, 0.0)


def test_scan_bisect():
    assert scan_bisect(math.cos, 0.0, 3.0) == pytest.approx(math.pi / 2, abs=1e-12)
    with pytest.raises(NoRoot) as exc:
        scan_bisect(lambda x: x * x + 1, -1.0, 1.0)
    assert "f" in exc.value.diagnostics


def test_alpha_vanishes_at_base():
    args = SixJArguments(2, 3, 4, 5, 4, 5)
    _, m, _ = quantum_numbers(args)
    assert solve_alpha(args, 1.0, float(m)) == 0.0


def test_alpha_residuals():
    rep = alpha_check(n=9)
    assert rep.passed, rep.line()
