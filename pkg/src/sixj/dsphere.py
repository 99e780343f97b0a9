"""The normal-form sphere: level sets J_z = m and J_n = m' of radius J = j + 1/2.

J_n is J_z rotated by beta about the y-axis, J_n = J_x sin(beta) + J_z cos(beta).
On the circle J_z = m the azimuth chi is measured from the plane holding both
axes, so the tilted circle is symmetric under chi -> -chi.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import DomainError, NoIntersection, NoRoot
from .exact import SixJArguments
from .tetra import QUAD_TOL, lune_area_6j

SCAN_POINTS = 64
ROOT_TOL = 1e-12


def quantum_numbers(args: SixJArguments):
    """(j, m, m') with j = (D-1)/2, m = j12 - j12_avg, m' = j23_avg - j23."""
    b = args.bounds
    j = Fraction(b.D - 1, 2)
    m = args.j12 - (b.j12_min + b.j12_max) / 2
    mp = (b.j23_min + b.j23_max) / 2 - args.j23
    return j, m, mp


def polar_angle(J: float, m: float) -> float:
    return math.acos(max(-1.0, min(1.0, m / J)))


def beta_window(J: float, m: float, mp: float):
    """Closed interval of beta on which the circles J_z = m and J_n = m' meet."""
    tm = polar_angle(J, m)
    tp = polar_angle(J, mp)
    return abs(tm - tp), min(tm + tp, 2.0 * math.pi - tm - tp)


@dataclass(frozen=True)
class DSphereConfig:
    """Normal-form parameters with the intersection point of the two circles.

    ``Jy`` is the in-plane coordinate (m' - m cos beta)/sin beta of the
    intersection point, ``phi0`` the matching angle with
    sin(phi0) = Jy / sqrt(J^2 - m^2). ``Jy_normal`` is the coordinate normal to
    that plane, sqrt(J^2 - m^2) cos(phi0); it vanishes at tangency and is the
    one that enters {J_z, J_n} = sin(beta) * Jy_normal.
    """

    j: float
    m: float
    mp: float
    beta: float
    J: float = field(init=False)
    phi0: float = field(init=False)
    Jy: float = field(init=False)
    Jy_normal: float = field(init=False)

    def __post_init__(self):
        j, m, mp = (float(Fraction(v)) for v in (self.j, self.m, self.mp))
        if abs(m) > j or abs(mp) > j:
            raise DomainError(f"|m|, |m'| must not exceed j={j}")
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "mp", mp)
        J = j + 0.5
        object.__setattr__(self, "J", J)
        phi0, jy, jn = _intersection(J, m, mp, float(self.beta))
        object.__setattr__(self, "phi0", phi0)
        object.__setattr__(self, "Jy", jy)
        object.__setattr__(self, "Jy_normal", jn)

    @property
    def exists(self) -> bool:
        return not math.isnan(self.phi0)

    @property
    def bracket_Jz_Jn(self) -> float:
        """|{J_z, J_n}| at the intersection point."""
        return abs(math.sin(self.beta) * self.Jy_normal)


def _intersection(J, m, mp, beta, slack=1e-12):
    sb = math.sin(beta)
    rho = math.sqrt(max(J * J - m * m, 0.0))
    if sb == 0.0 or rho == 0.0:
        return math.nan, math.nan, math.nan
    jy = (mp - m * math.cos(beta)) / sb
    s = jy / rho
    if abs(s) > 1.0 + slack:
        return math.nan, jy, math.nan
    s = max(-1.0, min(1.0, s))
    phi0 = math.asin(s)
    return phi0, jy, rho * math.cos(phi0)


def intersection(cfg: DSphereConfig):
    """(phi0, Jy) of the circles J_z = m and J_n = m'."""
    if not cfg.exists:
        raise NoIntersection(f"circles J_z={cfg.m} and J_n={cfg.mp} do not meet at beta={cfg.beta}")
    return cfg.phi0, cfg.Jy


def _d_params(J, mp, beta):
    return (J, mp, math.cos(beta), math.sin(beta))


def tangency_heights(J, mp, beta):
    """Lowest and highest J_z reached by the circle J_n = m'."""
    tp = polar_angle(J, mp)
    top = J * math.cos(abs(beta - tp))
    bottom = J * math.cos(min(beta + tp, 2.0 * math.pi - beta - tp))
    return bottom, top


def lune_area_d(j, m, mp, beta, tol: float = QUAD_TOL, base: float | None = None) -> float:
    """Area of {J_z >= base} intersected with {J_n >= m'}; base defaults to m.

    Areas are symplectic, measured with dJ_z dphi (geometric area over J).

    Computed as 2 * integral_{base}^{J} chi(J_z) dJ_z, with chi clamped to 0 or
    pi where the tilted circle misses the circle of height J_z.
    """
    J = float(j) + 0.5
    m = float(m)
    mp = float(mp)
    base = m if base is None else float(base)
    if not 0.0 < beta < math.pi:
        raise DomainError("beta must lie in (0, pi)")
    lo, hi = tangency_heights(J, mp, beta)
    slack = 1e-12 * J
    if base < lo - slack or base > hi + slack:
        raise NoIntersection(f"J_z = {base} misses the circle J_n = {mp} at beta = {beta}")
    base = min(max(base, lo), hi)
    params = _d_params(J, mp, beta)
    body, _ = kernels.lune_integral(kernels.KIND_D, params, base, hi, 1, kernels.MODE_ARCCOS, tol / 2)
    # above the top of the tilted circle the cap J_n >= m' holds all or nothing
    tail = math.pi * (J - hi) if mp - hi * math.cos(beta) < 0 else 0.0
    return 2.0 * (body + tail)


def cap_area(J: float, h: float) -> float:
    """Symplectic area of the cap {z >= h} on a sphere of radius J."""
    return 2.0 * math.pi * (J - h)


# ---------------------------------------------------------------------------
# root solving


def scan_bisect(f, lo, hi, n=SCAN_POINTS, tol=ROOT_TOL, diagnostics=None):
    """Root of f on [lo, hi]: uniform scan for a sign change, then bisection."""
    xs = np.linspace(lo, hi, n)
    fs = []
    for x in xs:
        try:
            fs.append(f(float(x)))
        except NoIntersection:
            fs.append(math.nan)
    bracket = None
    for i in range(n):
        if fs[i] == 0.0:
            return float(xs[i])
        if i and not math.isnan(fs[i - 1]) and not math.isnan(fs[i]) and (fs[i - 1] < 0) != (fs[i] < 0):
            bracket = (float(xs[i - 1]), float(xs[i]), fs[i - 1])
            break
    if bracket is None:
        raise NoRoot("no sign change in the scan window",
                     {"x": [float(x) for x in xs], "f": fs} if diagnostics is None else diagnostics)
    a, b, fa = bracket
    while b - a > tol:
        mid = 0.5 * (a + b)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0) == (fa < 0):
            a, fa = mid, fm
        else:
            b = mid
    return 0.5 * (a + b)


def solve_alpha(args: SixJArguments, beta_fixed: float, c: float, tol: float = QUAD_TOL) -> float:
    """Tilt correction alpha(c) of the canonical map at height c.

    Solves L6(c) - L6(c1) = Ld(beta - alpha, c) - Ld(beta, c1), with L6, Ld
    the lune areas on the two spheres measured from the base circles at
    height c (and c1 = m).
    """
    j, m, mp = quantum_numbers(args)
    J = float(j) + 0.5
    c1 = float(m)
    if c == c1:
        return 0.0
    lhs = lune_area_6j(args, tol=tol, base=c).value - lune_area_6j(args, tol=tol).value
    ref = lune_area_d(j, m, mp, beta_fixed, tol=tol)

    def residual(alpha):
        b = beta_fixed - alpha
        if not 0.0 < b < math.pi:
            raise NoIntersection("tilt outside (0, pi)")
        return lune_area_d(j, m, mp, b, tol=tol, base=c) - ref - lhs

    lo_b, hi_b = beta_window(J, c, float(mp))
    lo_b = max(lo_b, 1e-12)
    hi_b = min(hi_b, math.pi - 1e-12)
    # alpha = beta - b; scan over b so the window is exactly the intersecting one
    b = scan_bisect(lambda bb: residual(beta_fixed - bb), lo_b, hi_b)
    return beta_fixed - b


def alpha_residual(args: SixJArguments, beta_fixed: float, c: float, alpha: float, tol: float = QUAD_TOL):
    j, m, mp = quantum_numbers(args)
    lhs = lune_area_6j(args, tol=tol, base=c).value - lune_area_6j(args, tol=tol).value
    rhs = (lune_area_d(j, m, mp, beta_fixed - alpha, tol=tol, base=c)
           - lune_area_d(j, m, mp, beta_fixed, tol=tol))
    return lhs - rhs
