"""Airy-type uniform approximation for psi'' = (V(x) - E) psi.

The comparison equation is the Airy equation, reached through the point
transformation X = F(x) with integral p dx = (2/3) X^(3/2). X > 0 on the
classically forbidden side, so Ai(X) decays there.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate, optimize, special

from .errors import NoTurningPoint, MultipleTurningPoints, DomainError

TURNING_TOL = 1e-12
SCAN_POINTS = 2001


def airy_ai(x):
    """Ai(x); scalar or array."""
    return special.airy(x)[0]


def airy_ai_prime(x):
    return special.airy(x)[1]


@dataclass(frozen=True)
class Potential1D:
    V: Callable[[float], float]
    E: float
    x_lo: float
    x_hi: float

    def p_squared(self, x):
        return self.E - self.V(x)


def turning_point(pot: Potential1D) -> float:
    """The single x with V(x) = E in the domain, by bisection."""
    xs = np.linspace(pot.x_lo, pot.x_hi, SCAN_POINTS)
    g = np.array([pot.V(x) - pot.E for x in xs])
    roots = [float(x) for x, v in zip(xs, g) if v == 0.0]
    changes = np.nonzero(np.sign(g[:-1]) * np.sign(g[1:]) < 0)[0]
    brackets = [(float(xs[i]), float(xs[i + 1])) for i in changes]
    if len(roots) + len(brackets) == 0:
        raise NoTurningPoint("V(x) - E has no sign change in the domain")
    if len(roots) + len(brackets) > 1:
        raise MultipleTurningPoints(f"{len(roots) + len(brackets)} turning points found")
    if roots:
        return roots[0]
    a, b = brackets[0]
    return optimize.bisect(lambda x: pot.V(x) - pot.E, a, b, xtol=TURNING_TOL)


def _action(pot: Potential1D, x0: float, xt: float) -> float:
    lo, hi = sorted((x0, xt))
    val, _ = integrate.quad(lambda x: math.sqrt(abs(pot.E - pot.V(x))), lo, hi,
                            epsabs=1e-14, epsrel=1e-13, limit=200)
    return val


def action_map(pot: Potential1D, x0: float, xt: float | None = None) -> float:
    """X0 with (2/3)|X0|^(3/2) = |integral_{x0}^{x_t} |p| dx|, positive where forbidden."""
    if not pot.x_lo <= x0 <= pot.x_hi:
        raise DomainError(f"x0 = {x0} outside [{pot.x_lo}, {pot.x_hi}]")
    xt = turning_point(pot) if xt is None else xt
    s = _action(pot, x0, xt)
    mag = (1.5 * s) ** (2.0 / 3.0)
    return mag if pot.V(x0) > pot.E else -mag


def _force(pot: Potential1D, xt: float) -> float:
    h = 1e-5 * max(1.0, abs(xt))
    return (pot.V(xt + h) - pot.V(xt - h)) / (2.0 * h)


def uniform_wavefunction(pot: Potential1D, x0: float, xt: float | None = None) -> float:
    """|X0|^(1/4) / |p(x0)|^(1/2) Ai(X0).

    At the turning point the prefactor tends to V'(x_t)^(-1/6), the limit of
    (X0 / (V - E))^(1/4) as X0 ~ V'(x_t)^(1/3) (x - x_t).
    """
    xt = turning_point(pot) if xt is None else xt
    X0 = action_map(pot, x0, xt)
    p2 = abs(pot.p_squared(x0))
    if abs(x0 - xt) < 1e-9 * max(1.0, abs(xt)) or p2 == 0.0 or X0 == 0.0:
        pref = abs(_force(pot, xt)) ** (-1.0 / 6.0)
    else:
        pref = (abs(X0) / p2) ** 0.25
    return pref * float(airy_ai(X0))
