"""Uniform approximation of the 6j-symbol in terms of a rotation matrix.

    {j1 j2 j12; j3 j4 j23} ~ (-1)^gamma sqrt(|{J_z,J_n}| / (24 V)) d^j_{m m'}(beta)

with beta fixed by equating the lune areas on the 6j-sphere and the d-sphere.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .dsphere import (ROOT_TOL, DSphereConfig, beta_window, lune_area_d, quantum_numbers,
                      scan_bisect, tangency_heights)
from .errors import AmbiguousPhase, CausticDivergence, NoIntersection, NoRoot
from .exact import SixJArguments, wigner_d
from .tetra import (Classification, QUAD_TOL, Tetrahedron, j12_caustics, lune_area_6j,
                    ponzano_regge_phase, sphere_data)
from . import kernels

RESIDUAL_TOL = 1e-9


class Regime(enum.Enum):
    ALLOWED = "allowed"
    CAUSTIC = "caustic"
    FORBIDDEN = "forbidden"


@dataclass(frozen=True)
class Phi0:
    value: float
    integer_multiple: int


def phi_zero(args: SixJArguments) -> Phi0:
    """(J1 + J2 + J3 + J4 + J12 - J12_max) pi, kept as an exact multiple of pi."""
    b = args.bounds
    k = args.j1 + args.j2 + args.j3 + args.j4 + args.j12 - b.j12_max + 2
    assert k.denominator == 1
    return Phi0(float(k) * math.pi, int(k))


def schlafli_lune_area(args: SixJArguments) -> float:
    """Closed-form lune area 2 (Phi_PR - Phi_0) + pi, valid in the allowed region."""
    t = Tetrahedron.from_args(args)
    return 2.0 * (ponzano_regge_phase(t) - phi_zero(args).value) + math.pi


@dataclass(frozen=True)
class BetaSolution:
    beta: float
    residual: float
    classification: Regime
    lune_6j: float
    lune_d: float
    experimental: bool = False


def _regime(t: Tetrahedron) -> Regime:
    if t.classification is Classification.ALLOWED:
        return Regime.ALLOWED
    if t.classification is Classification.DEGENERATE:
        return Regime.CAUSTIC
    return Regime.FORBIDDEN


def solve_beta(args: SixJArguments, tol: float = QUAD_TOL, root_tol: float = ROOT_TOL) -> BetaSolution:
    """Tilt beta equating the lune areas on the two spheres."""
    t = Tetrahedron.from_args(args)
    regime = _regime(t)
    if regime is Regime.FORBIDDEN:
        return _solve_beta_forbidden(args, tol, root_tol)
    j, m, mp = quantum_numbers(args)
    J = float(j) + 0.5
    try:
        target = lune_area_6j(args, tol=tol).value
    except NoIntersection:
        if regime is Regime.CAUSTIC:
            return _solve_beta_forbidden(args, tol, root_tol)
        raise
    lo, hi = beta_window(J, float(m), float(mp))
    lo = max(lo, 1e-12)
    hi = min(hi, math.pi - 1e-12)

    def f(b):
        return lune_area_d(j, m, mp, b, tol=tol) - target

    try:
        beta = scan_bisect(f, lo, hi, tol=root_tol)
    except NoRoot as exc:
        # a caustic sits on a window endpoint, where f vanishes without changing sign
        ends = [(abs(f(x)), x) for x in (lo, hi)]
        best = min(ends)
        if best[0] > 1e3 * RESIDUAL_TOL:
            raise NoRoot("lune areas cannot be matched", {
                "lune_6j": target, "window": (lo, hi), "scan": exc.diagnostics}) from exc
        beta = best[1]
    ld = lune_area_d(j, m, mp, beta, tol=tol)
    return BetaSolution(beta, ld - target, regime, target, ld)


def _imaginary_action_6j(args, tol):
    sd = sphere_data(args)
    c = j12_caustics(args.J1, args.J2, args.J3, args.J4, args.J23)
    if c is None:
        raise NoIntersection("no caustic for this J23")
    k_lo, k_hi = c[0] - sd.j12_avg_shifted, c[1] - sd.j12_avg_shifted
    if sd.m < k_lo:
        a, b, sub, side = sd.m, k_lo, 1, "above"
    elif sd.m > k_hi:
        a, b, sub, side = k_hi, sd.m, 2, "below"
    else:
        return 0.0, "inside"
    val, _ = kernels.lune_integral(kernels.KIND_6J, sd.params, a, b, sub, kernels.MODE_ARCCOSH, tol / 2)
    return 2.0 * val, side


def _imaginary_action_d(j, m, mp, beta, tol):
    J = float(j) + 0.5
    lo, hi = tangency_heights(J, float(mp), beta)
    params = (J, float(mp), math.cos(beta), math.sin(beta))
    m = float(m)
    if m < lo:
        val, _ = kernels.lune_integral(kernels.KIND_D, params, m, lo, 1, kernels.MODE_ARCCOSH, tol / 2)
        return 2.0 * val, "above"
    if m > hi:
        val, _ = kernels.lune_integral(kernels.KIND_D, params, hi, m, 2, kernels.MODE_ARCCOSH, tol / 2)
        return 2.0 * val, "below"
    return 0.0, "inside"


def _solve_beta_forbidden(args, tol, root_tol=ROOT_TOL):
    """Continue the area match into the forbidden region (experimental).

    Both lune integrands become arccosh|x| on the stretch between the base
    circle and the nearest tangency; beta is moved off the intersection window
    until the two imaginary actions agree.
    """
    target, side = _imaginary_action_6j(args, tol)
    j, m, mp = quantum_numbers(args)
    J = float(j) + 0.5
    lo, hi = beta_window(J, float(m), float(mp))
    candidates = [(1e-9, lo), (hi, math.pi - 1e-9)]

    def f(b):
        val, s = _imaginary_action_d(j, m, mp, b, tol)
        if s == "inside":
            # the window edge: circles touch, the imaginary action is zero
            return -target
        if s != side:
            raise NoIntersection("wrong side")
        return val - target

    for a, b in candidates:
        if b - a <= 1e-9:
            continue
        try:
            beta = scan_bisect(f, a, b, tol=root_tol)
        except NoRoot:
            continue
        return BetaSolution(beta, f(beta), Regime.FORBIDDEN, target, target + f(beta), experimental=True)
    raise NoRoot("forbidden-region continuation found no tilt", {"action_6j": target, "side": side})


def amplitude(args: SixJArguments, cfg: DSphereConfig, tetra: Tetrahedron | None = None) -> float:
    """sqrt(|{J_z,J_n}| / |{J12,J23}|) / sqrt(4 J12 J23) = sqrt(|sin beta J_y| / (24 V))."""
    t = tetra if tetra is not None else Tetrahedron.from_args(args)
    if t.classification is Classification.ALLOWED and cfg.exists:
        return math.sqrt(cfg.bracket_Jz_Jn / (24.0 * t.volume))
    if t.classification is Classification.FORBIDDEN:
        # continuation: both brackets are imaginary, their ratio stays real
        rho2 = cfg.J ** 2 - cfg.m ** 2
        jn = math.sqrt(abs(rho2 - cfg.Jy ** 2))
        return math.sqrt(abs(math.sin(cfg.beta)) * jn / (24.0 * math.sqrt(-t.volume_squared)))
    return caustic_amplitude(args)


def _bracket_ratio(args: SixJArguments, T: float, tol: float) -> float:
    """|{J_z,J_n}| / (24 V) along the continuous family J23 = T, m' = J23_avg - T."""
    sd = sphere_data(args)
    b = args.bounds
    j = (b.D - 1) / 2.0
    J = j + 0.5
    mp = (float(b.j23_min + b.j23_max) / 2.0 + 0.5) - T
    t = Tetrahedron(args.J1, args.J2, args.J3, args.J4, args.J12, T)
    params = sd.params[:5] + (T * T,)
    c = j12_caustics(args.J1, args.J2, args.J3, args.J4, T)
    k_hi = c[1] - sd.j12_avg_shifted
    body, _ = kernels.lune_integral(kernels.KIND_6J, params, sd.m, k_hi, 1, kernels.MODE_ARCCOS, tol / 2)
    x_top = kernels.lune_cos_argument(kernels.KIND_6J, params, k_hi)
    target = 2.0 * (body + (math.pi * (J - k_hi) if x_top < 0 else 0.0))
    lo, hi = beta_window(J, sd.m, mp)
    beta = scan_bisect(lambda bb: lune_area_d(j, sd.m, mp, bb, tol=tol) - target,
                       max(lo, 1e-12), min(hi, math.pi - 1e-12))
    cfg = DSphereConfig(j, Fraction(sd.m).limit_denominator(4), Fraction(mp).limit_denominator(10 ** 12), beta)
    return cfg.bracket_Jz_Jn / (24.0 * t.volume)


def caustic_amplitude(args: SixJArguments, tol: float = QUAD_TOL, steps=(0.08, 0.12, 0.16, 0.2, 0.24),
                      T: float | None = None) -> float:
    """Amplitude at a caustic as the limit of the bracket ratio.

    Both brackets vanish like the square root of the distance to the caustic;
    their ratio is smooth there, so it is sampled along the continuous J23
    family on the allowed side and extrapolated to the caustic with a
    polynomial fit. ``T`` overrides the J23 edge (e.g. an exact caustic
    value between two quantized levels); m' follows it linearly.
    """
    T0 = args.J23 if T is None else float(T)
    h = 1e-6 * T0
    t_plus = Tetrahedron(args.J1, args.J2, args.J3, args.J4, args.J12, T0 + h)
    direction = 1.0 if t_plus.classification is Classification.ALLOWED else -1.0
    xs = np.array(steps)
    ys = np.array([_bracket_ratio(args, T0 + direction * s, tol) for s in xs])
    coef = np.polyfit(xs, ys, len(xs) - 1)
    return math.sqrt(max(np.polyval(coef, 0.0), 0.0))


def gamma_parity(args: SixJArguments, cfg: DSphereConfig | None = None) -> int:
    """Parity of the phase (-1)^gamma.

    Far from caustics d^j_{m m'}(beta) ~ (-1)^(j-m') sqrt(2/(pi |{J_z,J_n}|))
    cos(L_d/2 - pi/4), and the lune area obeys L/2 = Phi_PR - Phi_0 + pi/2.
    Matching to cos(Phi_PR + pi/4)/sqrt(12 pi V) gives
    gamma = Phi_0/pi + j - m' (mod 2).
    """
    j, m, mp = quantum_numbers(args)
    k = phi_zero(args).integer_multiple + (j - mp)
    if Fraction(k).denominator != 1:
        raise AmbiguousPhase("j - m' must be an integer")
    return int(k) % 2


def primitive_gamma_parity(args: SixJArguments, tol: float = QUAD_TOL) -> int:
    """gamma from the primitive phases directly, from the quadrature lune area.

    Used to validate :func:`gamma_parity`; needs an allowed tetrahedron.
    """
    t = Tetrahedron.from_args(args)
    if t.classification is not Classification.ALLOWED or t.phi is None:
        raise AmbiguousPhase("primitive phases need an allowed tetrahedron")
    lune = lune_area_6j(args, tol=tol).value
    n = (lune / 2.0 - math.pi / 2.0 - ponzano_regge_phase(t)) / math.pi
    k = round(n)
    if abs(n - k) > 0.25:
        raise AmbiguousPhase(f"phase offset {n} is not near an integer")
    j, m, mp = quantum_numbers(args)
    return int(-k + (j - mp)) % 2


@dataclass(frozen=True)
class UniformResult:
    value: float
    beta: float
    amplitude: float
    d_value: float
    gamma_parity: int
    classification: Regime
    residual: float
    lune_6j: float
    lune_d: float
    experimental: bool = False
    config: DSphereConfig | None = field(default=None, repr=False)


def uniform_sixj(args: SixJArguments, tol: float = QUAD_TOL, root_tol: float = ROOT_TOL) -> UniformResult:
    """The uniform approximation of {j1 j2 j12; j3 j4 j23}."""
    sol = solve_beta(args, tol=tol, root_tol=root_tol)
    j, m, mp = quantum_numbers(args)
    cfg = DSphereConfig(j, m, mp, sol.beta)
    t = Tetrahedron.from_args(args)
    amp = amplitude(args, cfg, t)
    d = wigner_d(j, m, mp, sol.beta)
    g = gamma_parity(args, cfg)
    value = (-1.0) ** g * amp * d
    return UniformResult(value, sol.beta, amp, d, g, sol.classification, sol.residual,
                         sol.lune_6j, sol.lune_d, sol.experimental, cfg)


def ponzano_regge_estimate(args: SixJArguments, rel_tol: float = 1e-9) -> float:
    """Primitive estimate cos(Phi_PR + pi/4) / sqrt(12 pi V)."""
    t = Tetrahedron.from_args(args)
    if t.classification is not Classification.ALLOWED or t.phi is None:
        raise CausticDivergence("Ponzano-Regge amplitude diverges at V = 0 and is complex beyond")
    return math.cos(ponzano_regge_phase(t) + math.pi / 4.0) / math.sqrt(12.0 * math.pi * t.volume)
