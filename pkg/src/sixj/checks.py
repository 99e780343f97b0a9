"""Numerical verification routines shared by ``sixj diag`` and the test-suite.

Each check returns a :class:`CheckReport` holding the measured numbers and a
pass flag against the stated threshold.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .airy import Potential1D, airy_ai, turning_point, uniform_wavefunction
from .dsphere import alpha_residual, quantum_numbers, solve_alpha
from .exact import SixJArguments, intermediate_bounds, j23sq_operator, sixj_exact, wigner_d_matrix
from .symbols import (SphereFunction, commutator_bracket_check, coordinate_functions, leading_symbol,
                      su2_generators)
from .tetra import Tetrahedron, j12_caustics, j23_squared_symbol, ponzano_regge_phase, sphere_data
from .uniform import ponzano_regge_estimate, solve_beta, uniform_sixj
from .errors import CausticDivergence, SolverError


@dataclass
class CheckReport:
    name: str
    passed: bool
    measured: dict = field(default_factory=dict)

    def line(self) -> str:
        vals = ", ".join(f"{k}={_fmt(v)}" for k, v in self.measured.items())
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {vals}"


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.3e}"
    return str(v)


# ---------------------------------------------------------------------------
# tetrahedra


def random_tetrahedron(rng: np.random.Generator, lo=2.0, hi=20.0, min_rel_volume=0.05) -> Tetrahedron:
    """Edges of four random points, kept away from flat configurations."""
    while True:
        pts = rng.uniform(-1.0, 1.0, size=(4, 3)) * rng.uniform(lo, hi)
        d = lambda a, b: float(np.linalg.norm(pts[a] - pts[b]))
        edges = (d(0, 2), d(1, 2), d(1, 3), d(0, 3), d(0, 1), d(2, 3))
        vol = abs(np.linalg.det(pts[1:] - pts[0])) / 6.0
        if vol > min_rel_volume * max(edges) ** 3 / (6 * math.sqrt(2)) and min(edges) > 0.5:
            return Tetrahedron(*edges)


def schlafli_check(n: int = 50, seed: int = 0, step: float = 1e-4, tol: float = 1e-5) -> CheckReport:
    """Central difference of Phi_PR in J12 against psi_12 = pi - phi_12."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        t = random_tetrahedron(rng)
        e = list(t.edges)
        e[4] += step
        up = ponzano_regge_phase(Tetrahedron(*e))
        e[4] -= 2 * step
        down = ponzano_regge_phase(Tetrahedron(*e))
        worst = max(worst, abs((up - down) / (2 * step) - (math.pi - t.phi[4])))
    return CheckReport("schlafli", worst <= tol, {"max_deviation": worst, "samples": n})


# ---------------------------------------------------------------------------
# symbols


def shape_args(shape, j_target):
    """Scale a spin shape so that (D - 1)/2 equals j_target."""
    base = intermediate_bounds(*shape).j
    factor = j_target / base
    if factor != int(factor):
        raise ValueError(f"shape {shape} cannot reach j = {j_target}")
    return [int(factor) * s for s in shape]


def tetra_j23sq_function(spins) -> SphereFunction:
    """J23^2 of the tetrahedron as a function on the 6j-sphere."""
    b = intermediate_bounds(*spins)
    J = b.D / 2.0
    avg = float(b.j12_min + b.j12_max) / 2.0 + 0.5
    Js = [float(s) + 0.5 for s in spins]

    def func(theta, phi):
        T, P = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
        out = np.empty(T.shape)
        for idx in np.ndindex(T.shape):
            out[idx] = j23_squared_symbol(*Js, J * math.cos(T[idx]) + avg, P[idx])
        return out

    return SphereFunction(func, J)


def symbol_deviation(spins, n_grid: int = 50) -> float:
    """Relative sup-norm distance between the leading symbol of J23^2 and the tetrahedron J23^2."""
    b = intermediate_bounds(*spins)
    ls = leading_symbol(j23sq_operator(*spins), b.j)
    _, _, v1 = ls.grid(n_grid, n_grid)
    _, _, v2 = tetra_j23sq_function(spins).grid(n_grid, n_grid)
    return float(np.max(np.abs(v1 - v2)) / np.max(np.abs(v2)))


def symbol_convergence(shape=(2, 3, 4, 5), j_lo=20, j_hi=40, band=(0.3, 0.7)) -> CheckReport:
    d1 = symbol_deviation(shape_args(shape, j_lo))
    d2 = symbol_deviation(shape_args(shape, j_hi))
    ratio = d2 / d1
    return CheckReport("symbol", band[0] <= ratio <= band[1],
                       {"dev_lo": d1, "dev_hi": d2, "ratio": ratio})


def bracket_deviation(spins) -> float:
    b = intermediate_bounds(*spins)
    op = j23sq_operator(*spins)
    g = su2_generators(b.j)
    kz = coordinate_functions(b.D / 2.0)[2]
    return commutator_bracket_check(g.Kz, op, b.j, symbol_a=kz, symbol_b=tetra_j23sq_function(spins)).relative


def bracket_scaling(shape=(2, 3, 4, 5), j_lo=20, j_hi=40, band=(0.3, 0.7)) -> CheckReport:
    d1 = bracket_deviation(shape_args(shape, j_lo))
    d2 = bracket_deviation(shape_args(shape, j_hi))
    ratio = d2 / d1
    return CheckReport("bracket", band[0] <= ratio <= band[1],
                       {"dev_lo": d1, "dev_hi": d2, "ratio": ratio})


def d_orthogonality(j_values=(10, 20, 50, 100), beta=1.1, tol=1e-11) -> CheckReport:
    worst = 0.0
    for j in j_values:
        d = wigner_d_matrix(j, beta)
        worst = max(worst, float(np.max(np.abs(d @ d.T - np.eye(d.shape[0])))))
    return CheckReport("d_orthogonality", worst <= tol, {"max_deviation": worst, "j_max": max(j_values)})


# ---------------------------------------------------------------------------
# beta and alpha


def admissible_heights(args: SixJArguments):
    """K_z range on which the J23 level set of ``args`` exists."""
    sd = sphere_data(args)
    c = j12_caustics(args.J1, args.J2, args.J3, args.J4, args.J23)
    return c[0] - sd.j12_avg_shifted, c[1] - sd.j12_avg_shifted


def alpha_check(args: SixJArguments | None = None, n: int = 25, tol: float = 1e-9) -> CheckReport:
    args = args or SixJArguments(2, 3, 4, 5, 4, 5)
    beta = solve_beta(args).beta
    _, m, _ = quantum_numbers(args)
    alpha_c1 = solve_alpha(args, beta, float(m))
    lo, hi = admissible_heights(args)
    worst = 0.0
    for c in np.linspace(lo, hi, n):
        a = solve_alpha(args, beta, float(c))
        worst = max(worst, abs(alpha_residual(args, beta, float(c), a)))
    ok = alpha_c1 == 0.0 and worst <= tol
    return CheckReport("alpha", ok, {"alpha_c1": alpha_c1, "max_residual": worst, "heights": n})


# ---------------------------------------------------------------------------
# Airy demo

HARMONIC_E = 1.0 / math.sqrt(2.0)


def harmonic_potential() -> Potential1D:
    """V = x^2/2 at its ground-state energy 1/sqrt(2) on x >= 0 (one turning point)."""
    return Potential1D(lambda x: 0.5 * x * x, HARMONIC_E, 0.0, 8.0)


def harmonic_ode_solution(xs, x_start=7.0):
    """Integrate psi'' = (V - E) psi inward from WKB-decaying data at x_start.

    Inward integration amplifies the solution that decays outward, so the
    result does not depend on the closed-form ground state.
    """
    from scipy.integrate import solve_ivp

    E = HARMONIC_E
    y0 = [1.0, -math.sqrt(0.5 * x_start ** 2 - E)]
    sol = solve_ivp(lambda x, y: [y[1], (0.5 * x * x - E) * y[0]], [x_start, min(xs)], y0,
                    method="DOP853", rtol=1e-12, atol=1e-14, dense_output=True)
    return sol.sol(np.asarray(xs))[0]


def airy_check(tol_ramp=1e-10, tol_harmonic=0.01) -> CheckReport:
    ramp = Potential1D(lambda x: x, 0.0, -10.0, 3.0)
    xs = np.linspace(-10.0, 3.0, 131)
    ramp_err = max(abs(uniform_wavefunction(ramp, x, 0.0) - float(airy_ai(x))) for x in xs)
    h = harmonic_potential()
    xt = turning_point(h)
    window = np.linspace(0.75 * xt, 1.75 * xt, 61)
    u = np.array([uniform_wavefunction(h, x, xt) for x in window])
    ode = harmonic_ode_solution(np.append(window, xt))
    u_t = uniform_wavefunction(h, xt, xt)
    scale = ode[-1] / u_t
    rel = float(np.max(np.abs(u * scale / ode[:-1] - 1.0)))
    return CheckReport("airy", ramp_err <= tol_ramp and rel <= tol_harmonic,
                       {"ramp_error": ramp_err, "harmonic_rel_error": rel})


# ---------------------------------------------------------------------------
# uniform accuracy sweeps


@dataclass
class SweepRow:
    j23: int
    exact: float
    uniform: float
    pr: float | None
    classification: str
    beta: float


def sweep_j23(spins, j12) -> list[SweepRow]:
    b = intermediate_bounds(*spins)
    rows = []
    for k in range(b.D):
        args = SixJArguments(*spins, j12, b.j23_min + k)
        ex = sixj_exact(args)
        try:
            r = uniform_sixj(args)
            uni, cls, beta = r.value, r.classification.value, r.beta
        except SolverError:
            uni, cls, beta = math.nan, "failed", math.nan
        try:
            pr = ponzano_regge_estimate(args)
        except CausticDivergence:
            pr = None
        rows.append(SweepRow(int(args.j23), ex, uni, pr, cls, beta))
    return rows


def pointwise_rms(rows) -> float:
    rel = [(r.uniform - r.exact) / r.exact for r in rows]
    return math.sqrt(sum(e * e for e in rel) / len(rel))


def normalized_rms(rows) -> float:
    num = sum((r.uniform - r.exact) ** 2 for r in rows)
    den = sum(r.exact ** 2 for r in rows)
    return math.sqrt(num / den)
