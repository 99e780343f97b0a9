"""Leading-order symbols of spin operators on the sphere of radius J = j + 1/2.

Basis kets are ordered by ascending K_z eigenvalue m = -j, ..., j. A Hermitian
tridiagonal operator with diagonal a(m) and upper element u(m) = <m-1|O|m>
is written A + J_- B + B^* J_+ with B(m) = u(m) / sqrt((j+m)(j-m+1)); its
leading symbol is A(K_z) + 2 Re B(K_z) K_x + 2 Im B(K_z) K_y.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy.interpolate import FloaterHormannInterpolator

from .errors import DimensionMismatch, PoleProximity
from .exact import TridiagonalOperator, as_spin

INTERP_DEGREE = 3


@dataclass(frozen=True)
class GeneratorTriple:
    Kx: np.ndarray
    Ky: np.ndarray
    Kz: np.ndarray
    j: Fraction


def _ladder_radicands(j: Fraction):
    """Integers r(m) with J_+|m> = sqrt(r(m)) |m+1>, for m = -j .. j-1."""
    n = int(2 * j)
    return [int((j - m) * (j + m + 1)) for m in (-j + k for k in range(n))]


def su2_generators(j) -> GeneratorTriple:
    """K_x, K_y, K_z in the ascending-m basis."""
    j = as_spin(j)
    dim = int(2 * j) + 1
    jp = np.zeros((dim, dim), dtype=complex)
    for k, r in enumerate(_ladder_radicands(j)):
        jp[k + 1, k] = math.sqrt(r)
    jm = jp.conj().T
    kz = np.diag([float(-j + k) for k in range(dim)]).astype(complex)
    return GeneratorTriple((jp + jm) / 2, (jp - jm) / 2j, kz, j)


def su2_algebra_exact(j) -> bool:
    """[J_+, J_-] = 2 K_z and the Casimir j(j+1), checked in integer arithmetic.

    J_+ J_- and J_- J_+ are diagonal with entries r(m-1) and r(m), so both
    identities reduce to exact statements about the integer radicands.
    """
    j = as_spin(j)
    r = _ladder_radicands(j)
    dim = len(r) + 1
    ms = [-j + k for k in range(dim)]
    ok = True
    for k, m in enumerate(ms):
        up_down = r[k - 1] if k > 0 else 0      # <m|J_+ J_-|m>
        down_up = r[k] if k < dim - 1 else 0    # <m|J_- J_+|m>
        ok &= (up_down - down_up == 2 * m)
        # K_x^2 + K_y^2 = (J_+J_- + J_-J_+)/2
        ok &= (Fraction(up_down + down_up, 2) + m * m == j * (j + 1))
    return bool(ok)


@dataclass(frozen=True)
class SphereFunction:
    """A function on the sphere of radius J, called as f(theta, phi)."""

    func: Callable
    J: float
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __call__(self, theta, phi):
        return self.func(theta, phi)

    def at(self, kz, phi):
        """Evaluate in canonical coordinates (K_z, phi)."""
        return self.func(np.arccos(np.clip(np.asarray(kz) / self.J, -1.0, 1.0)), phi)

    def grid(self, n_theta: int = 50, n_phi: int = 50):
        """Cell-centred grid values, shape (n_theta, n_phi); cached."""
        key = (n_theta, n_phi)
        if key not in self._cache:
            th = (np.arange(n_theta) + 0.5) * math.pi / n_theta
            ph = (np.arange(n_phi) + 0.5) * 2.0 * math.pi / n_phi
            T, P = np.meshgrid(th, ph, indexing="ij")
            self._cache[key] = (th, ph, np.asarray(self.func(T, P), dtype=float))
        return self._cache[key]


def coordinate_functions(J: float):
    """(K_x, K_y, K_z) as SphereFunctions."""
    return (SphereFunction(lambda t, p: J * np.sin(t) * np.cos(p), J),
            SphereFunction(lambda t, p: J * np.sin(t) * np.sin(p), J),
            SphereFunction(lambda t, p: J * np.cos(t) + 0.0 * p, J))


def _interp(nodes, values):
    nodes = np.asarray(nodes, dtype=float)
    values = np.asarray(values)
    if len(nodes) == 1:
        v = values[0]
        return lambda z: np.full_like(np.asarray(z, dtype=float), v, dtype=values.dtype)
    d = min(INTERP_DEGREE, len(nodes) - 1)
    if np.iscomplexobj(values):
        re = FloaterHormannInterpolator(nodes, values.real, d=d)
        im = FloaterHormannInterpolator(nodes, values.imag, d=d)
        return lambda z: re(z) + 1j * im(z)
    return FloaterHormannInterpolator(nodes, values, d=d)


def leading_symbol(op, j) -> SphereFunction:
    """Leading symbol of a Hermitian tridiagonal operator.

    ``op`` is a :class:`TridiagonalOperator` or a square matrix in the
    ascending-m basis; entries beyond the first off-diagonal are ignored.
    Diagonal and scaled off-diagonal are interpolated in K_z through the
    quantized nodes (Floater-Hormann barycentric rational interpolation).
    """
    j = as_spin(j)
    dim = int(2 * j) + 1
    if isinstance(op, TridiagonalOperator):
        diag = np.asarray(op.diag, dtype=float)
        upper = np.asarray(op.offdiag, dtype=float)
    else:
        mat = np.asarray(op)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DimensionMismatch("operator must be a square matrix")
        diag = np.real(np.diag(mat))
        upper = np.diag(mat, 1)
        if not np.iscomplexobj(upper) or np.allclose(np.imag(upper), 0.0):
            upper = np.real(upper)
    if len(diag) != dim:
        raise DimensionMismatch(f"operator has dimension {len(diag)}, spin {j} needs {dim}")
    J = float(j) + 0.5
    ms = np.array([float(-j + k) for k in range(dim)])
    a = _interp(ms, diag)
    if dim > 1:
        ket = ms[1:]
        norm = np.sqrt((float(j) + ket) * (float(j) - ket + 1.0))
        b = _interp(ket, upper / norm)
    else:
        b = None

    def func(theta, phi):
        theta = np.asarray(theta, dtype=float)
        phi = np.asarray(phi, dtype=float)
        kz = J * np.cos(theta)
        val = a(kz)
        if b is not None:
            rho = J * np.sin(theta)
            bv = b(kz)
            val = val + 2.0 * rho * (np.real(bv) * np.cos(phi) + np.imag(bv) * np.sin(phi))
        return np.real(val)

    return SphereFunction(func, J)


def _partial(fn, x, h):
    """Central difference with one Richardson step."""
    d1 = (fn(x + h) - fn(x - h)) / (2.0 * h)
    d2 = (fn(x + h / 2) - fn(x - h / 2)) / h
    return (4.0 * d2 - d1) / 3.0


def poisson_bracket(f: SphereFunction, g: SphereFunction, point) -> float:
    """{f, g} = f_phi g_Kz - f_Kz g_phi at ``point = (theta, phi)``."""
    theta, phi = (float(v) for v in point)
    if min(theta, math.pi - theta) <= 1e-6:
        raise PoleProximity("Poisson bracket needs a point away from the poles")
    J = f.J
    kz = J * math.cos(theta)
    h = 1e-5 * J
    hz = min(h, 0.5 * (J - abs(kz)))

    def along_phi(fn):
        return _partial(lambda p: float(fn.at(kz, p)), phi, h)

    def along_kz(fn):
        return _partial(lambda z: float(fn.at(z, phi)), kz, hz)

    return along_phi(f) * along_kz(g) - along_kz(f) * along_phi(g)


@dataclass(frozen=True)
class BracketReport:
    deviation: float
    scale: float
    relative: float
    j: float
    coefficient: float


def commutator_bracket_check(opA, opB, j, symbol_a: SphereFunction | None = None,
                             symbol_b: SphereFunction | None = None, n_grid: int = 50) -> BracketReport:
    """Compare symbol([A, B]/i) with {a, b} on an n_grid x n_grid grid.

    ``symbol_a``/``symbol_b`` default to the leading symbols of the operators;
    pass a known phase-space function (e.g. the tetrahedron J23^2) to measure
    the O(1/j) correction of the correspondence. ``coefficient`` is the
    relative deviation times j.
    """
    A = opA.dense() if isinstance(opA, TridiagonalOperator) else np.asarray(opA)
    B = opB.dense() if isinstance(opB, TridiagonalOperator) else np.asarray(opB)
    if A.shape != B.shape:
        raise DimensionMismatch("operators differ in dimension")
    C = (A @ B - B @ A) / 1j
    sc = leading_symbol(C, j)
    sa = symbol_a if symbol_a is not None else leading_symbol(A, j)
    sb = symbol_b if symbol_b is not None else leading_symbol(B, j)
    th, ph, cvals = sc.grid(n_grid, n_grid)
    dev = 0.0
    scale = 0.0
    for a_i, t in enumerate(th):
        for b_i, p in enumerate(ph):
            pb = poisson_bracket(sa, sb, (t, p))
            dev = max(dev, abs(cvals[a_i, b_i] - pb))
            scale = max(scale, abs(pb))
    rel = dev / scale if scale > 0 else dev
    jf = float(as_spin(j))
    return BracketReport(dev, scale, rel, jf, rel * jf)
