"""Exact reference computations.

6j-symbols by the Racah single sum in exact rational arithmetic, the
tridiagonal matrix of J23^2 in the |j12> basis with its eigenvector oracle,
and Wigner small-d matrices.

Spins are carried as ``fractions.Fraction``; anything ``Fraction`` accepts
(``2``, ``3.5``, ``"7/2"``) is a valid spin as long as twice it is a
non-negative integer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import DomainError, EmptySubspace, TriangleViolation, ValidationError

TRIADS = ("(j1,j2,j12)", "(j2,j3,j23)", "(j3,j4,j12)", "(j1,j4,j23)")


def as_spin(value) -> Fraction:
    try:
        s = Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"not a spin: {value!r}") from exc
    if s < 0 or (2 * s).denominator != 1:
        raise ValidationError(f"spin must be a non-negative integer or half-integer, got {value!r}")
    return s


def triangle_satisfied(a, b, c) -> bool:
    a, b, c = as_spin(a), as_spin(b), as_spin(c)
    return abs(a - b) <= c <= a + b and (a + b + c).denominator == 1


class Bounds(NamedTuple):
    j12_min: Fraction
    j12_max: Fraction
    j23_min: Fraction
    j23_max: Fraction
    D: int
    j: Fraction


def intermediate_bounds(j1, j2, j3, j4) -> Bounds:
    """Allowed ranges of j12 and j23 for four fixed spins."""
    j1, j2, j3, j4 = (as_spin(x) for x in (j1, j2, j3, j4))
    if (j1 + j2 + j3 + j4).denominator != 1:
        raise EmptySubspace("j1+j2+j3+j4 must be an integer")
    j12_min = max(abs(j1 - j2), abs(j3 - j4))
    j12_max = min(j1 + j2, j3 + j4)
    j23_min = max(abs(j2 - j3), abs(j1 - j4))
    j23_max = min(j2 + j3, j1 + j4)
    d12 = j12_max - j12_min + 1
    d23 = j23_max - j23_min + 1
    if d12 <= 0 or d23 <= 0:
        raise EmptySubspace(f"no common coupling for spins {(j1, j2, j3, j4)}")
    assert d12 == d23, "j12 and j23 ranges must have equal length"
    D = int(d12)
    return Bounds(j12_min, j12_max, j23_min, j23_max, D, Fraction(D - 1, 2))


@dataclass(frozen=True)
class SixJArguments:
    """The symbol {j1 j2 j12; j3 j4 j23}."""

    j1: Fraction
    j2: Fraction
    j3: Fraction
    j4: Fraction
    j12: Fraction
    j23: Fraction

    def __post_init__(self):
        for name in ("j1", "j2", "j3", "j4", "j12", "j23"):
            object.__setattr__(self, name, as_spin(getattr(self, name)))
        triads = (
            (self.j1, self.j2, self.j12),
            (self.j2, self.j3, self.j23),
            (self.j3, self.j4, self.j12),
            (self.j1, self.j4, self.j23),
        )
        for label, t in zip(TRIADS, triads):
            if not triangle_satisfied(*t):
                raise TriangleViolation(label, t)

    @classmethod
    def from_symbol(cls, a, b, c, d, e, f):
        """Build from the row layout {a b c; d e f}."""
        return cls(a, b, d, e, c, f)

    def symbol(self):
        return (self.j1, self.j2, self.j12, self.j3, self.j4, self.j23)

    @property
    def spins(self):
        return (self.j1, self.j2, self.j3, self.j4, self.j12, self.j23)

    @property
    def shifted(self):
        """Edge lengths J = j + 1/2 in the order (J1, J2, J3, J4, J12, J23)."""
        return tuple(float(s) + 0.5 for s in self.spins)

    J1 = property(lambda self: float(self.j1) + 0.5)
    J2 = property(lambda self: float(self.j2) + 0.5)
    J3 = property(lambda self: float(self.j3) + 0.5)
    J4 = property(lambda self: float(self.j4) + 0.5)
    J12 = property(lambda self: float(self.j12) + 0.5)
    J23 = property(lambda self: float(self.j23) + 0.5)

    @property
    def bounds(self) -> Bounds:
        return intermediate_bounds(self.j1, self.j2, self.j3, self.j4)

    def replace(self, **changes):
        values = dict(zip(("j1", "j2", "j3", "j4", "j12", "j23"), self.spins))
        values.update(changes)
        return SixJArguments(**values)

    def scaled(self, factor: int):
        return SixJArguments(*(s * factor for s in self.spins))


# ---------------------------------------------------------------------------
# exact numbers of the form r * sqrt(s)

_SMALL_PRIMES = None


def _primes(limit=10000):
    global _SMALL_PRIMES
    if _SMALL_PRIMES is None:
        sieve = bytearray([1]) * (limit + 1)
        sieve[0:2] = b"\x00\x00"
        for p in range(2, int(limit ** 0.5) + 1):
            if sieve[p]:
                sieve[p * p::p] = bytearray(len(sieve[p * p::p]))
        _SMALL_PRIMES = tuple(i for i, flag in enumerate(sieve) if flag)
    return _SMALL_PRIMES


def _split_square(n: int):
    """Write n = a^2 * b with b square-free over primes < 10^4."""
    outer, inner = 1, 1
    for p in _primes():
        if n == 1:
            break
        if p * p > n:
            break
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        if k:
            outer *= p ** (k // 2)
            if k % 2:
                inner *= p
    r = math.isqrt(n)
    if r * r == n:
        outer *= r
    else:
        inner *= n
    return outer, inner


@dataclass(frozen=True)
class ExactRational:
    """The exact number ``coef * sqrt(radicand)``."""

    coef: Fraction
    radicand: int = 1

    def __post_init__(self):
        object.__setattr__(self, "coef", Fraction(self.coef))
        if self.radicand < 0:
            raise ValueError("radicand must be non-negative")
        if self.coef == 0 or self.radicand == 0:
            object.__setattr__(self, "coef", Fraction(0))
            object.__setattr__(self, "radicand", 1)

    @classmethod
    def sqrt(cls, q) -> "ExactRational":
        q = Fraction(q)
        if q < 0:
            raise ValueError("square root of a negative rational")
        # sqrt(n/d) = sqrt(n d) / d
        outer, inner = _split_square(q.numerator * q.denominator)
        return cls(Fraction(outer, q.denominator), inner)

    def __mul__(self, other):
        if not isinstance(other, ExactRational):
            return ExactRational(self.coef * Fraction(other), self.radicand)
        outer, inner = _split_square(self.radicand * other.radicand)
        return ExactRational(self.coef * other.coef * outer, inner)

    __rmul__ = __mul__

    def __neg__(self):
        return ExactRational(-self.coef, self.radicand)

    def square(self) -> Fraction:
        return self.coef * self.coef * self.radicand

    def __float__(self):
        if self.coef == 0:
            return 0.0
        sq = self.square()
        # sqrt(n/d) to full double precision: isqrt(n * 4^k // d) / 2^k
        n, d = sq.numerator, sq.denominator
        k = max(0, 60 - (n.bit_length() - d.bit_length()) // 2)
        root = math.isqrt((n << (2 * k)) // d)
        return math.copysign(math.ldexp(float(root), -k) if root < 2 ** 1000 else
                             math.exp(0.5 * (math.log(n) - math.log(d))), float(self.coef))

    def __eq__(self, other):
        if isinstance(other, ExactRational):
            return self.coef == other.coef and self.radicand == other.radicand
        return NotImplemented

    def __hash__(self):
        return hash((self.coef, self.radicand))

    def __repr__(self):
        if self.radicand == 1:
            return f"ExactRational({self.coef})"
        return f"ExactRational({self.coef} * sqrt({self.radicand}))"


# ---------------------------------------------------------------------------
# Racah sum


@lru_cache(maxsize=4096)
def _fact(n: int) -> int:
    return math.factorial(n)


def _delta_squared(a: Fraction, b: Fraction, c: Fraction) -> Fraction:
    return Fraction(
        _fact(int(a + b - c)) * _fact(int(a - b + c)) * _fact(int(-a + b + c)),
        _fact(int(a + b + c + 1)),
    )


def sixj_exact_rational(args: SixJArguments) -> ExactRational:
    """{j1 j2 j12; j3 j4 j23} as an exact ``coef * sqrt(radicand)``."""
    if not isinstance(args, SixJArguments):
        args = SixJArguments(*args)
    a, b, c, d, e, f = args.symbol()
    pref = (_delta_squared(a, b, c) * _delta_squared(a, e, f)
            * _delta_squared(d, b, f) * _delta_squared(d, e, c))
    t_lo = int(max(a + b + c, a + e + f, d + b + f, d + e + c))
    t_hi = int(min(a + b + d + e, a + c + d + f, b + c + e + f))
    total = Fraction(0)
    for t in range(t_lo, t_hi + 1):
        den = (_fact(t - int(a + b + c)) * _fact(t - int(a + e + f))
               * _fact(t - int(d + b + f)) * _fact(t - int(d + e + c))
               * _fact(int(a + b + d + e) - t) * _fact(int(a + c + d + f) - t)
               * _fact(int(b + c + e + f) - t))
        term = Fraction(_fact(t + 1), den)
        total += -term if t % 2 else term
    return ExactRational.sqrt(pref) * total


def sixj_exact(args) -> float:
    """Exact 6j-symbol, rounded to float only on return."""
    return float(sixj_exact_rational(args))


# ---------------------------------------------------------------------------
# J23^2 in the |j12> basis


@dataclass(frozen=True)
class TridiagonalOperator:
    """Symmetric tridiagonal matrix indexed by j12 = j12_min + row.

    ``offdiag[k]`` is <j12-1|op|j12> for j12 = j12_min + k + 1.
    ``limit_rows`` lists rows whose diagonal came from the j12 -> 0 limit.
    """

    j12_min: Fraction
    diag: np.ndarray
    offdiag: np.ndarray
    limit_rows: tuple = field(default=())

    def __post_init__(self):
        d = np.asarray(self.diag, dtype=float)
        e = np.asarray(self.offdiag, dtype=float)
        if e.shape != (max(len(d) - 1, 0),):
            raise ValueError("offdiag must have length len(diag) - 1")
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
            raise ValueError("non-finite matrix element")
        d.setflags(write=False)
        e.setflags(write=False)
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)

    @property
    def dimension(self) -> int:
        return len(self.diag)

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


def _sqrt_float(q: Fraction) -> float:
    return float(ExactRational.sqrt(q))


def j23sq_diagonal(j1, j2, j3, j4, j12) -> Fraction:
    """<j12|J23^2|j12>, exact."""
    a1, a2, a3, a4 = (s * (s + 1) for s in (j1, j2, j3, j4))
    x = j12 * (j12 + 1)
    if x == 0:
        # removable limit; j12 = 0 forces j1 = j2 and j3 = j4
        return (a1 + a2 + a3 + a4) / 2
    num = x * (-x + a1 + a2) + a3 * (x + a1 - a2) + a4 * (x - a1 + a2)
    return num / (2 * x)


def j23sq_offdiagonal_squared(j1, j2, j3, j4, j12) -> Fraction:
    """<j12-1|J23^2|j12>^2, exact."""
    num = ((j12 ** 2 - (j1 - j2) ** 2) * ((j1 + j2 + 1) ** 2 - j12 ** 2)
           * (j12 ** 2 - (j3 - j4) ** 2) * ((j3 + j4 + 1) ** 2 - j12 ** 2))
    return num / (4 * j12 ** 2 * (2 * j12 - 1) * (2 * j12 + 1))


def j23sq_operator(j1, j2, j3, j4) -> TridiagonalOperator:
    """Matrix of J23^2 over the allowed j12 range (positive off-diagonal)."""
    j1, j2, j3, j4 = (as_spin(x) for x in (j1, j2, j3, j4))
    b = intermediate_bounds(j1, j2, j3, j4)
    rows = [b.j12_min + k for k in range(b.D)]
    diag = [float(j23sq_diagonal(j1, j2, j3, j4, r)) for r in rows]
    off = [_sqrt_float(j23sq_offdiagonal_squared(j1, j2, j3, j4, r)) for r in rows[1:]]
    limit_rows = tuple(k for k, r in enumerate(rows) if r == 0)
    return TridiagonalOperator(b.j12_min, np.array(diag), np.array(off), limit_rows)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenpairs of J23^2; column k belongs to j23 = j23_min + k.

    Sign convention: each column is first flipped so that its
    largest-magnitude entry is positive, then flipped again if the Racah-sum
    6j at that entry is negative. With the positive off-diagonal of
    ``j23sq_operator`` no row phases are needed: columns then equal
    sqrt((2 j12 + 1)(2 j23 + 1)) {6j}.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    j12_min: Fraction
    j23_min: Fraction


def eigen_6j_oracle(j1, j2, j3, j4, align=True) -> SpectralDecomposition:
    op = j23sq_operator(j1, j2, j3, j4)
    b = intermediate_bounds(j1, j2, j3, j4)
    w, z = kernels.tql2(op.diag, op.offdiag)
    z = np.array(z, dtype=float)
    for k in range(b.D):
        i = int(np.argmax(np.abs(z[:, k])))
        if z[i, k] < 0:
            z[:, k] = -z[:, k]
        if align:
            args = SixJArguments(j1, j2, j3, j4, b.j12_min + i, b.j23_min + k)
            if sixj_exact(args) < 0:
                z[:, k] = -z[:, k]
    return SpectralDecomposition(np.asarray(w), z, b.j12_min, b.j23_min)


# ---------------------------------------------------------------------------
# Wigner small-d


def _check_projection(j: Fraction, m: Fraction, name: str):
    if abs(m) > j or (j - m).denominator != 1:
        raise DomainError(f"{name}={m} incompatible with j={j}")


def wigner_d(j, m, mp, beta: float) -> float:
    """d^j_{m,mp}(beta) = <j m| exp(-i beta J_y) |j mp>.

    Convention: d^{1/2}_{1/2,1/2} = cos(beta/2), d^{1/2}_{1/2,-1/2} = -sin(beta/2).
    Stable for large j (Jacobi-polynomial recurrence carried in log scale).
    """
    j = as_spin(j)
    m, mp = Fraction(m), Fraction(mp)
    _check_projection(j, m, "m")
    _check_projection(j, mp, "mp")
    if beta == 0.0:
        return float(m == mp)
    return kernels.wigner_d(int(2 * j), int(2 * m), int(2 * mp), float(beta))


def wigner_d_matrix(j, beta: float) -> np.ndarray:
    """Full (2j+1)x(2j+1) matrix; rows and columns ordered m = -j..j."""
    j = as_spin(j)
    tj = int(2 * j)
    labels = range(-tj, tj + 1, 2)
    return np.array([[kernels.wigner_d(tj, a, b, float(beta)) for b in labels] for a in labels])


def wigner_d_exact(j, m, mp, cos_half, sin_half) -> ExactRational:
    """Wigner's explicit sum with rational cos(beta/2), sin(beta/2).

    Exact; meant as an oracle for moderate j.
    """
    j, m, mp = as_spin(j), Fraction(m), Fraction(mp)
    _check_projection(j, m, "m")
    _check_projection(j, mp, "mp")
    c, s = Fraction(cos_half), Fraction(sin_half)
    if c * c + s * s != 1:
        raise DomainError("cos_half^2 + sin_half^2 must equal 1")
    jm, jmm, jmp, jmpm = int(j + m), int(j - m), int(j + mp), int(j - mp)
    dm = int(m - mp)
    root = ExactRational.sqrt(_fact(jm) * _fact(jmm) * _fact(jmp) * _fact(jmpm))
    total = Fraction(0)
    for k in range(max(0, -dm), min(jmp, jmm) + 1):
        den = _fact(jmp - k) * _fact(k) * _fact(dm + k) * _fact(jmm - k)
        term = Fraction(1, den) * c ** (jm + jmm - dm - 2 * k) * s ** (dm + 2 * k)
        total += -term if (dm + k) % 2 else term
    return root * total
