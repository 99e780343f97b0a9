"""Euclidean tetrahedron geometry for the 6j-symbol.

Vertex labelling used throughout: P, Q, R, S with

    PQ = J12, PR = J1, QR = J2, QS = J3, PS = J4, RS = J23

so J12 is opposite J23, J1 opposite J3 and J2 opposite J4. The faces
(J1, J2, J12), (J3, J4, J12), (J2, J3, J23), (J1, J4, J23) are PQR, PQS,
QRS and PRS.

Angles called ``phi`` are interior dihedral angles; ``psi = pi - phi`` are the
exterior ones.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import DegenerateFaces, NoIntersection, TriangleViolation
from .exact import SixJArguments

EDGE_NAMES = ("J1", "J2", "J3", "J4", "J12", "J23")
# (vertex a, vertex b) for each edge in EDGE_NAMES order; P=0, Q=1, R=2, S=3
_EDGE_VERTICES = ((0, 2), (1, 2), (1, 3), (0, 3), (0, 1), (2, 3))

QUAD_TOL = 1e-10


class Classification(enum.Enum):
    ALLOWED = "allowed"
    DEGENERATE = "degenerate"
    FORBIDDEN = "forbidden"


def triangle_area(a: float, b: float, c: float, tol: float = 1e-12) -> float:
    q = (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c)
    scale = max(a, b, c) ** 4
    if q < 0:
        if q < -tol * scale:
            raise TriangleViolation("(a,b,c)", (a, b, c))
        return 0.0
    return 0.25 * math.sqrt(q)


def _is_half_integer(x) -> bool:
    return float(2 * x).is_integer()


def _gram_det(sq):
    """36 V^2 from the six squared edges (same order as EDGE_NAMES)."""
    j1, j2, j3, j4, j12, j23 = sq
    uu, vv, ww = j12, j1, j4
    uv = (j12 + j1 - j2) / 2
    uw = (j12 + j4 - j3) / 2
    vw = (j1 + j4 - j23) / 2
    return (uu * (vv * ww - vw * vw) - uv * (uv * ww - vw * uw) + uw * (uv * vw - vv * uw))


def volume_squared(edges) -> float:
    """V^2 via the Gram (Cayley-Menger) determinant.

    Exact rational arithmetic whenever every edge is a multiple of 1/2, so the
    classification of quantized tetrahedra is free of rounding.
    """
    if all(_is_half_integer(e) for e in edges):
        sq = [Fraction(e) ** 2 for e in edges]
        return float(_gram_det(sq) / 36)
    sq = [float(e) ** 2 for e in edges]
    return _gram_det(sq) / 36.0


def classify(vol2: float, edges, rel_tol: float = 1e-7) -> Classification:
    tol = rel_tol * max(edges) ** 3
    signed = math.copysign(math.sqrt(abs(vol2)), vol2)
    if abs(signed) <= tol:
        return Classification.DEGENERATE
    return Classification.ALLOWED if signed > 0 else Classification.FORBIDDEN


def tetra_volume(edges):
    """(V^2, classification) for edges (J1, J2, J3, J4, J12, J23)."""
    edges = tuple(float(e) for e in edges)
    v2 = volume_squared(edges)
    return v2, classify(v2, edges)


def _distance_matrix(edges):
    d = np.zeros((4, 4))
    for length, (a, b) in zip(edges, _EDGE_VERTICES):
        d[a, b] = d[b, a] = length
    return d


def _dihedral(dist, a, b, c, d, volume):
    """Interior dihedral angle along edge ab, between faces abc and abd."""
    def dot(x, y):
        return 0.5 * (dist[a, x] ** 2 + dist[a, y] ** 2 - dist[x, y] ** 2)

    uu, uv, uw, vw = dot(b, b), dot(b, c), dot(b, d), dot(c, d)
    vv, ww = dot(c, c), dot(d, d)
    n1 = uu * vv - uv * uv
    n2 = uu * ww - uw * uw
    if n1 <= 0 or n2 <= 0:
        raise DegenerateFaces(f"face through edge {a}{b} is degenerate")
    norm = math.sqrt(n1 * n2)
    cos_phi = (uu * vw - uv * uw) / norm
    sin_phi = 6.0 * volume * math.sqrt(uu) / norm
    return math.atan2(sin_phi, cos_phi)


@dataclass(frozen=True)
class Tetrahedron:
    """Six edge lengths with eagerly computed volume and dihedral angles."""

    J1: float
    J2: float
    J3: float
    J4: float
    J12: float
    J23: float
    volume_squared: float = field(init=False)
    volume: float = field(init=False)
    classification: Classification = field(init=False)
    phi: tuple = field(init=False, repr=False)

    def __post_init__(self):
        edges = self.edges
        v2, cls = tetra_volume(edges)
        object.__setattr__(self, "volume_squared", v2)
        object.__setattr__(self, "classification", cls)
        if cls is Classification.FORBIDDEN:
            object.__setattr__(self, "volume", math.nan)
            object.__setattr__(self, "phi", None)
            return
        vol = math.sqrt(max(v2, 0.0)) if cls is Classification.ALLOWED else 0.0
        object.__setattr__(self, "volume", vol)
        try:
            phi = dihedral_from_edges(edges, vol)
        except DegenerateFaces:
            phi = None
        object.__setattr__(self, "phi", phi)

    @classmethod
    def from_args(cls, args: SixJArguments) -> "Tetrahedron":
        return cls(*args.shifted)

    @property
    def edges(self):
        return (self.J1, self.J2, self.J3, self.J4, self.J12, self.J23)

    @property
    def psi(self):
        if self.phi is None:
            return None
        return tuple(math.pi - p for p in self.phi)


def dihedral_from_edges(edges, volume):
    dist = _distance_matrix(edges)
    out = []
    for a, b in _EDGE_VERTICES:
        c, d = (v for v in range(4) if v not in (a, b))
        out.append(_dihedral(dist, a, b, c, d, volume))
    return tuple(out)


def dihedral_angles(t: Tetrahedron):
    """Six (psi_i, phi_i) pairs in EDGE_NAMES order."""
    if t.classification is Classification.FORBIDDEN:
        raise NoIntersection("no real dihedral angles for a forbidden tetrahedron")
    if t.phi is None:
        raise DegenerateFaces("a face triangle is degenerate")
    return tuple((math.pi - p, p) for p in t.phi)


def _face_heights(J1, J2, J3, J4, J12):
    h1 = 2.0 * triangle_area(J12, J1, J2) / J12
    h2 = 2.0 * triangle_area(J12, J3, J4) / J12
    return h1, h2


def j23_diag_part(J1, J2, J3, J4, J12):
    """The phi-independent part of J23^2 (the symbol's diagonal term)."""
    a2 = J12 * J12
    return (a2 * (-a2 + J1 ** 2 + J2 ** 2) + J3 ** 2 * (a2 + J1 ** 2 - J2 ** 2)
            + J4 ** 2 * (a2 - J1 ** 2 + J2 ** 2)) / (2.0 * a2)


def j23_from_phi12(J1, J2, J3, J4, J12, phi12):
    """Edge J23 closing the hinge of faces (J12,J1,J2), (J12,J3,J4) at interior angle phi12."""
    h1, h2 = _face_heights(J1, J2, J3, J4, J12)
    return math.sqrt(j23_diag_part(J1, J2, J3, J4, J12) - 2.0 * h1 * h2 * math.cos(phi12))


def j23_squared_symbol(J1, J2, J3, J4, J12, phi):
    """J23^2 as a function on the 6j-sphere.

    The azimuth ``phi`` here is the conjugate angle of the sphere, in which the
    positive off-diagonal of the J23^2 matrix turns into ``+ 8 F F cos(phi)/J12^2``;
    it is pi minus the interior dihedral angle.
    """
    h1, h2 = _face_heights(J1, J2, J3, J4, J12)
    return j23_diag_part(J1, J2, J3, J4, J12) + 2.0 * h1 * h2 * math.cos(phi)


def ponzano_regge_phase(t: Tetrahedron) -> float:
    """Sum of J_i psi_i over the six edges."""
    pairs = dihedral_angles(t)
    return math.fsum(e * psi for e, (psi, _) in zip(t.edges, pairs))


def bracket_J12_J23(t: Tetrahedron) -> float:
    """|{J12, J23}| = 6 V / (J12 J23); zero at caustics."""
    if t.classification is Classification.FORBIDDEN:
        raise NoIntersection("bracket undefined for a forbidden tetrahedron")
    return 6.0 * t.volume / (t.J12 * t.J23)


# ---------------------------------------------------------------------------
# the 6j-sphere lune


def j12_caustics(J1, J2, J3, J4, J23):
    """Range [J12_lo, J12_hi] of J12 with real volume at fixed J23.

    36 V^2 is quadratic in s = J12^2 with leading coefficient -J23^2/4; its
    two roots bound the allowed interval.
    """
    sq = [J1 ** 2, J2 ** 2, J3 ** 2, J4 ** 2, None, J23 ** 2]

    def g(s):
        sq[4] = s
        return _gram_det(sq)

    c0 = g(0.0)
    g1 = g(1.0)
    gm = g(-1.0)
    a = 0.5 * (g1 + gm) - c0
    b = 0.5 * (g1 - gm)
    disc = b * b - 4 * a * c0
    if disc < 0 or a == 0:
        return None
    r = math.sqrt(disc)
    q = -0.5 * (b + math.copysign(r, b))
    roots = sorted((q / a, c0 / q if q != 0 else 0.0))
    s_lo, s_hi = roots
    if s_hi <= 0:
        return None
    return math.sqrt(max(s_lo, 0.0)), math.sqrt(s_hi)


@dataclass(frozen=True)
class LuneArea6j:
    value: float
    k_lo: float
    k_hi: float
    tail: float
    error: float
    samples: tuple = field(default=(), repr=False)


@dataclass(frozen=True)
class SphereData:
    """Coordinates of the 6j-sphere for a fixed set (j1..j4)."""

    radius: float
    j12_avg_shifted: float
    m: float
    params: tuple


def sphere_data(args: SixJArguments) -> SphereData:
    b = args.bounds
    J = b.D / 2.0
    j12avg = float(b.j12_min + b.j12_max) / 2.0 + 0.5
    m = float(args.j12) + 0.5 - j12avg
    params = (args.J1, args.J2, args.J3, args.J4, j12avg, args.J23 ** 2)
    return SphereData(J, j12avg, m, params)


def lune_area_6j(args: SixJArguments, tol: float = QUAD_TOL, base: float | None = None,
                 n_samples: int = 0) -> LuneArea6j:
    """Area of {K_z >= base} intersected with {J23 <= j23 + 1/2} on the 6j-sphere.

    Equals 2 * integral_{base}^{J} phi12(K_z) dK_z with phi12 the interior
    dihedral angle on the J23 level curve, clamped to 0 / pi where the curve
    does not reach the circle K_z. ``base`` defaults to m = j12 - j12_avg.
    """
    sd = sphere_data(args)
    base = sd.m if base is None else base
    caustics = j12_caustics(args.J1, args.J2, args.J3, args.J4, args.J23)
    if caustics is None:
        raise NoIntersection("J23 level set is empty")
    k_lo = caustics[0] - sd.j12_avg_shifted
    k_hi = caustics[1] - sd.j12_avg_shifted
    slack = 1e-12 * max(1.0, sd.radius)
    if base < k_lo - slack or base > k_hi + slack:
        raise NoIntersection(f"K_z = {base} does not meet the J23 level set [{k_lo}, {k_hi}]")
    base = min(max(base, k_lo), k_hi)
    body, err = kernels.lune_integral(kernels.KIND_6J, sd.params, base, k_hi, 1, kernels.MODE_ARCCOS, tol / 2)
    # beyond the top caustic the whole circle is inside (x < -1) or outside (x > 1)
    x_top = kernels.lune_cos_argument(kernels.KIND_6J, sd.params, k_hi)
    tail_width = math.pi if x_top < 0 else 0.0
    tail = tail_width * (sd.radius - k_hi)
    samples = ()
    if n_samples:
        zs = np.linspace(base, sd.radius, n_samples)
        samples = tuple((float(z), _clamped_acos(kernels.lune_cos_argument(kernels.KIND_6J, sd.params, z)))
                        for z in zs)
    return LuneArea6j(2.0 * (body + tail), k_lo, k_hi, 2.0 * tail, 2.0 * err, samples)


def _clamped_acos(x):
    if x >= 1.0:
        return 0.0
    if x <= -1.0:
        return math.pi
    return math.acos(x)


def schlafli_lune(args: SixJArguments) -> float:
    """Lune area from the Ponzano-Regge phase, up to an additive constant.

    Returns 2 (J12_max - J12) pi + 2 Phi_PR; differs from ``lune_area_6j`` by
    a constant along any sweep at fixed (j1..j4, j12).
    """
    t = Tetrahedron.from_args(args)
    b = args.bounds
    return 2.0 * (float(b.j12_max) + 0.5 - args.J12) * math.pi + 2.0 * ponzano_regge_phase(t)
