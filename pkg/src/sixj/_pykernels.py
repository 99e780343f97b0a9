"""Pure-Python versions of the hot kernels.

Every function here has a twin with the same signature in ``_ckernels.pyx``;
``sixj.kernels`` picks the compiled one when it is importable.
"""
import math

import numpy as np

from .errors import ConvergenceFailure

BACKEND = "python"

# Gauss-Kronrod 7/15 nodes and weights on [-1, 1]
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_KWEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
# Gauss nodes are the odd-indexed Kronrod abscissae (1, 3, 5, centre)
_GWEIGHTS = np.zeros(15)
_GWEIGHTS[[1, 3, 5, 7, 9, 11, 13]] = [_WG[0], _WG[1], _WG[2], _WG[3], _WG[2], _WG[1], _WG[0]]

MAX_INTERVALS = 2000

KIND_6J = 0
KIND_D = 1
MODE_ARCCOS = 0
MODE_ARCCOSH = 1


# ---------------------------------------------------------------------------
# lune integrands


def _cos_argument(kind, params, z):
    """Cosine of the lune half-width at height ``z`` (may lie outside [-1, 1])."""
    if kind == KIND_6J:
        j1, j2, j3, j4, j12avg, t2 = params
        a = z + j12avg
        a2 = a * a
        q1 = (a + j1 + j2) * (-a + j1 + j2) * (a - j1 + j2) * (a + j1 - j2)
        q2 = (a + j3 + j4) * (-a + j3 + j4) * (a - j3 + j4) * (a + j3 - j4)
        diag = (a2 * (-a2 + j1 * j1 + j2 * j2)
                + j3 * j3 * (a2 + j1 * j1 - j2 * j2)
                + j4 * j4 * (a2 - j1 * j1 + j2 * j2)) / (2.0 * a2)
        num = diag - t2
        # 2 h1 h2 = 8 F1 F2 / a^2 = sqrt(q1 q2) / (2 a^2)
        if q1 <= 0.0 or q2 <= 0.0:
            return math.copysign(math.inf, num) if num != 0.0 else math.inf
        return num * 2.0 * a2 / math.sqrt(q1 * q2)
    jj, mp, cb, sb = params
    rho2 = jj * jj - z * z
    num = mp - z * cb
    if rho2 <= 0.0:
        return math.copysign(math.inf, num) if num != 0.0 else math.inf
    return num / (math.sqrt(rho2) * sb)


def _integrand(kind, params, z, mode):
    x = _cos_argument(kind, params, z)
    if mode == MODE_ARCCOS:
        if x >= 1.0:
            return 0.0
        if x <= -1.0:
            return math.pi
        return math.acos(x)
    ax = abs(x)
    if ax <= 1.0:
        return 0.0
    if math.isinf(ax):
        return math.inf
    return math.acosh(ax)


def lune_cos_argument(kind, params, z):
    return _cos_argument(kind, tuple(params), z)


def _gk15(kind, params, a, b, sub, mode):
    half = 0.5 * (b - a)
    centre = 0.5 * (b + a)
    kron = 0.0
    gauss = 0.0
    for i in range(15):
        u = centre + half * _NODES[i]
        if sub == 1:
            # z = b_orig - u^2; the caller passes a, b in u-space
            z = params[-1] - u * u
            f = 2.0 * u * _integrand(kind, params[:-1], z, mode)
        elif sub == 2:
            z = params[-1] + u * u
            f = 2.0 * u * _integrand(kind, params[:-1], z, mode)
        else:
            f = _integrand(kind, params, u, mode)
        kron += _KWEIGHTS[i] * f
        gauss += _GWEIGHTS[i] * f
    return kron * half, abs((kron - gauss) * half)


def _adaptive(kind, params, a, b, sub, mode, tol):
    if b <= a:
        return 0.0, 0.0
    val, err = _gk15(kind, params, a, b, sub, mode)
    intervals = [(a, b, val, err)]
    total, total_err = val, err
    while total_err > tol:
        if len(intervals) >= MAX_INTERVALS:
            raise ConvergenceFailure("lune quadrature did not reach tolerance", len(intervals))
        k = max(range(len(intervals)), key=lambda i: intervals[i][3])
        lo, hi, v, e = intervals.pop(k)
        mid = 0.5 * (lo + hi)
        v1, e1 = _gk15(kind, params, lo, mid, sub, mode)
        v2, e2 = _gk15(kind, params, mid, hi, sub, mode)
        intervals.append((lo, mid, v1, e1))
        intervals.append((mid, hi, v2, e2))
        total += v1 + v2 - v
        total_err += e1 + e2 - e
        if mid <= lo or mid >= hi:
            break
    total = math.fsum(iv[2] for iv in intervals)
    return total, math.fsum(iv[3] for iv in intervals)


def lune_integral(kind, params, a, b, sub, mode, tol):
    """Integrate the lune half-width over the height interval [a, b].

    ``sub`` selects the square-root substitution: 0 none, 1 at the upper
    endpoint (z = b - u^2), 2 at the lower endpoint (z = a + u^2). Returns
    ``(value, error_estimate)``.
    """
    params = tuple(float(p) for p in params)
    if b <= a:
        return 0.0, 0.0
    if sub == 1:
        return _adaptive(kind, params + (b,), 0.0, math.sqrt(b - a), 1, mode, tol)
    if sub == 2:
        return _adaptive(kind, params + (a,), 0.0, math.sqrt(b - a), 2, mode, tol)
    return _adaptive(kind, params, a, b, 0, mode, tol)


# ---------------------------------------------------------------------------
# Wigner d via Jacobi polynomials


def wigner_d(two_j, two_m, two_mp, beta):
    """d^j_{m,mp}(beta) from twice-integer labels.

    Uses d^j_{m,mp} = xi * sqrt(s!(s+mu+nu)!/((s+mu)!(s+nu)!))
    sin^mu(beta/2) cos^nu(beta/2) P_s^(mu,nu)(cos beta) with the Jacobi
    polynomial from its three-term recurrence, carried in log scale.
    """
    mu2 = abs(two_m - two_mp)
    nu2 = abs(two_m + two_mp)
    mu = mu2 // 2
    nu = nu2 // 2
    s = (two_j - (mu2 + nu2) // 2) // 2
    # xi = 1 if mp >= m (m is the row label), else (-1)^(m - mp)
    if two_mp >= two_m:
        sign = 1.0
    else:
        sign = -1.0 if ((two_m - two_mp) // 2) % 2 else 1.0
    half = 0.5 * beta
    sh = math.sin(half)
    ch = math.cos(half)
    if (mu > 0 and sh == 0.0) or (nu > 0 and ch == 0.0):
        return 0.0
    x = math.cos(beta)
    p, scale = _jacobi_scaled(s, mu, nu, x)
    if p == 0.0:
        return 0.0
    logpref = 0.5 * (math.lgamma(s + 1) + math.lgamma(s + mu + nu + 1)
                     - math.lgamma(s + mu + 1) - math.lgamma(s + nu + 1))
    if mu > 0:
        logpref += mu * math.log(abs(sh))
    if nu > 0:
        logpref += nu * math.log(abs(ch))
    if sh < 0.0 and mu % 2:
        sign = -sign
    if ch < 0.0 and nu % 2:
        sign = -sign
    if p < 0.0:
        sign = -sign
    return sign * math.exp(logpref + math.log(abs(p)) + scale)


def _jacobi_scaled(n, a, b, x):
    """P_n^(a,b)(x) as (mantissa, log_scale)."""
    if n == 0:
        return 1.0, 0.0
    p0 = 1.0
    p1 = (a + 1) + (a + b + 2) * (x - 1.0) * 0.5
    scale = 0.0
    for k in range(2, n + 1):
        c = 2 * k + a + b
        a1 = 2 * k * (k + a + b) * (c - 2)
        a2 = (c - 1) * (c * (c - 2) * x + a * a - b * b)
        a3 = 2 * (k + a - 1) * (k + b - 1) * c
        p2 = (a2 * p1 - a3 * p0) / a1
        p0, p1 = p1, p2
        m = abs(p1)
        if m > 1e150 or (0.0 < m < 1e-150):
            lm = math.log(m)
            f = math.exp(-lm)
            p0 *= f
            p1 *= f
            scale += lm
    return p1, scale


# ---------------------------------------------------------------------------
# symmetric tridiagonal eigensolver (implicit QL, EISPACK tql2)


def tql2(diag, offdiag, max_iter=60):
    """Eigen-decomposition of a symmetric tridiagonal matrix.

    ``offdiag[i]`` couples rows i and i+1. Returns ``(w, z)`` with eigenvalues
    ascending and z[:, k] the k-th unit eigenvector.
    """
    n = len(diag)
    d = [float(v) for v in diag]
    e = [float(v) for v in offdiag] + [0.0]
    z = [[1.0 if i == k else 0.0 for k in range(n)] for i in range(n)]
    f = 0.0
    tst1 = 0.0
    eps = 2.0 ** -52
    for l in range(n):
        tst1 = max(tst1, abs(d[l]) + abs(e[l]))
        m = l
        while m < n:
            if abs(e[m]) <= eps * tst1:
                break
            m += 1
        if m == n:
            m = n - 1
        if m > l:
            it = 0
            while True:
                it += 1
                if it > max_iter:
                    raise ConvergenceFailure(f"tql2 failed on eigenvalue {l}", it)
                g = d[l]
                p = (d[l + 1] - g) / (2.0 * e[l])
                r = math.hypot(p, 1.0)
                if p < 0:
                    r = -r
                d[l] = e[l] / (p + r)
                d[l + 1] = e[l] * (p + r)
                dl1 = d[l + 1]
                h = g - d[l]
                for i in range(l + 2, n):
                    d[i] -= h
                f += h
                p = d[m]
                c = 1.0
                c2 = c
                c3 = c
                el1 = e[l + 1]
                s = 0.0
                s2 = 0.0
                for i in range(m - 1, l - 1, -1):
                    c3 = c2
                    c2 = c
                    s2 = s
                    g = c * e[i]
                    h = c * p
                    r = math.hypot(p, e[i])
                    e[i + 1] = s * r
                    s = e[i] / r
                    c = p / r
                    p = c * d[i] - s * g
                    d[i + 1] = h + s * (c * g + s * d[i])
                    for k in range(n):
                        zk = z[k]
                        h = zk[i + 1]
                        zk[i + 1] = s * zk[i] + c * h
                        zk[i] = c * zk[i] - s * h
                p = -s * s2 * c3 * el1 * e[l] / dl1
                e[l] = s * p
                d[l] = c * p
                if abs(e[l]) <= eps * tst1:
                    break
        d[l] = d[l] + f
        e[l] = 0.0
    order = sorted(range(n), key=lambda i: d[i])
    w = np.array([d[i] for i in order])
    zz = np.array([[z[r][i] for i in order] for r in range(n)]).reshape(n, n)
    return w, zz
