# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels; same signatures as ``_pykernels``."""
from libc.math cimport acos, acosh, sqrt, fabs, sin, cos, log, exp, lgamma, hypot, INFINITY, copysign, isinf
from libc.stdlib cimport malloc, free

import numpy as np

from .errors import ConvergenceFailure

BACKEND = "cython"

KIND_6J = 0
KIND_D = 1
MODE_ARCCOS = 0
MODE_ARCCOSH = 1
cdef enum:
    CMAX = 2000
MAX_INTERVALS = CMAX

cdef double PI = 3.14159265358979323846

cdef double[15] NODES
cdef double[15] KW
cdef double[15] GW

_xgk = [0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.0]
_wgk = [0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714]
_wg = [0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
       0.381830050505118944950369775488975, 0.417959183673469387755102040816327]

cdef int _i
for _i in range(7):
    NODES[_i] = -_xgk[_i]
    NODES[14 - _i] = _xgk[_i]
    KW[_i] = _wgk[_i]
    KW[14 - _i] = _wgk[_i]
NODES[7] = 0.0
KW[7] = _wgk[7]
for _i in range(15):
    GW[_i] = 0.0
GW[1] = _wg[0]; GW[13] = _wg[0]
GW[3] = _wg[1]; GW[11] = _wg[1]
GW[5] = _wg[2]; GW[9] = _wg[2]
GW[7] = _wg[3]


cdef struct Ctx:
    int kind
    int mode
    int sub
    double p[6]
    double origin


cdef inline double _cos_argument(int kind, const double* p, double z) noexcept nogil:
    cdef double a, a2, q1, q2, diag, num, rho2
    if kind == 0:
        a = z + p[4]
        a2 = a * a
        q1 = (a + p[0] + p[1]) * (-a + p[0] + p[1]) * (a - p[0] + p[1]) * (a + p[0] - p[1])
        q2 = (a + p[2] + p[3]) * (-a + p[2] + p[3]) * (a - p[2] + p[3]) * (a + p[2] - p[3])
        diag = (a2 * (-a2 + p[0] * p[0] + p[1] * p[1])
                + p[2] * p[2] * (a2 + p[0] * p[0] - p[1] * p[1])
                + p[3] * p[3] * (a2 - p[0] * p[0] + p[1] * p[1])) / (2.0 * a2)
        num = diag - p[5]
        if q1 <= 0.0 or q2 <= 0.0:
            return copysign(INFINITY, num) if num != 0.0 else INFINITY
        return num * 2.0 * a2 / sqrt(q1 * q2)
    rho2 = p[0] * p[0] - z * z
    num = p[1] - z * p[2]
    if rho2 <= 0.0:
        return copysign(INFINITY, num) if num != 0.0 else INFINITY
    return num / (sqrt(rho2) * p[3])


cdef inline double _integrand(Ctx* c, double z) noexcept nogil:
    cdef double x = _cos_argument(c.kind, c.p, z)
    cdef double ax
    if c.mode == 0:
        if x >= 1.0:
            return 0.0
        if x <= -1.0:
            return PI
        return acos(x)
    ax = fabs(x)
    if ax <= 1.0:
        return 0.0
    if isinf(ax):
        return INFINITY
    return acosh(ax)


cdef void _gk15(Ctx* c, double a, double b, double* val, double* err) noexcept nogil:
    cdef double half = 0.5 * (b - a)
    cdef double centre = 0.5 * (b + a)
    cdef double kron = 0.0, gauss = 0.0, u, f
    cdef int i
    for i in range(15):
        u = centre + half * NODES[i]
        if c.sub == 1:
            f = 2.0 * u * _integrand(c, c.origin - u * u)
        elif c.sub == 2:
            f = 2.0 * u * _integrand(c, c.origin + u * u)
        else:
            f = _integrand(c, u)
        kron += KW[i] * f
        gauss += GW[i] * f
    val[0] = kron * half
    err[0] = fabs((kron - gauss) * half)


cdef int _adaptive(Ctx* c, double a, double b, double tol, double* out_val, double* out_err) noexcept nogil:
    """Returns 0 on success, the interval count on failure."""
    cdef double* lo = <double*> malloc(4 * CMAX * sizeof(double))
    cdef double* hi = lo + CMAX
    cdef double* vs = hi + CMAX
    cdef double* es = vs + CMAX
    cdef int n = 1, k, i
    cdef double total_err, mid, v1, e1, v2, e2, best, total, comp, t
    _gk15(c, a, b, &vs[0], &es[0])
    lo[0] = a
    hi[0] = b
    total_err = es[0]
    while total_err > tol:
        if n >= CMAX:
            free(lo)
            return n
        k = 0
        best = es[0]
        for i in range(1, n):
            if es[i] > best:
                best = es[i]
                k = i
        mid = 0.5 * (lo[k] + hi[k])
        if mid <= lo[k] or mid >= hi[k]:
            break
        _gk15(c, lo[k], mid, &v1, &e1)
        _gk15(c, mid, hi[k], &v2, &e2)
        total_err += e1 + e2 - es[k]
        lo[n] = mid
        hi[n] = hi[k]
        vs[n] = v2
        es[n] = e2
        hi[k] = mid
        vs[k] = v1
        es[k] = e1
        n += 1
    # Neumaier summation of the pieces
    total = 0.0
    comp = 0.0
    for i in range(n):
        t = total + vs[i]
        if fabs(total) >= fabs(vs[i]):
            comp += (total - t) + vs[i]
        else:
            comp += (vs[i] - t) + total
        total = t
    out_val[0] = total + comp
    total_err = 0.0
    for i in range(n):
        total_err += es[i]
    out_err[0] = total_err
    free(lo)
    return 0


def lune_cos_argument(int kind, params, double z):
    cdef double p[6]
    cdef int i
    for i in range(len(params)):
        p[i] = params[i]
    return _cos_argument(kind, p, z)


def lune_integral(int kind, params, double a, double b, int sub, int mode, double tol):
    """Integrate the lune half-width over the height interval [a, b].

    ``sub`` selects the square-root substitution: 0 none, 1 at the upper
    endpoint, 2 at the lower endpoint. Returns ``(value, error_estimate)``.
    """
    cdef Ctx c
    cdef int i, status
    cdef double val = 0.0, err = 0.0, lo, hi
    if b <= a:
        return 0.0, 0.0
    c.kind = kind
    c.mode = mode
    c.sub = sub
    for i in range(len(params)):
        c.p[i] = params[i]
    if sub == 1:
        c.origin = b
        lo, hi = 0.0, sqrt(b - a)
    elif sub == 2:
        c.origin = a
        lo, hi = 0.0, sqrt(b - a)
    else:
        c.origin = 0.0
        lo, hi = a, b
    with nogil:
        status = _adaptive(&c, lo, hi, tol, &val, &err)
    if status:
        raise ConvergenceFailure("lune quadrature did not reach tolerance", status)
    return val, err


cdef double _jacobi_scaled(int n, int a, int b, double x, double* scale) noexcept nogil:
    cdef double p0, p1, p2, a1, a2, a3, cc, m, lm, f
    cdef int k
    scale[0] = 0.0
    if n == 0:
        return 1.0
    p0 = 1.0
    p1 = (a + 1) + (a + b + 2) * (x - 1.0) * 0.5
    for k in range(2, n + 1):
        cc = 2 * k + a + b
        a1 = 2.0 * k * (k + a + b) * (cc - 2)
        a2 = (cc - 1) * (cc * (cc - 2) * x + a * a - b * b)
        a3 = 2.0 * (k + a - 1) * (k + b - 1) * cc
        p2 = (a2 * p1 - a3 * p0) / a1
        p0 = p1
        p1 = p2
        m = fabs(p1)
        if m > 1e150 or (0.0 < m < 1e-150):
            lm = log(m)
            f = exp(-lm)
            p0 *= f
            p1 *= f
            scale[0] += lm
    return p1


def wigner_d(int two_j, int two_m, int two_mp, double beta):
    """d^j_{m,mp}(beta) from twice-integer labels (Jacobi recurrence)."""
    cdef int mu2 = abs(two_m - two_mp)
    cdef int nu2 = abs(two_m + two_mp)
    cdef int mu = mu2 // 2
    cdef int nu = nu2 // 2
    cdef int s = (two_j - (mu2 + nu2) // 2) // 2
    cdef double sign = 1.0, sh, ch, p, scale, logpref
    if two_mp < two_m and ((two_m - two_mp) // 2) % 2:
        sign = -1.0
    sh = sin(0.5 * beta)
    ch = cos(0.5 * beta)
    if (mu > 0 and sh == 0.0) or (nu > 0 and ch == 0.0):
        return 0.0
    p = _jacobi_scaled(s, mu, nu, cos(beta), &scale)
    if p == 0.0:
        return 0.0
    logpref = 0.5 * (lgamma(s + 1) + lgamma(s + mu + nu + 1) - lgamma(s + mu + 1) - lgamma(s + nu + 1))
    if mu > 0:
        logpref += mu * log(fabs(sh))
    if nu > 0:
        logpref += nu * log(fabs(ch))
    if sh < 0.0 and mu % 2:
        sign = -sign
    if ch < 0.0 and nu % 2:
        sign = -sign
    if p < 0.0:
        sign = -sign
    return sign * exp(logpref + log(fabs(p)) + scale)


def tql2(diag, offdiag, int max_iter=60):
    """Eigen-decomposition of a symmetric tridiagonal matrix (implicit QL).

    Returns ``(w, z)`` with eigenvalues ascending and z[:, k] the k-th vector.
    """
    cdef int n = len(diag)
    d_arr = np.array(diag, dtype=np.float64)
    e_arr = np.zeros(n, dtype=np.float64)
    if n > 1:
        e_arr[:n - 1] = np.asarray(offdiag, dtype=np.float64)
    z_arr = np.eye(n, dtype=np.float64)
    cdef double[::1] d = d_arr
    cdef double[::1] e = e_arr
    cdef double[:, ::1] z = z_arr
    cdef double f = 0.0, tst1 = 0.0, eps = 2.0 ** -52
    cdef double g, p, r, dl1, h, c, c2, c3, el1, s, s2
    cdef int l, m, it, i, k
    for l in range(n):
        tst1 = max(tst1, fabs(d[l]) + fabs(e[l]))
        m = l
        while m < n:
            if fabs(e[m]) <= eps * tst1:
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
                r = hypot(p, 1.0)
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
                    r = hypot(p, e[i])
                    e[i + 1] = s * r
                    s = e[i] / r
                    c = p / r
                    p = c * d[i] - s * g
                    d[i + 1] = h + s * (c * g + s * d[i])
                    for k in range(n):
                        h = z[k, i + 1]
                        z[k, i + 1] = s * z[k, i] + c * h
                        z[k, i] = c * z[k, i] - s * h
                p = -s * s2 * c3 * el1 * e[l] / dl1
                e[l] = s * p
                d[l] = c * p
                if fabs(e[l]) <= eps * tst1:
                    break
        d[l] = d[l] + f
        e[l] = 0.0
    order = np.argsort(d_arr, kind="stable")
    return d_arr[order], z_arr[:, order]
