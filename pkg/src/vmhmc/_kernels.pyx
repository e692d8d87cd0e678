# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled trajectory kernels: exact endpoint evolution, the HMC chain loop
and the brute-force oracle integrator.

Must stay operation-for-operation identical to ``vmhmc._kernels_py`` (built
with fp-contraction off) so both backends produce bit-identical chains.
"""

from libc.math cimport M_PI, acos, cos, floor, log1p, sin

cdef double TWO_PI = 2.0 * M_PI
cdef double SIN_EPS = 1e-12
cdef double HALF_ULP = 1.1102230246251565e-16  # 2**-53


cdef inline double _wrap(double x) nogil:
    cdef double r = x - TWO_PI * floor((x + M_PI) / TWO_PI)
    if r < -M_PI:
        r += TWO_PI
    elif r >= M_PI:
        r -= TWO_PI
    return r


cdef inline double _laplace(double u) nogil:
    cdef double v = 2.0 * u - 1.0
    cdef double av, r
    if v == 0.0:
        return 0.0
    av = -v if v < 0.0 else v
    if av >= 1.0:
        av = 1.0 - HALF_ULP
    r = -log1p(-av)
    return r if v > 0.0 else -r


cdef struct Traj:
    double x
    double p
    long long q
    double t1
    double h


cdef void _evolve(double x, double p, double kappa, double T, Traj* o) nogil:
    cdef double s, sx, ap, c, a, t1, x1, p1, xz, t_rem, wz, swz, h, m, r, pos, d
    cdef long long mi
    if T <= 0.0:
        o.x = x; o.p = p; o.q = 0; o.t1 = -1.0; o.h = 0.0
        return
    if p > 0.0:
        s = 1.0
    elif p < 0.0:
        s = -1.0
    else:
        sx = sin(x)
        if sx <= SIN_EPS and sx >= -SIN_EPS:
            o.x = x; o.p = 0.0; o.q = 0; o.t1 = -1.0; o.h = 0.0
            return
        s = 1.0 if -sx > 0.0 else -1.0
    ap = -p if p < 0.0 else p
    c = cos(x) - ap / kappa
    if c < -1.0:
        x1 = x + s * T
        p1 = p - kappa * s * cos(x) + kappa * s * cos(x1)
        o.x = x1; o.p = p1; o.q = 0; o.t1 = -1.0; o.h = 0.0
        return
    a = acos(c)
    if p != 0.0:
        t1 = a - s * _wrap(x)
        if t1 < 0.0:
            t1 = 0.0
    else:
        t1 = 2.0 * a
    if t1 > T:
        x1 = x + s * T
        p1 = p - kappa * s * cos(x) + kappa * s * cos(x1)
        o.x = x1; o.p = p1; o.q = 0; o.t1 = -1.0; o.h = 0.0
        return
    xz = x + s * t1
    s = -s
    t_rem = T - t1
    wz = _wrap(xz)
    swz = sin(wz)
    if swz <= SIN_EPS and swz >= -SIN_EPS:
        o.x = xz; o.p = 0.0; o.q = 1; o.t1 = t1; o.h = 0.0
        return
    h = 2.0 * (-wz if wz < 0.0 else wz)
    m = floor(t_rem / h)
    r = t_rem - m * h
    mi = <long long>m
    if mi % 2 == 1:
        pos = xz + s * h
        d = -s
    else:
        pos = xz
        d = s
    x1 = pos + d * r
    p1 = kappa * d * (cos(x1) - cos(pos))
    o.x = x1; o.p = p1; o.q = 1 + mi; o.t1 = t1; o.h = h


cdef void _oracle(double x, double p, double kappa, double T, double step,
                  double* ox, double* op) nogil:
    cdef double s, sx, t, dt, x1, p1, lo, hi, mid, xm, pm
    cdef bint crossed
    cdef int i
    if T <= 0.0:
        ox[0] = x; op[0] = p
        return
    if p > 0.0:
        s = 1.0
    elif p < 0.0:
        s = -1.0
    else:
        sx = sin(x)
        if sx <= SIN_EPS and sx >= -SIN_EPS:
            ox[0] = x; op[0] = 0.0
            return
        s = 1.0 if -sx > 0.0 else -1.0
    t = 0.0
    while t < T:
        dt = T - t
        if dt > step:
            dt = step
        x1 = x + s * dt
        p1 = p - kappa * 0.5 * (sin(x) + sin(x1)) * dt
        crossed = (p > 0.0 and p1 < 0.0) or (p < 0.0 and p1 > 0.0) or p1 == 0.0
        if crossed:
            lo = 0.0
            hi = dt
            for i in range(80):
                mid = 0.5 * (lo + hi)
                xm = x + s * mid
                pm = p - kappa * 0.5 * (sin(x) + sin(xm)) * mid
                if (p > 0.0 and pm <= 0.0) or (p < 0.0 and pm >= 0.0):
                    hi = mid
                else:
                    lo = mid
            x = x + s * hi
            p = 0.0
            t += hi
            s = -s
            sx = sin(x)
            if sx <= SIN_EPS and sx >= -SIN_EPS:
                ox[0] = x; op[0] = 0.0
                return
            continue
        x = x1
        p = p1
        t += dt
    ox[0] = x
    op[0] = p


def wrap(double x):
    """Reduce an angle to [-pi, pi)."""
    return _wrap(x)


def laplace_from_uniform(double u):
    """Inverse CDF of the unit Laplace density 0.5 * exp(-|p|)."""
    return _laplace(u)


def evolve_endpoint(double x, double p, double kappa, double T):
    """Exact endpoint after time T; see ``_kernels_py.evolve_endpoint``."""
    cdef Traj o
    _evolve(x, p, kappa, T, &o)
    return o.x, o.p, o.q, o.t1, o.h


def run_chain(double x0, double kappa, double T, double[::1] uniforms,
              double[::1] out):
    """HMC chain loop in the nu = 0 frame; releases the GIL."""
    cdef Py_ssize_t i, n = uniforms.shape[0]
    cdef double x = x0, p
    cdef Traj o
    if out.shape[0] != n:
        raise ValueError("out must have the same length as uniforms")
    with nogil:
        for i in range(n):
            p = _laplace(uniforms[i])
            _evolve(x, p, kappa, T, &o)
            x = _wrap(o.x)
            out[i] = x
    return None


def oracle_endpoint(double x, double p, double kappa, double T, double step):
    """Brute-force trapezoid integrator with bisection at sign changes."""
    cdef double ox, op
    with nogil:
        _oracle(x, p, kappa, T, step, &ox, &op)
    return ox, op
