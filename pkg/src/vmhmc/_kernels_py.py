"""Pure-Python trajectory kernels, the fallback for the compiled core.

The arithmetic here is kept operation-for-operation identical to
``vmhmc._kernels`` (the Cython extension, built with fp-contraction off) so
that both backends produce bit-identical chains from the same uniforms.
"""

import math

PI = math.pi
TWO_PI = 2.0 * math.pi

# |sin| at a momentum zero below this means the state sits at an equilibrium
# (the bottom of the well or the c = -1 barrier top); it then stays frozen.
SIN_EPS = 1e-12

_HALF_ULP = 1.1102230246251565e-16  # 2**-53, guards the u = 0 uniform


def wrap(x):
    """Reduce an angle to [-pi, pi)."""
    r = x - TWO_PI * math.floor((x + PI) / TWO_PI)
    if r < -PI:
        r += TWO_PI
    elif r >= PI:
        r -= TWO_PI
    return r


def laplace_from_uniform(u):
    """Inverse CDF of the unit Laplace density 0.5 * exp(-|p|)."""
    v = 2.0 * u - 1.0
    if v == 0.0:
        return 0.0
    av = -v if v < 0.0 else v
    if av >= 1.0:
        av = 1.0 - _HALF_ULP
    r = -math.log1p(-av)
    return r if v > 0.0 else -r


def evolve_endpoint(x, p, kappa, T):
    """Exact endpoint of the Laplace-momentum trajectory after time T.

    Returns ``(x_end, p_end, q, t_first, half_period)`` where ``q`` counts
    momentum zero crossings, ``t_first`` is the time of the first crossing
    (-1.0 when q = 0) and ``half_period`` the spacing of the later ones
    (0.0 when there is at most one). Positions are left unwrapped.
    """
    if T <= 0.0:
        return x, p, 0, -1.0, 0.0
    if p > 0.0:
        s = 1.0
    elif p < 0.0:
        s = -1.0
    else:
        # entry with zero momentum: move downhill, or freeze at an equilibrium
        sx = math.sin(x)
        if sx <= SIN_EPS and sx >= -SIN_EPS:
            return x, 0.0, 0, -1.0, 0.0
        s = 1.0 if -sx > 0.0 else -1.0
    ap = -p if p < 0.0 else p
    c = math.cos(x) - ap / kappa
    if c < -1.0:
        # circulating branch: no crossing ever
        x1 = x + s * T
        p1 = p - kappa * s * math.cos(x) + kappa * s * math.cos(x1)
        return x1, p1, 0, -1.0, 0.0
    a = math.acos(c)
    if p != 0.0:
        # nearest root of cos(u) = c strictly ahead in the travel direction
        t1 = a - s * wrap(x)
        if t1 < 0.0:
            t1 = 0.0
    else:
        # from a turning point the next crossing is the opposite turning point
        t1 = 2.0 * a
    if t1 > T:
        x1 = x + s * T
        p1 = p - kappa * s * math.cos(x) + kappa * s * math.cos(x1)
        return x1, p1, 0, -1.0, 0.0
    # first crossing, then a strict oscillation between the turning points
    xz = x + s * t1
    s = -s
    t_rem = T - t1
    wz = wrap(xz)
    swz = math.sin(wz)
    if swz <= SIN_EPS and swz >= -SIN_EPS:
        return xz, 0.0, 1, t1, 0.0
    h = 2.0 * (-wz if wz < 0.0 else wz)
    m = math.floor(t_rem / h)
    r = t_rem - m * h
    q = 1 + int(m)
    if int(m) % 2 == 1:
        pos = xz + s * h
        d = -s
    else:
        pos = xz
        d = s
    x1 = pos + d * r
    p1 = kappa * d * (math.cos(x1) - math.cos(pos))
    return x1, p1, q, t1, h


def run_chain(x0, kappa, T, uniforms, out):
    """HMC chain in the nu = 0 frame: one Laplace refresh + one trajectory
    per retained step. ``x0`` must already be wrapped; writes wrapped
    positions into ``out`` (same length as ``uniforms``)."""
    x = x0
    n = len(uniforms)
    for i in range(n):
        p = laplace_from_uniform(float(uniforms[i]))
        x1, p1, q, t1, h = evolve_endpoint(x, p, kappa, T)
        x = wrap(x1)
        out[i] = x
    return None


def oracle_endpoint(x, p, kappa, T, step):
    """Brute-force integrator of xdot = s, pdot = -kappa sin(x).

    Trapezoid updates of p along the exactly known unit-speed position path,
    with bisection refinement at momentum sign changes. Independent of the
    closed-form solution; converges to it as step -> 0.
    """
    if T <= 0.0:
        return x, p
    if p > 0.0:
        s = 1.0
    elif p < 0.0:
        s = -1.0
    else:
        sx = math.sin(x)
        if sx <= SIN_EPS and sx >= -SIN_EPS:
            return x, 0.0
        s = 1.0 if -sx > 0.0 else -1.0
    t = 0.0
    while t < T:
        dt = T - t
        if dt > step:
            dt = step
        x1 = x + s * dt
        p1 = p - kappa * 0.5 * (math.sin(x) + math.sin(x1)) * dt
        crossed = (p > 0.0 and p1 < 0.0) or (p < 0.0 and p1 > 0.0) or p1 == 0.0
        if crossed:
            lo = 0.0
            hi = dt
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                xm = x + s * mid
                pm = p - kappa * 0.5 * (math.sin(x) + math.sin(xm)) * mid
                if (p > 0.0 and pm <= 0.0) or (p < 0.0 and pm >= 0.0):
                    hi = mid
                else:
                    lo = mid
            x = x + s * hi
            p = 0.0
            t += hi
            s = -s
            sx = math.sin(x)
            if sx <= SIN_EPS and sx >= -SIN_EPS:
                return x, 0.0
            continue
        x = x1
        p = p1
        t += dt
    return x, p
