"""Hot numerical kernels, written once for both execution paths.

Every function here is numpy-vectorized and numba-njit compatible; the
decorator from ``_jit`` compiles them when numba is enabled and leaves them
as plain numpy otherwise.  Contents:

* stable evaluation of g(z) = 1 - r(m) + r(m)|z|^{r-2}z - |z|^q from the
  exact distances to its endpoint zeros at -m and 1,
* a tanh-sinh level loop for the four integrand families built on g,
* the projected-gradient machinery of the brute-force oracle.

g has simple zeros at both endpoints, so naive evaluation near them loses
every digit to cancellation.  With da = z + m and db = 1 - z the two sides
reduce to differences of powers that expm1/log1p evaluate to full relative
precision:

    z <= 0:  g = -r(m) m^{r-1} expm1((r-1) log1p(-da/m)) - m^q expm1(q log1p(-da/m))
    z >  0:  g = r(m) expm1((r-1) log1p(-db)) - expm1(q log1p(-db))

using 1 - r(m) = r(m) m^{r-1} + m^q (exact identity).
"""

import numpy as np

from ._jit import maybe_jit

# integrand family codes for ts_g_integral
KIND_G_CONJ = 0  # g^{1/p'}               (K and the |u'|^p endpoint panels)
KIND_PHI_R = 1  # |z|^{r-2} z g^{-1/p}    (F and the constraint panels)
KIND_PLAIN = 2  # g^{-1/p}                (gamma and the H table)
KIND_ABS_Q = 3  # |z|^q g^{-1/p}          (the ||u||_q^q endpoint panels)

# largest representable double below 1.0; log1p(-x) stays finite up to here
_ONE_MINUS = 1.0 - 2.3e-16


@maybe_jit
def g_batch(da, db, m, q, r, rm):
    """g at exact endpoint distances da (from -m) and db (from 1), arrays."""
    ra = np.minimum(da / m, _ONE_MINUS)
    la = np.log1p(-ra)
    ga = -rm * m ** (r - 1.0) * np.expm1((r - 1.0) * la) - m ** q * np.expm1(q * la)
    rb = np.minimum(db, _ONE_MINUS)
    lb = np.log1p(-rb)
    gb = rm * np.expm1((r - 1.0) * lb) - np.expm1(q * lb)
    return np.where(da <= m, ga, gb)


@maybe_jit
def _integrand_batch(kind, da, db, m, p, q, r, rm):
    """One tanh-sinh level's integrand values; non-positive g contributes 0."""
    g = g_batch(da, db, m, q, r, rm)
    ok = g > 0.0
    gg = np.where(ok, g, 1.0)
    if kind == 0:
        vals = gg ** (1.0 - 1.0 / p)
    else:
        f = gg ** (-1.0 / p)
        if kind == 2:
            vals = f
        else:
            neg = da <= m
            absz = np.where(neg, m - da, 1.0 - db)
            if kind == 1:
                phi = np.where(neg, -(absz ** (r - 1.0)), absz ** (r - 1.0))
                vals = phi * f
            else:
                vals = absz ** q * f
    return np.where(ok, vals, 0.0)


@maybe_jit
def ts_g_integral(kind, aa, bb, off_a, off_b, m, p, q, r, rm,
                  sa, sb, w, ptr, base_level, min_level, max_level,
                  abs_tol, rel_tol):
    """Tanh-sinh integral of a g-family integrand over [aa, bb] in [-m, 1].

    off_a = aa + m and off_b = 1 - bb are the distances from the panel ends
    to the global endpoint zeros of g; they must be exactly 0.0 when the
    panel touches the corresponding endpoint.  Returns
    (value, error_estimate, levels_used, converged).
    """
    width = bb - aa
    half = 0.5 * width
    value = 0.0
    err = np.inf
    level = min_level
    for level in range(min_level, max_level + 1):
        if level == min_level:
            lo, hi = ptr[base_level], ptr[level + 1]
        else:
            lo, hi = ptr[level], ptr[level + 1]
        pa = width * sa[lo:hi]
        pb = width * sb[lo:hi]
        da = off_a + pa
        db = off_b + pb
        vals = _integrand_batch(kind, da, db, m, p, q, r, rm)
        keep = (pa >= 1e-300) & (pb >= 1e-300)
        s = np.sum(np.where(keep, w[lo:hi] * vals, 0.0))
        if level == min_level:
            value = half * s * 2.0 ** (-level)
        else:
            new_value = 0.5 * value + half * s * 2.0 ** (-level)
            err = abs(new_value - value)
            value = new_value
            if err <= max(abs_tol, rel_tol * abs(value)):
                return value, err, level, True
    return value, err, level, False


# ---------------------------------------------------------------------------
# oracle kernels: discrete quotient, constraint projection, descent
# ---------------------------------------------------------------------------


@maybe_jit
def oracle_project(u, r):
    """Shift u by the scalar t with sum |u+t|^{r-2}(u+t) = 0.

    The map t -> sum phi_r(u+t) is strictly increasing, so the root is unique
    and bracketed by [-max u, -min u]; safeguarded Newton with bisection
    fallback.  Convergence is tested before the shift is updated.
    """
    lo = -np.max(u)
    hi = -np.min(u)
    t = 0.0
    if t < lo:
        t = lo
    elif t > hi:
        t = hi
    for _ in range(200):
        v = u + t
        av = np.abs(v)
        s = np.sum(np.sign(v) * av ** (r - 1.0))
        scale = np.sum(av ** (r - 1.0))
        if np.abs(s) <= 1e-13 * scale:
            return v
        if s > 0.0:
            hi = t
        else:
            lo = t
        ds = (r - 1.0) * np.sum(av ** (r - 2.0))
        if ds > 0.0:
            tn = t - s / ds
        else:
            tn = 0.5 * (lo + hi)
        if tn > lo and tn < hi:
            t = tn
        else:
            t = 0.5 * (lo + hi)
        span = hi - lo
        bound = max(1.0, max(abs(lo), abs(hi)))
        if span <= 1e-16 * bound:
            break
    return u + t


@maybe_jit
def oracle_quotient_grad(u, p, q, dx):
    """Discrete quotient ||u'||_p / ||u||_q and its gradient.

    Forward differences for the derivative norm, trapezoid rule for the
    q-norm (equal weights on the periodic grid).
    """
    d = np.roll(u, -1) - u
    sp = np.sum(np.abs(d) ** p)
    sq = np.sum(np.abs(u) ** q)
    nn = (sp * dx ** (1.0 - p)) ** (1.0 / p)
    dd = (sq * dx) ** (1.0 / q)
    quot = nn / dd
    fp = np.sign(d) * np.abs(d) ** (p - 1.0)
    g_num = nn ** (1.0 - p) * dx ** (1.0 - p) * (np.roll(fp, 1) - fp)
    g_den = dd ** (1.0 - q) * dx * np.sign(u) * np.abs(u) ** (q - 1.0)
    return quot, (g_num - quot * g_den) / dd


@maybe_jit
def _tangent(grad, u, r):
    """Remove the component of grad along the constraint normal at u."""
    c = (r - 1.0) * np.abs(u) ** (r - 2.0)
    return grad - (np.sum(grad * c) / np.sum(c * c)) * c


@maybe_jit
def oracle_descend(u0, p, q, r, dx, max_iters, gtol, step0, step_max):
    """Projected gradient descent from one start vector.

    Barzilai-Borwein steps with a nonmonotone Armijo safeguard (reference:
    worst of the last 10 accepted values), which handles the O(n^2)
    stiffness of the discrete quotient that defeats fixed-step descent.
    Returns (quotient, iterations, converged, minimizer).  Convergence is a
    small constraint-tangent gradient: max|G_t| <= gtol * max(1, Q).
    """
    u = oracle_project(u0, r)
    u = u / np.max(np.abs(u))
    quot, grad = oracle_quotient_grad(u, p, q, dx)
    gt = _tangent(grad, u, r)
    recent = np.full(10, quot)
    step = step0
    it = 0
    for it in range(max_iters):
        if np.max(np.abs(gt)) <= gtol * max(1.0, quot):
            return quot, it, True, u
        gn2 = np.sum(gt * gt)
        fref = np.max(recent)
        trial = step
        accepted = False
        qv = quot
        gv = grad
        v = u
        while trial > 1e-16:
            v = oracle_project(u - trial * gt, r)
            v = v / np.max(np.abs(v))
            qv, gv = oracle_quotient_grad(v, p, q, dx)
            if qv <= fref - 1e-4 * trial * gn2:
                accepted = True
                break
            trial *= 0.5
        if not accepted:
            break
        gtv = _tangent(gv, v, r)
        du = v - u
        dg = gtv - gt
        denom = np.sum(du * dg)
        if denom > 0.0:
            step = min(max(np.sum(du * du) / denom, 1e-10), step_max)
        else:
            step = min(trial * 2.0, step_max)
        u = v
        quot = qv
        grad = gv
        gt = gtv
        recent[it % 10] = quot
    return quot, it, np.max(np.abs(gt)) <= gtol * max(1.0, quot), u
