"""Extremal profile construction and verification.

The minimizer with minimum -m solves the separable ODE u' = gamma h(u) with
h = g^{1/p}, rising from u(-1) = -m to u(0) = 1 and mirrored evenly onto
(0, 1].  Since h vanishes at both ends (u'(-1) = u'(0) = 0), time-stepping
the ODE stalls at the equilibria; instead the strictly monotone period map

    k(y) = int_{-m}^y g(s)^{-1/p} ds,   k(1) = gamma,

is tabulated and inverted: u(x_j) solves k(u) = gamma (1 + x_j) by
bracketed bisection inside the table panel containing the target.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import KIND_ABS_Q, KIND_G_CONJ, KIND_PHI_R, KIND_PLAIN
from .core import (
    M_MIN,
    K_of_m,
    MDiagnostics,
    Params,
    _check_m,
    _require,
    g_family_integral,
    g_of,
    one_minus_r_of_m,
    r_of_m,
)
from .errors import ConvergenceError
from .quadrature import QuadConfig

# bisection tolerance on the profile value u at each node
_INVERT_TOL = 1e-12


@dataclass(frozen=True)
class Profile:
    """Sampled extremal: even, periodic, max u=1 at x=0, min u=-m at x=+-1."""

    m: float
    prm: Params
    gamma: float
    nodes: np.ndarray
    u_values: np.ndarray
    du_values: np.ndarray
    diagnostics: MDiagnostics


@dataclass(frozen=True)
class ProfileReport:
    """Named residuals of every identity the profile must satisfy.

    constraint_residual   (a) |int |u|^{r-2}u| over the period
    norm_q_identity       (b) |  ||u||_q^q - 2p(1-r(m))/(q(p-1)+p) |
    derivative_identity   (c) |  ||u'||_p^p - (q/p') gamma^p ||u||_q^q |
    quotient_vs_k         (d) |  ||u'||_p / ||u||_q - K(m) |
    euler_lagrange        (e) max_j | |u'(x_j)| - gamma~ g(u(x_j))^{1/p} |
                              with gamma~ from alpha = K(m)
    evenness_defect       (f) max_j |u(x_j) - u(-x_j)|
    """

    constraint_residual: float
    norm_q_identity: float
    derivative_identity: float
    quotient_vs_k: float
    euler_lagrange: float
    evenness_defect: float

    def as_dict(self) -> dict:
        return {
            "constraint_residual": self.constraint_residual,
            "norm_q_identity": self.norm_q_identity,
            "derivative_identity": self.derivative_identity,
            "quotient_vs_k": self.quotient_vs_k,
            "euler_lagrange": self.euler_lagrange,
            "evenness_defect": self.evenness_defect,
        }


def _check_profile_m(m: float) -> float:
    m = _check_m(m)
    if m <= M_MIN:
        raise OverflowError(
            f"profile quantities diverge as m -> 0; refusing m={m} <= {M_MIN}"
        )
    return m


def gamma_of_m(m: float, prm: Params, cfg: QuadConfig | None = None) -> float:
    """Half-period time gamma = int_{-m}^1 g(s)^{-1/p} ds."""
    _require(prm, "main")
    m = _check_profile_m(m)
    res = g_family_integral(KIND_PLAIN, -m, 1.0, m, prm, cfg)
    if not res.converged:
        raise ConvergenceError(
            f"gamma integral did not converge at m={m} "
            f"(error estimate {res.error_estimate:.3e})"
        )
    return res.value


def _graded_mesh(a: float, b: float, k: int) -> np.ndarray:
    """Smoothstep-graded panel edges on [a, b], clustered at both ends."""
    s = np.arange(k + 1, dtype=np.float64) / k
    xs = a + (b - a) * (3.0 * s * s - 2.0 * s ** 3)
    xs[0] = a
    xs[-1] = b
    return xs


def _period_table(m: float, prm: Params, n_tab: int, cfg: QuadConfig):
    """Edges y_i and cumulative k(y_i) over [-m, 1], with 0 a mesh point."""
    edges = np.concatenate([
        _graded_mesh(-m, 0.0, n_tab)[:-1],
        _graded_mesh(0.0, 1.0, n_tab),
    ])
    cum = np.empty_like(edges)
    cum[0] = 0.0
    for i in range(1, edges.size):
        res = g_family_integral(KIND_PLAIN, float(edges[i - 1]), float(edges[i]),
                                m, prm, cfg)
        if not res.converged:
            raise ConvergenceError(
                f"period-map panel [{edges[i-1]!r}, {edges[i]!r}] did not converge"
            )
        cum[i] = cum[i - 1] + res.value
    if not np.all(np.diff(cum) > 0.0):
        raise ConvergenceError(
            "period-map table is not strictly monotone; quadrature noise "
            "exceeds panel integrals"
        )
    return edges, cum


def _invert(target: float, edges: np.ndarray, cum: np.ndarray, m: float,
            prm: Params, cfg: QuadConfig) -> float:
    """Solve k(y) = target by bisection inside the bracketing table panel."""
    i = int(np.searchsorted(cum, target, side="right")) - 1
    i = min(max(i, 0), edges.size - 2)
    lo, hi = float(edges[i]), float(edges[i + 1])
    base = float(cum[i])
    while hi - lo > _INVERT_TOL:
        mid = 0.5 * (lo + hi)
        res = g_family_integral(KIND_PLAIN, float(edges[i]), mid, m, prm, cfg)
        if base + res.value < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def build_profile(m: float, prm: Params, n: int = 512,
                  cfg: QuadConfig | None = None) -> Profile:
    """Construct the extremal with minimum -m, sampled at 2n+1 nodes.

    The half-period [-1, 0] carries n+1 Chebyshev-clustered abscissae
    (dense near x = -1 and x = 0 where u' vanishes and u flattens); the
    other half is the even mirror.  Derivative samples are gamma h(u) on
    [-1, 0] and -gamma h(u) on (0, 1].
    """
    _require(prm, "main")
    m = _check_profile_m(m)
    if n < 32:
        raise ValueError(f"build_profile requires n >= 32, got {n}")
    if cfg is None:
        cfg = QuadConfig()

    edges, cum = _period_table(m, prm, max(128, n // 2), cfg)
    gamma = float(cum[-1])

    j = np.arange(n + 1, dtype=np.float64)
    x_half = -(1.0 + np.cos(j * np.pi / n)) / 2.0
    x_half[0] = -1.0
    x_half[-1] = 0.0

    u_half = np.empty(n + 1)
    u_half[0] = -m
    u_half[-1] = 1.0
    for idx in range(1, n):
        target = gamma * (1.0 + x_half[idx])
        u_half[idx] = _invert(target, edges, cum, m, prm, cfg)
    if np.any(np.diff(u_half) < -2.0 * _INVERT_TOL):
        raise ConvergenceError("profile inversion is not monotone")
    # adjacent samples can land within bisection noise of each other near
    # the flat ends; restore exact monotonicity there
    u_half = np.maximum.accumulate(u_half)

    du_half = np.array([gamma * g_of(float(u), m, prm) ** (1.0 / prm.p)
                        for u in u_half])

    nodes = np.concatenate([x_half, -x_half[-2::-1]])
    u_values = np.concatenate([u_half, u_half[-2::-1]])
    du_values = np.concatenate([du_half, -du_half[-2::-1]])

    alpha = K_of_m(m, prm, cfg)
    return Profile(
        m=m,
        prm=prm,
        gamma=gamma,
        nodes=nodes,
        u_values=u_values,
        du_values=du_values,
        diagnostics=diagnostics_of_m(m, prm, alpha),
    )


def _simpson_nonuniform(x: np.ndarray, y: np.ndarray) -> float:
    """Composite Simpson on a non-uniform grid (quadratic per point pair);
    a trailing odd panel integrates the quadratic through the last three
    points over that panel only."""
    n = x.size - 1
    acc = 0.0
    i = 0
    while i + 2 <= n:
        h0 = x[i + 1] - x[i]
        h1 = x[i + 2] - x[i + 1]
        hs = h0 + h1
        acc += hs / 6.0 * ((2.0 - h1 / h0) * y[i]
                           + hs * hs / (h0 * h1) * y[i + 1]
                           + (2.0 - h0 / h1) * y[i + 2])
        i += 2
    if i < n:
        h0 = x[n - 1] - x[n - 2]
        h1 = x[n] - x[n - 1]
        acc += y[n] * (2.0 * h1 * h1 + 3.0 * h0 * h1) / (6.0 * (h0 + h1)) \
            + y[n - 1] * (h1 * h1 + 3.0 * h0 * h1) / (6.0 * h0) \
            - y[n - 2] * h1 ** 3 / (6.0 * h0 * (h0 + h1))
    return acc


def _half_period_integrals(prof: Profile, cfg: QuadConfig):
    """(||u||_q^q, ||u'||_p^p, constraint integral) over the full period.

    Interior panels use composite Simpson on the samples; the two endpoint
    panels of the half-period, where u' degenerates, are integrated
    analytically by substituting v = u(x), dx = dv / (gamma h(v)):
    int phi(u) dx = (1/gamma) int phi(v) g(v)^{-1/p} dv and
    int |u'|^p dx = gamma^{p-1} int g(v)^{1/p'} dv.
    """
    m, prm, gamma = prof.m, prof.prm, prof.gamma
    n_half = (prof.nodes.size - 1) // 2
    x = prof.nodes[:n_half + 1]
    u = prof.u_values[:n_half + 1]
    du = prof.du_values[:n_half + 1]
    p, q, r = prm.p, prm.q, prm.r

    xi, ui, dui = x[1:-1], u[1:-1], du[1:-1]
    norm_q = _simpson_nonuniform(xi, np.abs(ui) ** q)
    norm_p = _simpson_nonuniform(xi, np.abs(dui) ** p)
    constr = _simpson_nonuniform(xi, np.sign(ui) * np.abs(ui) ** (r - 1.0))

    for (va, vb) in ((float(u[0]), float(u[1])), (float(u[-2]), float(u[-1]))):
        norm_q += g_family_integral(KIND_ABS_Q, va, vb, m, prm, cfg).value / gamma
        constr += g_family_integral(KIND_PHI_R, va, vb, m, prm, cfg).value / gamma
        norm_p += g_family_integral(KIND_G_CONJ, va, vb, m, prm, cfg).value \
            * gamma ** (p - 1.0)
    return 2.0 * norm_q, 2.0 * norm_p, 2.0 * constr


def verify_profile(prof: Profile, cfg: QuadConfig | None = None) -> ProfileReport:
    """Residuals of the identities the extremal satisfies; report only."""
    if cfg is None:
        cfg = QuadConfig()
    prm = prof.prm
    p, q = prm.p, prm.q
    pc = prm.p_conj
    m = prof.m

    nq_q, np_p, constr = _half_period_integrals(prof, cfg)
    norm_q = nq_q ** (1.0 / q)
    norm_p = np_p ** (1.0 / p)

    k_m = K_of_m(m, prm, cfg)
    omr = one_minus_r_of_m(m, prm)
    nq_closed = (2.0 * p * omr / (q * (p - 1.0) + p)) ** (1.0 / q)
    gamma_tilde = (pc / q * k_m ** p * nq_closed ** (p - q)) ** (1.0 / p)

    n_half = (prof.nodes.size - 1) // 2
    u_half = prof.u_values[:n_half + 1]
    du_half = prof.du_values[:n_half + 1]
    el = 0.0
    for idx in range(1, n_half):
        h_val = g_of(float(u_half[idx]), m, prm) ** (1.0 / p)
        el = max(el, abs(abs(du_half[idx]) - gamma_tilde * h_val))

    even = float(np.max(np.abs(prof.u_values - prof.u_values[::-1])))

    return ProfileReport(
        constraint_residual=float(abs(constr)),
        norm_q_identity=float(abs(nq_q - 2.0 * p * omr / (q * (p - 1.0) + p))),
        derivative_identity=float(abs(np_p - (q / pc) * prof.gamma ** p * nq_q)),
        quotient_vs_k=float(abs(norm_p / norm_q - k_m)),
        euler_lagrange=float(el),
        evenness_defect=float(even),
    )


def diagnostics_of_m(m: float, prm: Params, alpha: float) -> MDiagnostics:
    """Multiplier data at the maximum of the extremal, from closed formulas.

    mu = (p/q) alpha^p ||u||_q^{p-q} r(m), c = alpha^p (p/q) ||u||_q^{p-q}
    (1 - r(m)), and ||u||_q from the norm identity; they satisfy
    mu m^{r-1} + alpha^p (p/q) ||u||_q^{p-q} m^q = c.
    """
    _require(prm, "main")
    m = _check_m(m)
    p, q = prm.p, prm.q
    rm = r_of_m(m, prm)
    omr = one_minus_r_of_m(m, prm)
    norm_q = (2.0 * p * omr / (q * (p - 1.0) + p)) ** (1.0 / q)
    scale = (p / q) * alpha ** p * norm_q ** (p - q)
    return MDiagnostics(
        m=m,
        r_m=rm,
        one_minus_r_m=omr,
        mu=scale * rm,
        c_lagr=scale * omr,
        norm_q=norm_q,
    )
