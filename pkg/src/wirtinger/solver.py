"""Best constant alpha(p,q,r) for any admissible exponent triple.

Dispatch: the q=1, q=infinity, p=infinity limit cases and 1<q=r<2 go to
their closed forms; everything else minimizes K over the zero set of F
(always containing m=1, plus any interior roots).  The regime tag records
what is actually proved about the triple:

    CLOSED_FORM_EQUALITY   q <= rp+r-1 (or q=r, or a limit case):
                           alpha(p,q,r) = alpha(p,q,q)
    STRICT_INEQUALITY      q > (2r-1)p: alpha(p,q,r) < alpha(p,q,q)
    INCONCLUSIVE_BAND      rp+r-1 < q <= (2r-1)p: open; the numeric
                           minimum is still returned
"""

import concurrent.futures
from dataclasses import dataclass

import numpy as np

from .core import (
    Params,
    _require,
    alpha_closed_form,
    alpha_p_infinity,
    alpha_q1_r2,
    alpha_q_infinity_r2,
    k_of_m_with_error,
)
from .errors import ParamsError
from .quadrature import QuadConfig
from .rootfind import RootSet, find_roots

REGIME_EQUALITY = "CLOSED_FORM_EQUALITY"
REGIME_STRICT = "STRICT_INEQUALITY"
REGIME_BAND = "INCONCLUSIVE_BAND"

# relative gap alpha_qq - alpha above which a scan declares the equality
# broken; two orders of magnitude above the quadrature noise floor
GAP_TOL_REL = 1e-7


@dataclass(frozen=True)
class AlphaResult:
    """Minimization outcome: the constant, its minimizer, and the evidence.

    k_values lists (root, K(root)) for every interior root; alpha is the
    minimum of those values and k_at_one.  alpha_qq is the q=r closed form
    for comparison (equal to alpha itself in the limit cases, where the
    notion of a gap does not apply).  quad_error bounds the quadrature error
    of the reported alpha (0 for closed forms); roots is None for the limit
    and diagonal cases that never touch F.
    """

    alpha: float
    m_star: float
    regime: str
    roots: RootSet | None
    k_at_one: float
    k_values: tuple
    alpha_qq: float
    quad_error: float


def classify_regime(prm: Params) -> str:
    """Which proved regime a main-class triple falls in, by pure arithmetic."""
    _require(prm, "main")
    p, q, r = prm.p, prm.q, prm.r
    if q <= r * p + r - 1.0:
        return REGIME_EQUALITY
    if q > (2.0 * r - 1.0) * p:
        return REGIME_STRICT
    return REGIME_BAND


def _closed_form_result(alpha: float) -> AlphaResult:
    return AlphaResult(
        alpha=alpha, m_star=1.0, regime=REGIME_EQUALITY, roots=None,
        k_at_one=alpha, k_values=(), alpha_qq=alpha, quad_error=0.0,
    )


def best_constant(prm: Params, cfg: QuadConfig | None = None) -> AlphaResult:
    """alpha(p,q,r) = inf{ K(m) : m in (0,1], F(m) = 0 }.

    Limit classes return their closed-form constants directly.  For the
    main class the zero set is m=1 plus the interior roots of F; K is
    evaluated at each and the minimum returned.
    """
    if prm.kind == "q1":
        return _closed_form_result(alpha_q1_r2(prm.p))
    if prm.kind == "qinf":
        return _closed_form_result(alpha_q_infinity_r2(prm.p))
    if prm.kind == "pinf":
        return _closed_form_result(alpha_p_infinity(prm.q))
    if prm.kind == "diag":
        return _closed_form_result(alpha_closed_form(prm.p, prm.q))

    roots = find_roots(prm, cfg)
    k_at_one, err_one = k_of_m_with_error(1.0, prm, cfg)
    k_values = []
    quad_error = err_one
    alpha = k_at_one
    m_star = 1.0
    for root in roots.interior_roots:
        kv, err = k_of_m_with_error(root, prm, cfg)
        k_values.append((root, kv))
        quad_error = max(quad_error, err)
        if kv < alpha:
            alpha = kv
            m_star = root
    return AlphaResult(
        alpha=alpha,
        m_star=m_star,
        regime=classify_regime(prm),
        roots=roots,
        k_at_one=k_at_one,
        k_values=tuple(k_values),
        alpha_qq=alpha_closed_form(prm.p, prm.q),
        quad_error=quad_error,
    )


def rescale(alpha: float, prm: Params, a: float, b: float) -> float:
    """Best constant for the interval (a, b): (2/(b-a))^{1/p'+1/q} alpha.

    1/p' = 1 at p=INFINITY (p' = 1) and 1/q = 0 at q=INFINITY; both limit
    exponents come out of the same expression.
    """
    if not a < b:
        raise ValueError(f"rescale requires a < b, got a={a}, b={b}")
    if not alpha > 0.0:
        raise ValueError(f"rescale requires alpha > 0, got {alpha}")
    exponent = 1.0 / prm.p_conj + 1.0 / prm.q
    return (2.0 / (b - a)) ** exponent * alpha


@dataclass(frozen=True)
class ScanRow:
    """One q-grid point of a breakpoint scan; result or error, never both."""

    q: float
    result: AlphaResult | None
    error: str | None


@dataclass(frozen=True)
class BreakpointScan:
    """Gap table over a q-grid plus the estimated breakpoint.

    q_star is the smallest grid q whose gap alpha_qq - alpha exceeds
    gap_tol; the true breakpoint then lies in (q_star - spacing, q_star]
    at this grid resolution (never a point claim).  gap_monotone records
    whether the gap was non-decreasing after its first positive value.
    """

    rows: tuple
    q_star: float | None
    spacing: float
    gap_monotone: bool

    def table(self) -> list:
        """Rows flattened to (q, alpha, alpha_qq, gap); failures skipped."""
        return [
            (row.q, row.result.alpha, row.result.alpha_qq,
             row.result.alpha_qq - row.result.alpha)
            for row in self.rows if row.result is not None
        ]


def _scan_one(p: float, r: float, q: float, cfg: QuadConfig | None) -> ScanRow:
    try:
        res = best_constant(Params(p, q, r), cfg)
        return ScanRow(q=q, result=res, error=None)
    except (ParamsError, ValueError, ArithmeticError, RuntimeError) as e:
        return ScanRow(q=q, result=None, error=f"{type(e).__name__}: {e}")


def breakpoint_scan(p: float, r: float, q_lo: float, q_hi: float, n: int,
                    cfg: QuadConfig | None = None, *,
                    gap_tol_rel: float = GAP_TOL_REL,
                    parallel: bool = False) -> BreakpointScan:
    """Locate where alpha(p,q,r) separates from alpha(p,q,q) along a q-grid.

    The conjectured breakpoint is q = (2r-1)p; the proved statements only
    bound it within (rp+r-1, (2r-1)p].  Each grid point runs a full
    best_constant; isolated failures become error rows.
    """
    if not q_lo >= max(r - 1.0, 1.0):
        raise ParamsError(f"q_lo must be >= max(r-1, 1) = {max(r - 1.0, 1.0)}, got {q_lo}")
    if not q_hi > q_lo:
        raise ParamsError(f"need q_hi > q_lo, got [{q_lo}, {q_hi}]")
    if n < 2:
        raise ParamsError(f"scan needs n >= 2 grid points, got {n}")
    qs = [float(v) for v in np.linspace(q_lo, q_hi, n)]
    if parallel:
        with concurrent.futures.ThreadPoolExecutor(max_workers=4) as pool:
            rows = list(pool.map(lambda q: _scan_one(p, r, q, cfg), qs))
    else:
        rows = [_scan_one(p, r, q, cfg) for q in qs]
    q_star = None
    gap_monotone = True
    largest = 0.0
    for row in rows:
        if row.result is None:
            continue
        gap = row.result.alpha_qq - row.result.alpha
        tol = gap_tol_rel * row.result.alpha_qq
        if q_star is None:
            if gap > tol:
                q_star = row.q
                largest = gap
        else:
            if gap < largest - tol:
                gap_monotone = False
            largest = max(largest, gap)
    return BreakpointScan(
        rows=tuple(rows),
        q_star=q_star,
        spacing=(q_hi - q_lo) / (n - 1),
        gap_monotone=gap_monotone,
    )
