"""Zeros of the constraint functional F on (0, 1).

F(1) = 0 always (the structural boundary root).  Interior zeros, when they
exist, are where the minimizing profile develops an asymmetric shape; the
solver takes the minimum of K over all of them plus m=1.  The scan works on
[M_MIN, 1 - delta_excl]: a neighborhood of 1 is excluded so quadrature noise
around the structural zero is never misread as an interior root.
"""

from dataclasses import dataclass

import numpy as np

from .core import M_MIN, F_of_m, Params, _require
from .errors import ConvergenceError
from .quadrature import QuadConfig

ROOT_TOL_M = 1e-12
ROOT_TOL_F = 1e-10
DELTA_EXCL = 1e-4
_MAX_BRENT_ITERS = 200


@dataclass(frozen=True)
class RootSet:
    """All located zeros of F, interior ones separated from the one at m=1."""

    interior_roots: tuple
    has_boundary_root: bool
    brackets_scanned: int
    delta_excl: float


def _grid(n_grid: int) -> np.ndarray:
    """Graded grid on [M_MIN, 1 - DELTA_EXCL], quadratically denser near 1.

    Interior roots migrate toward 1 as q decreases to (2r-1)p, so resolution
    is concentrated there.
    """
    lo = M_MIN
    hi = 1.0 - DELTA_EXCL
    s = np.arange(n_grid, dtype=np.float64) / (n_grid - 1)
    return lo + (hi - lo) * (1.0 - (1.0 - s) ** 2)


def scan_brackets(prm: Params, n_grid: int = 2048,
                  cfg: QuadConfig | None = None) -> list:
    """Sign-change brackets of F on the graded grid.

    Returns (lo, hi) pairs.  A strict sign change between grid values that
    are clearly nonzero (|F| > ROOT_TOL_F) gives an ordinary bracket.  Grid
    values inside the noise band |F| <= ROOT_TOL_F are sign-indeterminate:
    a run of them counts as one degenerate bracket (lo == hi, at the point
    of smallest |F|) only when the clearly-nonzero values flanking the run
    have opposite signs.  A run whose flanks agree in sign, or that touches
    the scan boundary, witnesses no crossing and is dropped; this is what
    keeps the scan stable when F decays to zero at the excluded endpoint
    without crossing (q = (2r-1)p).
    """
    _require(prm, "main")
    if n_grid < 64:
        raise ValueError(f"scan requires n_grid >= 64, got {n_grid}")
    ms = _grid(n_grid)
    vals = np.empty_like(ms)
    for i, m in enumerate(ms):
        try:
            vals[i] = F_of_m(float(m), prm, cfg)
        except ConvergenceError as e:
            raise ConvergenceError(
                f"F scan failed at grid point m={float(m)!r}: {e}"
            ) from e
    brackets = []
    prev = None  # index of the last clearly-nonzero grid value
    zone_run = []  # indices of noise-band values since then
    for i in range(n_grid):
        if abs(vals[i]) <= ROOT_TOL_F:
            zone_run.append(i)
            continue
        if prev is not None and np.sign(vals[i]) != np.sign(vals[prev]):
            if zone_run:
                j = min(zone_run, key=lambda k: abs(vals[k]))
                brackets.append((float(ms[j]), float(ms[j])))
            else:
                brackets.append((float(ms[prev]), float(ms[i])))
        prev = i
        zone_run = []
    return brackets


def refine_root(bracket, prm: Params, cfg: QuadConfig | None = None) -> float:
    """Refine one sign-change bracket of F by Brent iteration.

    Stops when the bracket width falls below ROOT_TOL_M or |F| below
    ROOT_TOL_F.  Degenerate brackets (lo == hi) are already converged.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if lo == hi:
        return lo
    return _brent(lambda m: F_of_m(m, prm, cfg), lo, hi)


def _brent(f, x1: float, x2: float) -> float:
    """Brent bracketing: inverse-quadratic/secant steps safeguarded by
    bisection.  Requires f(x1) f(x2) < 0."""
    a, b = x1, x2
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0.0) == (fb > 0.0):
        raise ValueError(f"bracket [{x1}, {x2}] does not straddle a sign change")
    c, fc = b, fb
    d = e = b - a
    for _ in range(_MAX_BRENT_ITERS):
        if (fb > 0.0) == (fc > 0.0):
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol1 = 2.0 * 2.3e-16 * abs(b) + 0.5 * ROOT_TOL_M
        xm = 0.5 * (c - b)
        if abs(xm) <= tol1 or fb == 0.0 or abs(fb) <= ROOT_TOL_F:
            return b
        if abs(e) >= tol1 and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                pp = 2.0 * xm * s
                qq = 1.0 - s
            else:
                qq = fa / fc
                rr = fb / fc
                pp = s * (2.0 * xm * qq * (qq - rr) - (b - a) * (rr - 1.0))
                qq = (qq - 1.0) * (rr - 1.0) * (s - 1.0)
            if pp > 0.0:
                qq = -qq
            pp = abs(pp)
            if 2.0 * pp < min(3.0 * xm * qq - abs(tol1 * qq), abs(e * qq)):
                e = d
                d = pp / qq
            else:
                d = xm
                e = d
        else:
            d = xm
            e = d
        a, fa = b, fb
        if abs(d) > tol1:
            b += d
        else:
            b += tol1 if xm > 0.0 else -tol1
        fb = f(b)
    raise ConvergenceError(
        f"root refinement exceeded {_MAX_BRENT_ITERS} iterations on "
        f"[{x1}, {x2}]; quadrature noise likely exceeds |F| tolerance "
        f"{ROOT_TOL_F}"
    )


def find_roots(prm: Params, cfg: QuadConfig | None = None,
               n_grid: int = 2048) -> RootSet:
    """All zeros of F: refined interior roots plus the structural m=1."""
    _require(prm, "main")
    brackets = scan_brackets(prm, n_grid, cfg)
    roots = sorted(refine_root(bk, prm, cfg) for bk in brackets)
    kept = []
    for root in roots:
        if not M_MIN < root < 1.0 - DELTA_EXCL:
            continue
        if kept and root - kept[-1] <= 2.0 * ROOT_TOL_M:
            continue
        kept.append(root)
    return RootSet(
        interior_roots=tuple(kept),
        has_boundary_root=True,
        brackets_scanned=n_grid - 1,
        delta_excl=DELTA_EXCL,
    )
