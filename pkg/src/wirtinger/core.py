"""Scalar functions of the one-dimensional reduction.

The best constant alpha(p,q,r) in ||u'||_p >= alpha ||u||_q over periodic
functions on (-1,1) with the mean-type constraint int |u|^{r-2}u = 0 reduces
to a minimization over a single shape parameter m in (0,1]:

    alpha = inf { K(m) : F(m) = 0 },

where m is minus the minimum of the (normalized) extremal, r(m) couples the
constraint to the profile, g is the autonomous factor of the extremal ODE,
K(m) is the quotient value of the profile with minimum -m, and F(m) = 0
expresses the constraint.  This module holds those scalar functions, the
closed form for alpha(p,q,q), and the q=1, q=infinity, p=infinity limit
constants.
"""

import math
from dataclasses import dataclass, field

from . import quadrature
from ._kernels import KIND_G_CONJ, KIND_PHI_R, ts_g_integral
from .errors import ConvergenceError, ParamsError
from .quadrature import QuadConfig, QuadResult
from .specfun import beta

INFINITY = math.inf

# An exponent is an ordinary float; INFINITY is the explicit limit tag and
# never arises from overflow.
Exponent = float

# K(m) ~ (1 - r(m))^{-(p'+q)/(p'q)} diverges as m -> 0; below this cutoff no
# finite value is meaningful and K_of_m raises OverflowError instead.
M_MIN = 1e-4


def _classify(p, q, r) -> str:
    """Assign exactly one admissibility class or raise ParamsError."""
    for name, v in (("p", p), ("q", q), ("r", r)):
        if not isinstance(v, (int, float)) or math.isnan(v):
            raise ParamsError(f"{name} must be a real number, got {v!r}")
    if math.isinf(r):
        raise ParamsError("r must be finite")
    if math.isinf(p):
        if math.isinf(q):
            raise ParamsError("p and q cannot both be INFINITY")
        if r >= 2.0 and q >= r - 1.0:
            return "pinf"
        raise ParamsError("p=INFINITY requires q >= r-1 >= 1")
    if not p > 1.0:
        raise ParamsError(f"p must exceed 1 (or be INFINITY), got {p}")
    if math.isinf(q):
        if r == 2.0:
            return "qinf"
        raise ParamsError("q=INFINITY is only covered for r=2")
    if q == 1.0:
        if r == 2.0:
            return "q1"
        raise ParamsError("q=1 is only covered for r=2")
    if q == r and 1.0 < q < 2.0:
        return "diag"
    if q > 1.0 and r >= 2.0 and q >= r - 1.0:
        return "main"
    raise ParamsError(
        f"(p,q,r)=({p},{q},{r}) is not admissible: require q >= r-1 >= 1 "
        "(or q=r>1, or one of the q=1, q=INFINITY, p=INFINITY limit cases)"
    )


@dataclass(frozen=True)
class Params:
    """Validated exponent triple with its admissibility class.

    kind is one of "main" (finite p>1, q>1, q >= r-1 >= 1; q=r >= 2 counts
    as main since the full machinery applies there), "diag" (1 < q=r < 2,
    closed form only), "q1", "qinf", "pinf".
    """

    p: Exponent
    q: Exponent
    r: float
    kind: str = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "q", float(self.q))
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "kind", _classify(self.p, self.q, self.r))

    @property
    def p_conj(self) -> float:
        """Conjugate exponent p' with 1/p + 1/p' = 1; equals 1 at p=INFINITY."""
        if math.isinf(self.p):
            return 1.0
        return self.p / (self.p - 1.0)


@dataclass(frozen=True)
class MDiagnostics:
    """Multiplier data of the extremal with minimum -m at constant alpha."""

    m: float
    r_m: float
    one_minus_r_m: float
    mu: float
    c_lagr: float
    norm_q: float


def _require(prm: Params, *kinds: str) -> None:
    if prm.kind not in kinds:
        raise ParamsError(
            f"operation requires admissibility in {kinds}, "
            f"got (p,q,r)=({prm.p},{prm.q},{prm.r}) of class {prm.kind!r}"
        )


def _check_m(m: float) -> float:
    m = float(m)
    if not 0.0 < m <= 1.0:
        raise ValueError(f"m must lie in (0, 1], got {m}")
    return m


def r_of_m(m: float, prm: Params) -> float:
    """r(m) = (1 - m^q)/(1 + m^{r-1}) in [0, 1).

    The numerator is evaluated as -expm1(q log m), which is subtraction-free
    and keeps full relative accuracy as m -> 1 (where 1 - m^q cancels).
    """
    _require(prm, "main", "diag")
    m = _check_m(m)
    if m == 1.0:
        return 0.0
    return -math.expm1(prm.q * math.log(m)) / (1.0 + m ** (prm.r - 1.0))


def one_minus_r_of_m(m: float, prm: Params) -> float:
    """1 - r(m) = (m^{r-1} + m^q)/(1 + m^{r-1}), subtraction-free."""
    _require(prm, "main", "diag")
    m = _check_m(m)
    mr = m ** (prm.r - 1.0)
    return (mr + m ** prm.q) / (1.0 + mr)


def g_of(z: float, m: float, prm: Params) -> float:
    """g(z) = 1 - r(m) + r(m)|z|^{r-2}z - |z|^q on [-m, 1].

    g has simple zeros at -m and 1; both branches below evaluate it from the
    distance to the nearer zero via expm1/log1p, so the returned value keeps
    relative accuracy all the way into the endpoints (exact 0.0 there).
    """
    _require(prm, "main")
    m = _check_m(m)
    z = float(z)
    if z < -m or z > 1.0:
        raise ValueError(f"g is defined on [-m, 1] = [{-m}, 1], got z={z}")
    q, r = prm.q, prm.r
    rm = r_of_m(m, prm)
    if z <= 0.0:
        da = z + m
        if da <= 0.0:
            return 0.0
        # da/m -> 1 gives log1p(-1) = -inf and expm1(-inf) = -1: the exact
        # value 1 - r(m) at z = 0 falls out of the same expression.
        la = math.log1p(-da / m) if da < m else -math.inf
        return -rm * m ** (r - 1.0) * math.expm1((r - 1.0) * la) - m ** q * math.expm1(q * la)
    db = 1.0 - z
    if db <= 0.0:
        return 0.0
    lb = math.log1p(-db) if db < 1.0 else -math.inf
    return rm * math.expm1((r - 1.0) * lb) - math.expm1(q * lb)


def g_family_integral(kind: int, a: float, b: float, m: float, prm: Params,
                      cfg: QuadConfig | None = None) -> QuadResult:
    """Tanh-sinh integral over [a, b] of a g-family integrand.

    kind selects g^{1/p'}, |z|^{r-2}z g^{-1/p}, g^{-1/p} or |z|^q g^{-1/p}
    (codes in _kernels).  [a, b] must lie inside [-m, 1]; the distances of a
    and b to the global zeros of g are passed separately so panels touching
    -m or 1 see exact endpoint distances.

    Intervals straddling 0 are split there: |z|^{r-2}z (and |z|^q for
    non-even q) has a derivative jump at 0 that would degrade tanh-sinh
    convergence from an interior point, but is harmless at a panel endpoint.
    """
    _require(prm, "main")
    if cfg is None:
        cfg = QuadConfig()
    if not -m <= a < b <= 1.0:
        raise ValueError(f"need -m <= a < b <= 1, got [{a}, {b}] with m={m}")
    rm = r_of_m(m, prm)
    if a < 0.0 < b:
        left = _ts_piece(kind, a, 0.0, m, prm, rm, cfg)
        right = _ts_piece(kind, 0.0, b, m, prm, rm, cfg)
        return QuadResult(
            left.value + right.value,
            left.error_estimate + right.error_estimate,
            max(left.levels_used, right.levels_used),
            left.converged and right.converged,
        )
    return _ts_piece(kind, a, b, m, prm, rm, cfg)


def _ts_piece(kind: int, a: float, b: float, m: float, prm: Params,
              rm: float, cfg: QuadConfig) -> QuadResult:
    sa, sb, w, ptr = quadrature.tables()
    value, err, levels, ok = ts_g_integral(
        kind, float(a), float(b), float(a) + m, 1.0 - float(b),
        m, prm.p, prm.q, prm.r, rm,
        sa, sb, w, ptr, 2, cfg.min_level, cfg.max_level,
        cfg.abs_tol, cfg.rel_tol,
    )
    return QuadResult(float(value), float(err), int(levels), bool(ok))


def k_of_m_with_error(m: float, prm: Params,
                      cfg: QuadConfig | None = None) -> tuple:
    """K(m) together with the quadrature error estimate scaled into K."""
    _require(prm, "main")
    m = _check_m(m)
    if m <= M_MIN:
        raise OverflowError(
            f"K(m) diverges as m -> 0; refusing m={m} <= {M_MIN}"
        )
    p, q = prm.p, prm.q
    pc = prm.p_conj
    omr = one_minus_r_of_m(m, prm)
    pref = 2.0 * (pc / q) ** (1.0 / pc) \
        * ((q * (p - 1.0) + p) / (2.0 * p * omr)) ** ((pc + q) / (pc * q))
    res = g_family_integral(KIND_G_CONJ, -m, 1.0, m, prm, cfg)
    if not res.converged:
        raise ConvergenceError(
            f"K integral did not converge at m={m} "
            f"(error estimate {res.error_estimate:.3e})"
        )
    return pref * res.value, pref * res.error_estimate


def K_of_m(m: float, prm: Params, cfg: QuadConfig | None = None) -> float:
    """Quotient value K(m) of the extremal profile with minimum -m.

    K(m) = 2 (p'/q)^{1/p'} [(q(p-1)+p) / (2p(1-r(m)))]^{(p'+q)/(p'q)}
           * int_{-m}^1 g(z)^{1/p'} dz.
    """
    return k_of_m_with_error(m, prm, cfg)[0]


def F_of_m(m: float, prm: Params, cfg: QuadConfig | None = None) -> float:
    """Constraint functional F(m) = int_{-m}^1 |z|^{r-2}z g(z)^{-1/p} dz.

    The integrand has integrable g^{-1/p} singularities at both endpoints;
    F(1) = 0 and the best m solves F(m) = 0.
    """
    _require(prm, "main")
    m = _check_m(m)
    res = g_family_integral(KIND_PHI_R, -m, 1.0, m, prm, cfg)
    if not res.converged:
        raise ConvergenceError(
            f"F integral did not converge at m={m} "
            f"(error estimate {res.error_estimate:.3e})"
        )
    return res.value


def f_prime_at_1(prm: Params) -> float:
    """Closed-form slope F'(1) = (1/p - (2r-1)/q) B((2r-1)/q, 1/p')."""
    _require(prm, "main")
    p, q, r = prm.p, prm.q, prm.r
    return (1.0 / p - (2.0 * r - 1.0) / q) * beta((2.0 * r - 1.0) / q, 1.0 / prm.p_conj)


def c_pq(prm: Params) -> float:
    """m-independent factor c(p,q) = 2(p'/q)^{1/p'}[(q(p-1)+p)/(2p)]^{(p'+q)/(p'q)}."""
    _require(prm, "main")
    p, q = prm.p, prm.q
    pc = prm.p_conj
    return 2.0 * (pc / q) ** (1.0 / pc) \
        * ((q * (p - 1.0) + p) / (2.0 * p)) ** ((pc + q) / (pc * q))


def _r_prime_of_m(m: float, prm: Params) -> float:
    """Analytic derivative r'(m), with 1 - m^q in expm1 form."""
    q, r = prm.q, prm.r
    mr = m ** (r - 1.0)
    one_minus_mq = -math.expm1(q * math.log(m)) if m < 1.0 else 0.0
    num = -q * m ** (q - 1.0) * (1.0 + mr) - one_minus_mq * (r - 1.0) * m ** (r - 2.0)
    return num / (1.0 + mr) ** 2


def k_prime_of_m(m: float, prm: Params, cfg: QuadConfig | None = None) -> float:
    """Derivative K'(m) via the factorized identity

    K'(m) = (c(p,q)/p') r'(m) (1-r(m))^{1/p-1/q-2} (1 - ((r-1)/q) r(m)) F(m),

    whose sign is carried entirely by r'(m) < 0 and F(m).
    """
    _require(prm, "main")
    m = _check_m(m)
    if m <= M_MIN:
        raise OverflowError(
            f"K'(m) diverges as m -> 0; refusing m={m} <= {M_MIN}"
        )
    p, q, r = prm.p, prm.q, prm.r
    rm = r_of_m(m, prm)
    omr = one_minus_r_of_m(m, prm)
    return (c_pq(prm) / prm.p_conj) * _r_prime_of_m(m, prm) \
        * omr ** (1.0 / p - 1.0 / q - 2.0) * (1.0 - ((r - 1.0) / q) * rm) \
        * F_of_m(m, prm, cfg)


def alpha_closed_form(p: float, q: float) -> float:
    """Sharp constant alpha(p,q,q) in closed form,

    2 (1/p')^{1/q} (1/q)^{1/p'} (2/(p'+q))^{1/p-1/q} B(1/p', 1/q),

    valid for finite p > 1 and finite q > 1.
    """
    p = float(p)
    q = float(q)
    if not (math.isfinite(p) and p > 1.0):
        raise ValueError(f"alpha_closed_form requires finite p > 1, got {p}")
    if not (math.isfinite(q) and q > 1.0):
        raise ValueError(f"alpha_closed_form requires finite q > 1, got {q}")
    pc = p / (p - 1.0)
    return 2.0 * (1.0 / pc) ** (1.0 / q) * (1.0 / q) ** (1.0 / pc) \
        * (2.0 / (pc + q)) ** (1.0 / p - 1.0 / q) * beta(1.0 / pc, 1.0 / q)


def alpha_q1_r2(p: float) -> float:
    """Limit constant alpha(p,1,2) = 2^{1/p}(p'+1)^{1/p'} (infimum, not attained)."""
    p = float(p)
    if not (math.isfinite(p) and p > 1.0):
        raise ValueError(f"alpha_q1_r2 requires finite p > 1, got {p}")
    pc = p / (p - 1.0)
    return 2.0 ** (1.0 / p) * (pc + 1.0) ** (1.0 / pc)


def alpha_p_infinity(q: float) -> float:
    """Limit constant alpha(INFINITY,q,r) = 2^{1/q'}(q+1)^{1/q}, any admissible r."""
    q = float(q)
    if not (math.isfinite(q) and q >= 1.0):
        raise ValueError(f"alpha_p_infinity requires finite q >= 1, got {q}")
    # 1/q' = 1 - 1/q stays finite at q = 1 where q' = infinity
    return 2.0 ** (1.0 - 1.0 / q) * (q + 1.0) ** (1.0 / q)


def alpha_q_infinity_r2(p: float) -> float:
    """Limit constant alpha(p,INFINITY,2) = 2^{1/p}(p'+1)^{1/p'}.

    Coincides with alpha(p,1,2): the q=1 and q=infinity limits share the
    same value for r=2.
    """
    p = float(p)
    if not (math.isfinite(p) and p > 1.0):
        raise ValueError(f"alpha_q_infinity_r2 requires finite p > 1, got {p}")
    pc = p / (p - 1.0)
    return 2.0 ** (1.0 / p) * (pc + 1.0) ** (1.0 / pc)
