import math

import pytest

from wirtinger.core import (
    INFINITY,
    M_MIN,
    F_of_m,
    K_of_m,
    Params,
    alpha_closed_form,
    alpha_p_infinity,
    alpha_q1_r2,
    alpha_q_infinity_r2,
    f_prime_at_1,
    g_family_integral,
    g_of,
    k_of_m_with_error,
    k_prime_of_m,
    one_minus_r_of_m,
    r_of_m,
)
from wirtinger.errors import ParamsError
from wirtinger.quadrature import integrate
from wirtinger._kernels import KIND_PLAIN

from _frozen import ALPHA_31, ALPHA_INF3, ALPHA_QQ, SQRT6


# ---------------------------------------------------------------- parameters

def test_params_classification():
    assert Params(2.0, 8.0, 2.0).kind == "main"
    assert Params(2.0, 2.0, 3.0).kind == "main"
    assert Params(3.0, 1.0, 2.0).kind == "q1"
    assert Params(2.0, INFINITY, 2.0).kind == "qinf"
    assert Params(INFINITY, 3.0, 3.0).kind == "pinf"
    assert Params(2.0, 1.5, 1.5).kind == "diag"


@pytest.mark.parametrize("p,q,r", [
    (1.0, 2.0, 2.0),        # p must exceed 1
    (0.5, 2.0, 2.0),
    (2.0, 0.5, 2.0),        # q below 1
    (2.0, 3.0, 1.5),        # r below 2 off the diagonal
    (2.0, 2.0, 4.0),        # q below r - 1
    (2.0, INFINITY, 3.0),   # q = inf needs r = 2
    (INFINITY, 3.0, 1.5),   # p = inf still needs r >= 2
    (math.nan, 2.0, 2.0),
    (2.0, 2.0, INFINITY),   # r must be finite
])
def test_params_rejects(p, q, r):
    with pytest.raises(ParamsError):
        Params(p, q, r)


def test_params_conjugate_exponent():
    assert Params(2.0, 2.0, 2.0).p_conj == 2.0
    assert Params(3.0, 3.0, 3.0).p_conj == pytest.approx(1.5, rel=1e-15)
    assert Params(INFINITY, 3.0, 3.0).p_conj == 1.0


# ------------------------------------------------------------------ r(m), g

def test_r_of_m_range_and_limits():
    prm = Params(2.0, 8.0, 2.0)
    assert r_of_m(1.0, prm) == 0.0
    assert r_of_m(1e-8, prm) == pytest.approx(1.0, abs=1e-7)
    prev = 1.1
    for k in range(1, 20):
        m = k / 20.0
        val = r_of_m(m, prm)
        assert 0.0 < val < 1.0
        assert val < prev
        prev = val


def test_r_of_m_complement_identity():
    for p, q, r in ((2.0, 8.0, 2.0), (2.0, 12.0, 3.0), (1.5, 4.0, 2.5)):
        prm = Params(p, q, r)
        for m in (1e-6, 0.01, 0.3, 0.7, 0.99, 1.0):
            total = r_of_m(m, prm) + one_minus_r_of_m(m, prm)
            assert total == pytest.approx(1.0, abs=2e-16)


def test_g_endpoints_and_interior_sign():
    prm = Params(2.0, 8.0, 2.0)
    m = 0.6
    rm = r_of_m(m, prm)
    assert g_of(-m, m, prm) == 0.0
    assert g_of(1.0, m, prm) == 0.0
    assert g_of(0.0, m, prm) == pytest.approx(1.0 - rm, rel=1e-15)
    for z in (-0.59, -0.3, -0.01, 0.2, 0.5, 0.99):
        assert g_of(z, m, prm) > 0.0


# ------------------------------------------------------------------ K and F

def test_k_at_one_equals_closed_form():
    for (p, q), ref in ALPHA_QQ.items():
        prm = Params(p, q, q)
        assert K_of_m(1.0, prm) == pytest.approx(ref, rel=1e-10)


def test_k_of_m_reports_quadrature_error():
    prm = Params(2.0, 8.0, 2.0)
    value, err = k_of_m_with_error(0.7, prm)
    assert value > 0.0
    assert 0.0 <= err < 1e-9


def test_k_exceeds_pi_for_classical_case():
    prm = Params(2.0, 2.0, 2.0)
    for m in (0.2, 0.5, 0.8, 0.95):
        assert K_of_m(m, prm) > math.pi
    assert K_of_m(1.0, prm) == pytest.approx(math.pi, abs=1e-12)


def test_k_rejects_tiny_m():
    prm = Params(2.0, 8.0, 2.0)
    with pytest.raises(OverflowError):
        K_of_m(M_MIN, prm)
    with pytest.raises(ValueError):
        K_of_m(1.2, prm)


def test_f_sign_change_in_strict_regime():
    prm = Params(2.0, 8.0, 2.0)
    assert F_of_m(0.3, prm) > 0.0
    assert F_of_m(0.9, prm) < 0.0
    # At the symmetric endpoint the constraint integral vanishes by parity.
    assert abs(F_of_m(1.0, prm)) < 1e-10


def test_f_positive_in_equality_regime():
    prm = Params(2.0, 4.0, 2.0)
    for m in (0.2, 0.5, 0.8, 0.99):
        assert F_of_m(m, prm) > 0.0


# ------------------------------------------------------- derivative formulas

def test_f_prime_at_1_against_difference_quotient():
    h = 1e-4
    for p, q, r in ((2.0, 4.0, 2.0), (2.0, 8.0, 2.0), (2.0, 11.0, 3.0)):
        prm = Params(p, q, r)
        fd = (F_of_m(1.0, prm) - F_of_m(1.0 - h, prm)) / h
        assert f_prime_at_1(prm) == pytest.approx(fd, rel=1e-3)


def test_f_prime_at_1_vanishes_on_threshold():
    # q = (2r - 1) p zeroes the prefactor 1/p - (2r-1)/q.
    prm = Params(2.0, 6.0, 2.0)
    assert abs(f_prime_at_1(prm)) < 1e-15


def test_k_prime_matches_centered_difference():
    h = 1e-5
    for p, q, r in ((2.0, 8.0, 2.0), (3.0, 20.0, 2.0)):
        prm = Params(p, q, r)
        for m in (0.4, 0.6, 0.85):
            fd = (K_of_m(m + h, prm) - K_of_m(m - h, prm)) / (2.0 * h)
            assert k_prime_of_m(m, prm) == pytest.approx(fd, rel=1e-5)


# ----------------------------------------------------------- g-family panels

def test_g_family_panel_matches_generic_quadrature():
    # Away from the endpoints and from z = 0 the integrand is smooth, so the
    # specialized panel evaluator must agree with a generic quadrature of the
    # same function.
    prm = Params(2.0, 8.0, 2.0)
    m = 0.6
    res = g_family_integral(KIND_PLAIN, 0.1, 0.5, m, prm)
    ref = integrate(lambda z: g_of(z, m, prm) ** (-1.0 / prm.p), 0.1, 0.5)
    assert res.converged and ref.converged
    assert res.value == pytest.approx(ref.value, rel=1e-9)


def test_g_family_full_interval_is_split_sum():
    prm = Params(2.0, 12.0, 3.0)
    m = 0.7
    whole = g_family_integral(KIND_PLAIN, -m, 1.0, m, prm)
    left = g_family_integral(KIND_PLAIN, -m, 0.0, m, prm)
    right = g_family_integral(KIND_PLAIN, 0.0, 1.0, m, prm)
    assert whole.value == pytest.approx(left.value + right.value, rel=1e-12)


# ------------------------------------------------------------- closed forms

def test_limit_formulas():
    assert alpha_q1_r2(2.0) == pytest.approx(SQRT6, abs=1e-13)
    assert alpha_q_infinity_r2(2.0) == pytest.approx(SQRT6, abs=1e-13)
    assert alpha_p_infinity(2.0) == pytest.approx(SQRT6, abs=1e-13)
    assert alpha_q1_r2(3.0) == pytest.approx(ALPHA_31, rel=1e-15)
    assert alpha_p_infinity(3.0) == pytest.approx(ALPHA_INF3, rel=1e-15)
    assert alpha_p_infinity(1.0) == pytest.approx(2.0, rel=1e-15)


def test_closed_form_argument_validation():
    with pytest.raises(ValueError):
        alpha_closed_form(1.0, 2.0)
    with pytest.raises(ValueError):
        alpha_closed_form(2.0, INFINITY)
    with pytest.raises(ValueError):
        alpha_q1_r2(1.0)
    with pytest.raises(ValueError):
        alpha_p_infinity(0.5)
