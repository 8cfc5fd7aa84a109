import math

import pytest

from wirtinger.core import INFINITY, Params, alpha_closed_form
from wirtinger.errors import ParamsError
from wirtinger.solver import (
    REGIME_BAND,
    REGIME_EQUALITY,
    REGIME_STRICT,
    best_constant,
    breakpoint_scan,
    classify_regime,
    rescale,
)

from _frozen import ALPHA_31, ALPHA_INF3, BAND_GAPS_REL, INTERIOR, SQRT6


def test_classify_regime_boundaries():
    assert classify_regime(Params(2.0, 5.0, 2.0)) == REGIME_EQUALITY
    assert classify_regime(Params(2.0, 5.5, 2.0)) == REGIME_BAND
    assert classify_regime(Params(2.0, 6.0, 2.0)) == REGIME_BAND
    assert classify_regime(Params(2.0, 6.01, 2.0)) == REGIME_STRICT
    assert classify_regime(Params(2.0, 11.0, 3.0)) == REGIME_STRICT


def test_closed_form_kinds():
    res = best_constant(Params(3.0, 1.0, 2.0))
    assert res.alpha == pytest.approx(ALPHA_31, rel=1e-14)
    assert res.regime == REGIME_EQUALITY
    assert res.m_star == 1.0
    assert res.roots is None

    res = best_constant(Params(2.0, INFINITY, 2.0))
    assert res.alpha == pytest.approx(SQRT6, rel=1e-14)

    res = best_constant(Params(INFINITY, 3.0, 3.0))
    assert res.alpha == pytest.approx(ALPHA_INF3, rel=1e-14)

    res = best_constant(Params(2.0, 1.5, 1.5))
    assert res.alpha == pytest.approx(alpha_closed_form(2.0, 1.5), rel=1e-14)


def test_classical_case_gives_pi(solve):
    res = solve(2.0, 2.0, 2.0)
    assert res.alpha == pytest.approx(math.pi, abs=1e-10)
    assert res.m_star == 1.0
    assert res.regime == REGIME_EQUALITY


def test_strict_regime_matches_frozen(solve):
    for (p, q, r), (m0, alpha0) in INTERIOR.items():
        res = solve(p, q, r)
        assert res.regime == REGIME_STRICT
        assert res.m_star == pytest.approx(m0, abs=1e-9)
        assert res.alpha == pytest.approx(alpha0, rel=1e-10)
        assert res.alpha < res.alpha_qq
        assert res.k_at_one == pytest.approx(res.alpha_qq, rel=1e-9)
        # k_values pairs every candidate with its objective value.
        assert any(abs(m - res.m_star) < 1e-9 for m, _ in res.k_values)


def test_band_regime_keeps_symmetric_minimum(solve):
    res = solve(2.0, 5.5, 2.0)
    assert res.regime == REGIME_BAND
    assert res.m_star == 1.0
    assert abs(res.alpha_qq - res.alpha) <= 1e-10


def test_band_gap_growth_matches_frozen(solve):
    for q, rel_gap in BAND_GAPS_REL.items():
        res = solve(2.0, q, 2.0)
        measured = (res.alpha_qq - res.alpha) / res.alpha_qq
        assert measured == pytest.approx(rel_gap, rel=2e-2)


def test_rescale_classical_interval(solve):
    prm = Params(2.0, 2.0, 2.0)
    alpha = solve(2.0, 2.0, 2.0).alpha
    # On an interval of length 2*pi the classical constant becomes 1.
    scaled = rescale(alpha, prm, 0.0, 2.0 * math.pi)
    assert scaled == pytest.approx(1.0, abs=1e-10)
    assert rescale(alpha, prm, -1.0, 1.0) == alpha


def test_rescale_uses_conjugate_exponent_at_p_infinity():
    prm = Params(INFINITY, 3.0, 3.0)
    # 1/p' = 1 when p = inf, so the factor on (0, 1) is 2^{1 + 1/3}.
    assert rescale(1.0, prm, 0.0, 1.0) == pytest.approx(2.0 ** (4.0 / 3.0),
                                                        rel=1e-14)


def test_rescale_validation():
    prm = Params(2.0, 2.0, 2.0)
    with pytest.raises(ValueError):
        rescale(math.pi, prm, 1.0, 1.0)
    with pytest.raises(ValueError):
        rescale(-1.0, prm, 0.0, 1.0)


def test_breakpoint_scan_brackets_transition(warm):
    sc = breakpoint_scan(2.0, 2.0, 5.0, 7.0, 9)
    assert len(sc.rows) == 9
    assert sc.spacing == pytest.approx(0.25)
    assert all(row.error is None for row in sc.rows)
    assert sc.gap_monotone
    assert sc.q_star is not None
    assert 6.0 < sc.q_star <= 6.5
    gaps = [row.result.alpha_qq - row.result.alpha for row in sc.rows]
    assert gaps[0] == pytest.approx(0.0, abs=1e-10)
    assert gaps[-1] > 1e-3


def test_breakpoint_scan_parallel_agrees(warm):
    serial = breakpoint_scan(2.0, 2.0, 6.0, 6.75, 4)
    threaded = breakpoint_scan(2.0, 2.0, 6.0, 6.75, 4, parallel=True)
    for a, b in zip(serial.rows, threaded.rows):
        assert a.q == b.q
        assert a.result.alpha == pytest.approx(b.result.alpha, rel=1e-14)


def test_breakpoint_scan_minimal_rows(warm):
    sc = breakpoint_scan(2.0, 2.0, 5.0, 6.0, 2)
    assert [row.q for row in sc.rows] == [5.0, 6.0]


def test_breakpoint_scan_validation():
    with pytest.raises(ValueError):
        breakpoint_scan(2.0, 2.0, 5.0, 7.0, 1)
    with pytest.raises(ValueError):
        breakpoint_scan(2.0, 2.0, 7.0, 5.0, 5)
    with pytest.raises(ParamsError):
        breakpoint_scan(2.0, 3.0, 1.5, 4.0, 3)
