import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zsl.analytic import (
    DENSITY_CASES,
    LEV_CASES,
    XR_BOUNDS,
    atom_upper,
    c1_parts,
    c1_real_roots,
    cbeta_denominator_min,
    circle_bound,
    circle_bound_slack,
    const_c1,
    const_cbeta,
    const_levshkredov,
    constants_report,
    derivation_checks,
    exp_sum,
    gamma_thresholds,
    max_half_arc,
    rprime_bound,
    sqrt_linear_bound,
    sqrt_linear_margin,
    stillness_check,
    xr_real_ratio,
)
from zsl.cyclic import CyclicSet
from zsl.errors import RangeError, UsageError

from strategies import cyclic_set


def S(n, *xs):
    return CyclicSet.of(n, xs)


def brute_half_arc(A, x):
    """Most points in an open half-turn, from complex angles."""
    p = A.n
    angles = [2 * math.pi * ((a * x) % p) / p for a in A]
    best = 0
    for t in angles:
        best = max(best, sum(1 for s in angles if (s - t) % (2 * math.pi) < math.pi - 1e-12))
    return best


def test_exp_sum_examples():
    A = S(7, 0, 1, 2)
    assert exp_sum(A, 0).magnitude == pytest.approx(3, abs=1e-12)
    assert exp_sum(CyclicSet.full(5), 1).magnitude == pytest.approx(0, abs=1e-12)
    direct = abs(sum(cmath.exp(2j * math.pi * a / 7) for a in A))
    assert exp_sum(A, 1).magnitude == pytest.approx(direct, abs=1e-12)
    assert round(direct, 4) == 2.2470


def test_half_arc_examples():
    assert max_half_arc(S(7, 0, 1, 2), 1) == 3
    # 0, 72 and 144 degrees fit in an open half-turn
    assert max_half_arc(CyclicSet.full(5), 1) == 3 == brute_half_arc(CyclicSet.full(5), 1)
    assert max_half_arc(S(11, 4), 3) == 1
    with pytest.raises(UsageError):
        max_half_arc(S(7, 1), 7)


def test_circle_bound_examples():
    assert circle_bound_slack(S(7, 0, 1, 2), 1) == pytest.approx(3 - 2.2469796, abs=1e-6)
    assert circle_bound_slack(S(13, 5), 2) == pytest.approx(0, abs=1e-12)
    cb = circle_bound(CyclicSet.full(5), 1)
    assert cb.bound == 1 and not cb.bound_negative and cb.slack == pytest.approx(1)
    # half-arc 2 of 4 equidistributed-ish points makes the bound vacuous
    cb = circle_bound(S(17, 0, 4, 8, 13), 1)
    assert cb.bound == 2 * max_half_arc(S(17, 0, 4, 8, 13), 1) - 4


@settings(max_examples=60)
@given(st.sampled_from([3, 5, 7, 11, 13, 17]).flatmap(lambda p: st.tuples(cyclic_set(p), st.integers(1, p - 1))))
def test_half_arc_matches_brute_force(args):
    A, x = args
    assert max_half_arc(A, x) == brute_half_arc(A, x)


@settings(max_examples=30)
@given(st.sampled_from([5, 7, 11, 13, 29, 53, 101]).flatmap(cyclic_set))
def test_parseval(A):
    p = A.n
    total = math.fsum(exp_sum(A, x).magnitude ** 2 for x in range(p))
    assert total == pytest.approx(p * len(A), rel=1e-6)
    assert exp_sum(A, 0).magnitude == pytest.approx(len(A), abs=1e-9)
    assert all(exp_sum(A, x).magnitude <= len(A) + 1e-9 for x in range(p))


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_circle_lemma_exhaustive(p):
    checked = 0
    for m in range(1, 1 << p):
        A = CyclicSet(p, m)
        for x in range(1, p):
            n = max_half_arc(A, x)
            if 2 * n >= len(A):
                checked += 1
                assert exp_sum(A, x).magnitude <= 2 * n - len(A) + 1e-9
    assert checked > 0


def test_density_constants():
    assert round(float(const_c1("0.021")), 4) == 0.3341
    for a, b, thr in DENSITY_CASES:
        assert const_c1(a) >= thr and const_cbeta(a, b) >= thr
    assert min(const_c1(Fraction(1, 9)), const_cbeta(Fraction(1, 9), Fraction("0.8484"))) >= Fraction(1963, 9253)
    assert const_c1(Fraction(1, 9)) == Fraction(1963, 9253)
    assert const_c1(0.021) == pytest.approx(float(const_c1("0.021")), abs=1e-12)


def test_constant_ranges():
    with pytest.raises(RangeError):
        const_c1("0.3")
    with pytest.raises(RangeError):
        const_cbeta("0.1", "0.5")
    with pytest.raises(RangeError):
        const_levshkredov("3.5", 20)
    with pytest.raises(RangeError):
        const_levshkredov("2.5", 5)


@given(st.fractions(Fraction(1, 10000), Fraction(212, 1000)))
def test_c1_range(a):
    c = const_c1(a)
    assert 0 < c <= Fraction(5, 14)


@pytest.mark.parametrize("K,thr", LEV_CASES)
def test_lev_shkredov_cases(K, thr):
    assert const_levshkredov(K, 11) > Fraction(thr)


def test_gammas():
    for ell in (3, 8, 20):
        assert gamma_thresholds(ell, ell, ell) == (Fraction(6 - ell, 3),) * 2
    assert gamma_thresholds(10, 10, 19) == (Fraction(14, 3), Fraction(14, 3))
    assert gamma_thresholds(12, 10, 21) == (4, 6)
    with pytest.raises(RangeError):
        gamma_thresholds(0, 1, 1)


def test_constants_report_json():
    js = constants_report(alpha="0.105", beta="0.8").to_json()
    assert js["alpha"]["exact"] == "21/200"
    assert js["c1"]["float"] >= 0.2 and js["c_beta"]["float"] >= 0.2


def test_lemma_pieces():
    assert 0 <= sqrt_linear_margin(16) < 1e-4
    assert round(math.sqrt(36.25), 5) == 6.02080
    assert all(sqrt_linear_bound(r) for r in range(-1, 2000))
    assert all(rprime_bound(r) for r in range(-1, 2000))
    assert stillness_check(grid=2000, pieces=16).ok
    assert all(derivation_checks().values())
    assert round(c1_real_roots()["zeros"][0], 3) == pytest.approx(0.2129, abs=1e-3)
    assert cbeta_denominator_min(step=1e-2) > 0


def test_xr_bounds_integer_branch():
    # the 283/92 bound is attained and the integer floor matters near r = 19..25 and 80..89
    for name, test in XR_BOUNDS.items():
        assert all(test(atom_upper(r), r) for r in range(2, 5000)), name
    assert any(92 * atom_upper(r) == 283 * (r + 3) for r in range(2, 200))
    best = max(range(2, 1000), key=xr_real_ratio)
    assert best == 84


def test_c1_parts_are_polynomials():
    num, den = c1_parts(Fraction(1, 9))
    assert Fraction(num) / den == Fraction(1963, 9253)
