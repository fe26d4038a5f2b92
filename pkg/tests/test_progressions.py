from dataclasses import replace

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from zsl.cyclic import CyclicSet, IntSet, int_sumset, sumset, units
from zsl.errors import DomainError, PreconditionError, UsageError
from zsl.progressions import (
    ApCover,
    Certificate,
    check_certificate,
    conjecture_conclusion,
    ell,
    ell_cover,
    min_cover,
    order,
    prop7_statements,
    prop7_trio,
    rectification_witness,
    reduction_check_part1,
    unfold,
    verify_3k4_integers,
)
from zsl.trios import Trio, complement_trio

from strategies import brute_ell, cyclic_set, int_set


def S(n, *xs):
    return CyclicSet.of(n, xs)


def pablo(r):
    n = 4 * r + 11
    return CyclicSet.of(n, list(range(r + 2)) + [r + 3, 2 * r + 6])


def test_ell_examples():
    assert ell(S(6, 0, 1), 2) is None
    for k in range(6):
        assert ell(CyclicSet.interval(10, 0, k), 1) == k + 1
    with pytest.raises(UsageError):
        ell(S(6, 0, 1), 6)
    with pytest.raises(PreconditionError):
        ell(CyclicSet(6), 1)


def test_ell_cover_contains_set():
    A = S(19, 0, 1, 2, 3, 5, 10)
    for d in range(1, 19):
        cov = ell_cover(A, d)
        assert cov.covers(A) and cov.length == ell(A, d)


def test_min_cover_examples():
    assert min_cover(pablo(2))[1] == 11
    assert list(pablo(3).elems()) == [0, 1, 2, 3, 4, 6, 12]
    assert min_cover(pablo(3))[1] == 13
    assert min_cover(S(7, 0, 3)) == (3, 2)


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_prop13_family(r):
    A = pablo(r)
    assert A.n == 4 * r + 11
    best = min(brute_ell(A, d) for d in range(1, A.n) if brute_ell(A, d) is not None)
    assert min_cover(A)[1] == best == 2 * r + 7


def test_rectification_examples():
    assert rectification_witness(S(7, 0, 1), S(7, 0, 1)) == (1, 2, 2)
    assert rectification_witness(CyclicSet.full(5), CyclicSet.full(5)) is None
    A = pablo(2)
    assert all(2 * ell(A, d) > 20 for d in range(1, 19))
    assert rectification_witness(A, A) is None


def test_unfold_examples():
    A, B = unfold(S(7, 0, 1), S(7, 0, 1), 1)
    assert (A.elems, B.elems) == ((0, 1), (0, 1))
    assert len(int_sumset(A, B)) == 3
    A, B = unfold(S(13, 0, 5, 10), S(13, 0, 5), 5)
    assert (A.elems, B.elems) == ((0, 1, 2), (0, 1))
    A, B = unfold(S(11, 0, 1, 2), S(11, 9, 10), 1)
    assert (A.elems, B.elems) == ((0, 1, 2), (0, 1))
    with pytest.raises(PreconditionError):
        unfold(pablo(2), pablo(2), 1)


def test_verify_3k4_examples():
    v = verify_3k4_integers(IntSet.of([0, 2, 3, 4]), IntSet.of([0, 2, 3]))
    assert v.applicable and v.r == 0
    assert v.cover_a.length == 5 and v.cover_b.length == 4
    assert (v.inner.start, v.inner.length) == (2, 6)
    assert v.bounds_ok

    A = IntSet.of([0, 1, 2, 3, 5])
    assert len(int_sumset(A, A)) == 10
    v = verify_3k4_integers(A, A)
    assert v.applicable and v.r == 0 and v.delta == 1
    assert v.cover_a.length == 6 == len(A) + v.r + 1


def test_verify_3k4_far_intervals_not_applicable():
    from zsl.harness.constructions import ExampleSpec, generate_example

    for r in range(0, 4):
        inst = generate_example(ExampleSpec("3", r, M=r + 5))
        assert not verify_3k4_integers(inst.A, inst.B).applicable


def test_verify_3k4_swaps_to_larger_first():
    v = verify_3k4_integers(IntSet.of([0, 1]), IntSet.of([0, 1, 2]))
    assert v.swapped


def test_conjecture_conclusion_examples():
    cert = conjecture_conclusion(S(5, 0, 1), S(5, 0, 1))
    assert cert.d == 1 and cert.r == -1 and list(cert.C.elems()) == [1, 2]
    assert [c.length for c in cert.covers] == [2, 2, 2]

    assert conjecture_conclusion(pablo(2), pablo(2)) is None

    cert = conjecture_conclusion(S(7, 0, 1), S(7, 0, 1))
    assert list(cert.C.elems()) == [1, 2, 3, 4]
    assert ell(cert.C, 1) == 4 == len(cert.C) + cert.r + 1
    with pytest.raises(DomainError):
        conjecture_conclusion(S(5, 0, 1), S(5, 0, 2, 4))


def test_certificate_round_trip_and_tamper():
    cert = conjecture_conclusion(S(11, 0, 1, 2), S(11, 0, 1, 3))
    js = cert.to_json()
    assert Certificate.from_json(js) == cert
    assert check_certificate(cert) == []
    bad = replace(cert, covers=(ApCover(cert.covers[0].start, cert.d, cert.covers[0].length + 5, 11),) + cert.covers[1:])
    assert any("exceeds" in m for m in check_certificate(bad))
    assert any("r mismatch" in m for m in check_certificate(replace(cert, r=cert.r + 1)))


def test_prop7_examples():
    res = prop7_statements(S(11, 0, 1, 2), S(11, 0, 1, 2))
    assert res.applicable and res.s1 and res.s2 and res.s3

    res = prop7_statements(pablo(2), pablo(2), delta="conjecture")
    assert not res.applicable and "C" in res.reason

    # A+B = [0,3], so r = 0 and |A| = 2 < r+3: outside the hypotheses
    res = prop7_statements(S(7, 0, 1), S(7, 0, 2))
    assert not res.applicable
    with pytest.raises(UsageError):
        prop7_statements(S(7, 0, 1), S(7, 0, 1), delta="other")


def test_reduction_examples():
    I = lambda n, k: CyclicSet.interval(n, 0, k)  # noqa: E731
    T = complement_trio(I(13, 3), I(13, 3))
    assert T.r == -1 and reduction_check_part1(T, 1, 0, -1) is True
    T = complement_trio(I(13, 4), I(13, 3))
    assert reduction_check_part1(T, 1, 0, 0) is True
    T = Trio(S(11, 0, 1, 2, 3), S(11, 0, 5), S(11, 0))
    assert reduction_check_part1(T, 1, 0) is None


@settings(max_examples=80)
@given(st.integers(2, 30).flatmap(lambda n: st.tuples(cyclic_set(n), st.integers(1, n - 1), st.integers(0, n - 1),
                                                        st.sampled_from(units(n)))))
def test_ell_affine_equivariance(args):
    A, d, x, u = args
    n = A.n
    base = ell(A, d)
    assert ell(A.translate(x), d) == base
    assert ell(A.dilate(u), u * d % n) == base
    assert ell(A, n - d) == base


@given(st.integers(2, 11).flatmap(lambda n: st.tuples(cyclic_set(n), st.integers(1, n - 1))))
def test_ell_matches_brute_force(args):
    A, d = args
    assert ell(A, d) == brute_ell(A, d)


@settings(max_examples=60)
@given(st.sampled_from([5, 7, 11, 13, 17]).flatmap(lambda p: st.tuples(cyclic_set(p), cyclic_set(p))))
def test_unfold_preserves_sumset_size(pair):
    A, B = pair
    w = rectification_witness(A, B)
    assume(w is not None)
    AZ, BZ = unfold(A, B, w[0])
    assert len(int_sumset(AZ, BZ)) == len(sumset(A, B))
    assert AZ.diameter() + 1 == w[1] and BZ.diameter() + 1 == w[2]


@given(st.integers(3, 23).flatmap(lambda n: st.tuples(cyclic_set(n), st.integers(1, n - 1))))
def test_short_cover_has_consecutive_pair(args):
    A, d = args
    L = ell(A, d)
    assume(L is not None and len(A) >= 2 and L <= 2 * len(A) - 2)
    AZ, _ = unfold(A, CyclicSet.of(A.n, [0]), d)
    assert any(b - a == 1 for a, b in zip(AZ.elems, AZ.elems[1:]))


@settings(max_examples=300)
@given(int_set(0, 30), int_set(0, 30))
def test_verify_3k4_never_violates(A, B):
    v = verify_3k4_integers(A, B)
    if v.applicable:
        assert v.bounds_ok
        assert v.inner.contained_in(int_sumset(A, B))


@settings(max_examples=60)
@given(st.sampled_from([5, 7, 11]).flatmap(lambda p: st.tuples(cyclic_set(p), cyclic_set(p))))
def test_prop7_statements_agree(pair):
    A, B = pair
    assume(len(sumset(A, B)) < A.n)
    res = prop7_trio(complement_trio(A, B))
    assert res.consistent


def test_order():
    assert order(4, 12) == 3 and order(5, 12) == 12
