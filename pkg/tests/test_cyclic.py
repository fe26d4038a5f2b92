import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zsl import _bits
from zsl.cyclic import (
    AffineMap,
    CyclicSet,
    IntSet,
    affine_image,
    canonical_pair,
    difference_set,
    int_sumset,
    is_translate,
    kneser_slack,
    parse_elems,
    stabilizer,
    sumset,
    units,
)
from zsl.errors import PreconditionError, UsageError

from strategies import brute_sumset, cyclic_pair, cyclic_set


def S(n, *xs):
    return CyclicSet.of(n, xs)


def test_sumset_examples():
    A = S(19, 0, 1, 2, 3, 5, 10)
    got = sumset(A, A)
    assert list(got.elems()) == list(range(9)) + [10, 11, 12, 13, 15]
    assert len(got) == 14
    assert list(sumset(S(5, 0), S(5, 1, 3)).elems()) == [1, 3]
    assert list(sumset(S(7, 0, 1, 2), S(7, 0, 1)).elems()) == [0, 1, 2, 3]


def test_sumset_with_empty_is_empty():
    assert not sumset(CyclicSet(5), S(5, 1, 2))


def test_difference_set_examples():
    A = S(5, 0, 1)
    D = difference_set(A, A.complement())
    assert list(D.elems()) == [1, 2, 3, 4]
    assert list(D.complement().elems()) == list(stabilizer(A).elems()) == [0]
    assert list(difference_set(S(9, 4), S(9, 4)).elems()) == [0]
    assert list(difference_set(S(6, 0, 3), S(6, 0, 3)).elems()) == [0, 3]


def test_stabilizer_examples():
    assert list(stabilizer(S(6, 0, 2, 4)).elems()) == [0, 2, 4]
    assert list(stabilizer(S(7, 0, 1)).elems()) == [0]
    # oracle: x with x + A = A
    A = S(12, 0, 1, 6, 7)
    brute = [x for x in range(12) if {(a + x) % 12 for a in A} == set(A)]
    assert brute == [0, 6] == list(stabilizer(A).elems())
    assert stabilizer(CyclicSet(4)) == CyclicSet.full(4)


def test_affine_examples():
    A = S(7, 0, 1, 3)
    assert affine_image(A, AffineMap(7)) == A
    assert list(affine_image(A, AffineMap(7, 2, 0)).elems()) == sorted(2 * a % 7 for a in A) == [0, 2, 6]
    assert list(AffineMap(5, 1, 3)(S(5, 0, 1)).elems()) == [3, 4]
    with pytest.raises(UsageError):
        AffineMap(6, 2, 0)


def test_canonical_pair_examples():
    A, B, u, va, vb = canonical_pair(S(7, 3, 4), S(7, 5))
    assert (list(A.elems()), list(B.elems()), u, va, vb) == ([0, 1], [0], 1, 4, 2)
    # oracle: every transform (u, vA, vB) of the 6*7*7
    best = min(
        (sorted(((u * x + va) % 7 for x in (3, 4))), sorted([(u * 5 + vb) % 7]))
        for u in range(1, 7) for va in range(7) for vb in range(7)
    )
    assert best == ([0, 1], [0])
    again = canonical_pair(A, B)
    assert again[:2] == (A, B) and again[2] == 1


def test_kneser_slack_examples():
    assert kneser_slack(S(6, 0, 3), S(6, 0, 3)) == 0
    assert kneser_slack(S(5, 0, 1), S(5, 0, 2)) == 1
    assert kneser_slack(S(7, 0, 1, 2), S(7, 0, 1)) == 0


def test_parse_and_json_round_trip():
    assert parse_elems(" 0, 1,2 ,3,5,10") == [0, 1, 2, 3, 5, 10]
    with pytest.raises(UsageError):
        parse_elems("0,a")
    A = CyclicSet.parse(11, "10,3,3")
    assert A.to_json() == {"n": 11, "elems": [3, 10]}
    assert CyclicSet.from_json(A.to_json()) == A
    with pytest.raises(UsageError):
        CyclicSet(3, 8)
    with pytest.raises(UsageError):
        sumset(S(5, 0), S(7, 0))


def test_intset_sumset():
    assert int_sumset(IntSet.of([0, 2]), IntSet.of([0, 1])).elems == (0, 1, 2, 3)
    assert IntSet.parse("3,1,2").diameter() == 2


@given(cyclic_pair())
def test_sumset_matches_brute_force(pair):
    A, B = pair
    assert list(sumset(A, B).elems()) == brute_sumset(A, B)


@given(cyclic_pair(nmax=13), st.data())
def test_sumset_equivariance(pair, data):
    A, B = pair
    n = A.n
    x, y = data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1))
    assert sumset(A.translate(x), B.translate(y)) == sumset(A, B).translate(x + y)
    u = data.draw(st.sampled_from(units(n) or (0,)))
    if n > 1:
        assert sumset(A.dilate(u), B.dilate(u)) == sumset(A, B).dilate(u)


@given(cyclic_pair(prime=True, nmax=23))
def test_cauchy_davenport_random(pair):
    A, B = pair
    assert len(sumset(A, B)) >= min(A.n, len(A) + len(B) - 1)


@given(cyclic_pair(nmax=16))
def test_kneser_random(pair):
    assert kneser_slack(*pair) >= 0


@given(st.integers(2, 14).flatmap(lambda n: cyclic_set(n, proper=True)))
def test_aacomp_random(A):
    assert difference_set(A, A.complement()).complement() == stabilizer(A)


@settings(max_examples=60)
@given(cyclic_pair(nmin=2, nmax=11), st.data())
def test_canonical_pair_is_orbit_invariant(pair, data):
    A, B = pair
    n = A.n
    u = data.draw(st.sampled_from(units(n)))
    f = AffineMap(n, u, data.draw(st.integers(0, n - 1)))
    g = AffineMap(n, u, data.draw(st.integers(0, n - 1)))
    assert canonical_pair(f(A), g(B))[:2] == canonical_pair(A, B)[:2]


@given(cyclic_pair(nmax=12), st.data())
def test_is_translate(pair, data):
    A, _ = pair
    x = data.draw(st.integers(0, A.n - 1))
    assert is_translate(A.translate(x), A)
    other = pair[1]
    brute = any({(b + t) % A.n for b in other} == set(A) for t in range(A.n))
    assert is_translate(A, other) == brute


def test_canonical_pair_rejects_empty():
    with pytest.raises(PreconditionError):
        canonical_pair(CyclicSet(5), S(5, 1))


@given(st.integers(1, 12), st.data())
def test_bit_kernels_match_python(n, data):
    masks = np.array(data.draw(st.lists(st.integers(0, (1 << n) - 1), min_size=1, max_size=20)), dtype=np.int64)
    a = data.draw(st.integers(0, (1 << n) - 1))
    k = data.draw(st.integers(0, n - 1))
    assert _bits.popcount(masks).tolist() == [bin(int(m)).count("1") for m in masks]
    rot = _bits.rot(masks, k, n).tolist()
    assert rot == [CyclicSet(n, int(m)).translate(k).mask for m in masks]
    sw = _bits.sum_with(masks, a, n).tolist()
    assert sw == [sumset(CyclicSet(n, int(m)), CyclicSet(n, a)).mask for m in masks]
    neg = _bits.neg_table(n)
    assert int(neg[a]) == CyclicSet(n, a).neg().mask
