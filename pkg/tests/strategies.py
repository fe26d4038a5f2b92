"""Shared hypothesis strategies and brute-force oracles for the tests."""

from hypothesis import strategies as st

from zsl.cyclic import CyclicSet, IntSet, is_prime, units

SMALL_PRIMES = [2, 3, 5, 7, 11, 13]


@st.composite
def cyclic_set(draw, n, nonempty=True, proper=False):
    lo = 1 if nonempty else 0
    hi = (1 << n) - (2 if proper else 1)
    return CyclicSet(n, draw(st.integers(lo, hi)))


@st.composite
def cyclic_pair(draw, nmin=1, nmax=14, prime=False):
    pool = [q for q in range(max(2, nmin), nmax + 1) if is_prime(q)] if prime else list(range(nmin, nmax + 1))
    n = draw(st.sampled_from(pool))
    return draw(cyclic_set(n)), draw(cyclic_set(n))


@st.composite
def unit_of(draw, n):
    return draw(st.sampled_from(units(n) or (1,)))


@st.composite
def int_set(draw, lo=0, hi=20, min_size=1, max_size=10):
    xs = draw(st.sets(st.integers(lo, hi), min_size=min_size, max_size=max_size))
    return IntSet.of(xs)


def brute_sumset(A, B):
    return sorted({(a + b) % A.n for a in A for b in B})


def brute_ell(A, d):
    """Shortest {s + i d} containing A by trying every start and length."""
    n = A.n
    elems = set(A)
    for L in range(1, n + 1):
        for s in range(n):
            prog = {(s + i * d) % n for i in range(L)}
            if len(prog) < L:
                break
            if elems <= prog:
                return L
    return None
