import itertools

import pytest

from zsl.cyclic import CyclicSet, canonical_pair, sumset, units
from zsl.errors import CapacityError, UsageError
from zsl.harness import orbits


def brute_orbits(p):
    """Orbit representatives and sizes of (A, B) pairs with A + B != G, by
    applying the whole group to every pair."""
    full = (1 << p) - 1
    reps = {}
    for a, b in itertools.product(range(1, 1 << p), repeat=2):
        A, B = CyclicSet(p, a), CyclicSet(p, b)
        if len(sumset(A, B)) == p:
            continue
        imgs = set()
        for u in units(p):
            for va in range(p):
                for vb in range(p):
                    imgs.add((A.dilate(u).translate(va).mask, B.dilate(u).translate(vb).mask))
        rep = min(imgs)
        reps[rep] = len(imgs)
    assert all(a != full for a, _ in reps)
    return reps


@pytest.mark.parametrize("p,total", [(2, 4), (3, 27), (5, 475), (7, 6419)])
def test_weighted_orbit_total_matches_raw_count(p, total):
    assert orbits.raw_pair_count(p) == total == orbits.orbit_weight_total(p)


@pytest.mark.parametrize("p", [3, 5])
def test_orbits_match_brute_force(p):
    brute = brute_orbits(p)
    mine = {}
    for a in orbits.canonical_a_reps(p):
        bs, sizes = orbits.canonical_b_for(p, a)
        for b, s in zip(bs.tolist(), sizes.tolist()):
            mine[(a, b)] = s
    assert mine == brute
    assert sum(brute.values()) == orbits.raw_pair_count(p)


@pytest.mark.parametrize("p,count", [(7, 42), (11, 896), (13, 5724)])
def test_orbit_counts(p, count):
    assert sum(len(orbits.canonical_b_for(p, a)[0]) for a in orbits.canonical_a_reps(p)) == count


def test_reps_are_canonical_pairs():
    p = 7
    for a in orbits.canonical_a_reps(p):
        for b in orbits.canonical_b_for(p, a)[0].tolist():
            A, B, *_ = canonical_pair(CyclicSet(p, a), CyclicSet(p, b))
            assert (A.mask, B.mask) == (a, b)


def test_tables_ell_matches_scalar():
    from zsl.progressions import ell

    t = orbits.tables(7)
    for m in range(1, 1 << 7, 5):
        for d in range(1, 7):
            assert t.ell[d - 1][m] == ell(CyclicSet(7, m), d)


def test_table_limits():
    with pytest.raises(UsageError):
        orbits.tables(9)
    with pytest.raises(CapacityError):
        orbits.tables(23)
    assert orbits.canonical_key(5, 3, 1) == (3 << 5) | 1
