"""Canonical (A, B) orbits under x -> ux + v_A, x -> ux + v_B modulo a prime.

Everything is driven by per-prime lookup tables over all 2^p masks:
dilations, the smallest rotation of each mask, and ell_1.  ell_d of a mask
is ell_1 of its dilate by 1/d.  Tables are built once per process and
inherited by forked workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .. import _bits
from ..cyclic import is_prime, units
from ..errors import CapacityError, UsageError

TABLE_LIMIT = 22


@dataclass(frozen=True)
class Tables:
    p: int
    units: tuple[int, ...]
    dil: dict  # u -> int32 array, dil[u][m] = mask of u*m
    minrot: np.ndarray  # smallest translate of each mask
    ell: np.ndarray  # ell[d-1][m] = ell_d(m), int8; 0 for the empty mask
    popcount: np.ndarray
    neg: np.ndarray

    @property
    def full(self) -> int:
        return (1 << self.p) - 1


def _dilation(p: int, u: int, masks: np.ndarray) -> np.ndarray:
    out = np.zeros_like(masks)
    for i in range(p):
        out |= ((masks >> i) & 1) << (u * i % p)
    return out


def _bit_length(arr: np.ndarray) -> np.ndarray:
    # exact for values below 2^53
    return np.frexp(arr.astype(np.float64))[1].astype(np.int64)


@lru_cache(maxsize=4)
def tables(p: int) -> Tables:
    if not is_prime(p):
        raise UsageError(f"orbit tables need a prime modulus, got {p}")
    if p > TABLE_LIMIT:
        raise CapacityError(f"p={p} exceeds the table limit {TABLE_LIMIT}")
    masks = np.arange(1 << p, dtype=np.int64)
    us = units(p)
    dil = {u: _dilation(p, u, masks).astype(np.int32) for u in us}
    minrot = masks.copy()
    ell1 = _bit_length(masks)
    for v in range(1, p):
        rv = _bits.rot(masks, v, p)
        np.minimum(minrot, rv, out=minrot)
        np.minimum(ell1, _bit_length(rv), out=ell1)
    ell1 = ell1.astype(np.int8)
    ell = np.empty((p - 1, 1 << p), dtype=np.int8)
    for d in range(1, p):
        ell[d - 1] = ell1[dil[pow(d, -1, p)]]
    return Tables(p, us, dil, minrot, ell, _bits.popcount(masks), _bits.neg_table(p))


def canonical_a_reps(p: int) -> list[int]:
    """Masks that are the smallest element of their affine orbit, excluding
    the empty and the full set."""
    t = tables(p)
    best = t.minrot.copy()
    for u in t.units:
        np.minimum(best, t.minrot[t.dil[u]], out=best)
    masks = np.arange(1 << p, dtype=np.int64)
    keep = (best == masks) & (masks != 0) & (masks != t.full)
    return [int(m) for m in masks[keep]]


def a_stabilizer_units(p: int, a: int) -> list[int]:
    """Units u with u*a a translate of a."""
    t = tables(p)
    return [u for u in t.units if int(t.minrot[t.dil[u][a]]) == a]


def canonical_b_for(p: int, a: int) -> tuple[np.ndarray, np.ndarray]:
    """All B with (a, B) canonical and a + B != G, plus each orbit's size."""
    t = tables(p)
    us = a_stabilizer_units(p, a)
    cand = np.arange(1, 1 << p, dtype=np.int64)
    cand = cand[t.minrot[cand] == cand]
    best = cand.copy()
    fixed = np.zeros(len(cand), dtype=np.int64)
    for u in us:
        img = t.minrot[t.dil[u][cand]]
        np.minimum(best, img, out=best)
        fixed += img == cand
    keep = best == cand
    cand, fixed = cand[keep], fixed[keep]
    S = _bits.sum_with(cand, a, p)
    keep = S != t.full
    group = (p - 1) * p * p
    return cand[keep], group // fixed[keep]


def canonical_key(p: int, a: int, b: int) -> int:
    return (a << p) | b


def raw_pair_count(p: int) -> int:
    """Nonempty (A, B) with A + B != G, counted directly."""
    full = (1 << p) - 1
    Bs = np.arange(1, 1 << p, dtype=np.int64)
    total = 0
    for a in range(1, full + 1):
        total += int((_bits.sum_with(Bs, a, p) != full).sum())
    return total


def orbit_weight_total(p: int) -> int:
    return sum(int(canonical_b_for(p, a)[1].sum()) for a in canonical_a_reps(p))
