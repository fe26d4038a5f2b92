"""Vectorized bitmask kernels over arrays of subsets of Z/nZ.

Each array element is the bitmask of one subset.  These back the exhaustive
sweeps; the scalar API in :mod:`zsl.cyclic` stays the reference.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

MAX_BITS = 26


def all_masks(n: int) -> np.ndarray:
    if n > MAX_BITS:
        raise ValueError(f"n={n} too large for full mask enumeration")
    return np.arange(1 << n, dtype=np.int64)


def popcount(arr: np.ndarray) -> np.ndarray:
    return np.bitwise_count(arr).astype(np.int64)


def rot(arr: np.ndarray, k: int, n: int) -> np.ndarray:
    k %= n
    if k == 0:
        return arr
    full = (1 << n) - 1
    return ((arr << k) | (arr >> (n - k))) & full


def sum_with(arr: np.ndarray, mask: int, n: int) -> np.ndarray:
    """Elementwise ``X + S`` for every X in ``arr`` and a fixed S."""
    out = np.zeros_like(arr)
    b = 0
    while mask:
        if mask & 1:
            out |= rot(arr, b, n)
        mask >>= 1
        b += 1
    return out


def pair_sum(X: np.ndarray, Y: np.ndarray, n: int) -> np.ndarray:
    """Elementwise ``X[i] + Y[i]``."""
    out = np.zeros_like(X)
    for i in range(n):
        sel = ((Y >> i) & 1).astype(bool)
        out[sel] |= rot(X[sel], i, n)
    return out


@lru_cache(maxsize=None)
def neg_table(n: int) -> np.ndarray:
    m = all_masks(n)
    out = (m & 1).copy()
    for i in range(1, n):
        out |= ((m >> i) & 1) << (n - i)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def stab_size_table(n: int) -> np.ndarray:
    """``|H(X)|`` for every mask X."""
    m = all_masks(n)
    out = np.zeros_like(m)
    for x in range(n):
        out += rot(m, x, n) == m
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def residue_count_table(n: int, q: int) -> np.ndarray:
    """Number of residue classes mod q (q | n) met by each mask."""
    m = all_masks(n)
    folded = np.zeros_like(m)
    for i in range(n):
        folded |= ((m >> i) & 1) << (i % q)
    out = popcount(folded)
    out.setflags(write=False)
    return out
