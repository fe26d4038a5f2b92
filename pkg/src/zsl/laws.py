"""Exhaustive checks of the classical sumset laws on small moduli.

Each check reduces by translation where the law is translation invariant,
then sweeps the remaining pairs with numpy bitmask kernels.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _bits
from .cyclic import CyclicSet, difference_set, is_prime, rotate, stabilizer
from .errors import UsageError


@dataclass
class LawResult:
    name: str
    n: int
    checked: int
    violations: int
    example: Optional[tuple] = None
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.violations == 0


def _with_zero(n: int) -> np.ndarray:
    """All masks containing 0."""
    return (np.arange(1 << (n - 1), dtype=np.int64) << 1) | 1


def _nonempty(n: int) -> np.ndarray:
    return np.arange(1, 1 << n, dtype=np.int64)


def cauchy_davenport(p: int) -> LawResult:
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    t0 = time.perf_counter()
    Bs = _nonempty(p)
    sb = _bits.popcount(Bs)
    checked = bad = 0
    ex = None
    for a in _with_zero(p).tolist():
        S = _bits.popcount(_bits.sum_with(Bs, a, p))
        need = np.minimum(p, bin(a).count("1") + sb - 1)
        fail = S < need
        checked += len(Bs)
        if fail.any():
            bad += int(fail.sum())
            ex = ex or (a, int(Bs[fail][0]))
    return LawResult("cauchy-davenport", p, checked, bad, ex, time.perf_counter() - t0)


def kneser(n: int) -> LawResult:
    """|A+B| >= |H+A| + |H+B| - |H| with H the stabilizer of A+B."""
    t0 = time.perf_counter()
    Bs = _nonempty(n)
    stab = _bits.stab_size_table(n)
    divisors = [h for h in range(1, n + 1) if n % h == 0]
    # |H + X| = h * (classes mod n/h met by X) for the subgroup of order h
    cover = {h: h * _bits.residue_count_table(n, n // h) for h in divisors}
    checked = bad = 0
    ex = None
    for a in _with_zero(n).tolist():
        S = _bits.sum_with(Bs, a, n)
        sS = _bits.popcount(S)
        H = stab[S]
        lower = np.empty_like(sS)
        for h in divisors:
            sel = H == h
            if sel.any():
                lower[sel] = cover[h][a] + cover[h][Bs[sel]] - h
        fail = sS < lower
        checked += len(Bs)
        if fail.any():
            bad += int(fail.sum())
            ex = ex or (a, int(Bs[fail][0]))
    return LawResult("kneser", n, checked, bad, ex, time.perf_counter() - t0)


def aacomp(n: int) -> LawResult:
    """(A - A^c)^c = H(A) for nonempty proper A."""
    t0 = time.perf_counter()
    bad = checked = 0
    ex = None
    full = (1 << n) - 1
    for m in range(1, full):
        A = CyclicSet(n, m)
        lhs = difference_set(A, A.complement()).complement()
        checked += 1
        if lhs != stabilizer(A):
            bad += 1
            ex = ex or (m,)
    return LawResult("aacomp", n, checked, bad, ex, time.perf_counter() - t0)


def intersection_law(p: int) -> LawResult:
    """|intersection of x + Z over x in X| <= |Z| - |X| + 1 when nonempty."""
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    t0 = time.perf_counter()
    full = (1 << p) - 1
    bad = checked = 0
    ex = None
    for z in range(1, full):
        rots = [rotate(z, x, p) for x in range(p)]
        zs = bin(z).count("1")
        for X in range(1, full + 1):
            inter = full
            x, m = 0, X
            while m:
                if m & 1:
                    inter &= rots[x]
                m >>= 1
                x += 1
            if not inter:
                continue
            checked += 1
            if bin(inter).count("1") > zs - bin(X).count("1") + 1:
                bad += 1
                ex = ex or (X, z)
    return LawResult("intersection", p, checked, bad, ex, time.perf_counter() - t0)


@dataclass
class VosperLawResult(LawResult):
    saturation_mismatch: int = 0
    size_identity_failures: int = 0
    equality_cases: int = 0

    @property
    def ok(self) -> bool:
        return self.violations == 0 and self.saturation_mismatch == 0 and self.size_identity_failures == 0


def vosper_law(p: int) -> VosperLawResult:
    """Containment -(A+B)^c + B <= -A^c, equality iff A is saturated in A+B,
    and the size identity on equality.  A and B both contain 0 w.l.o.g."""
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    t0 = time.perf_counter()
    full = (1 << p) - 1
    neg = _bits.neg_table(p)
    Bs = _with_zero(p)
    sb = _bits.popcount(Bs)
    checked = bad = mism = ident = eqc = 0
    ex = None
    for a in _with_zero(p).tolist():
        S = _bits.sum_with(Bs, a, p)
        keep = S != full
        if not keep.any():
            continue
        B, S, sB = Bs[keep], S[keep], sb[keep]
        comp = full & ~S
        lhs = _bits.pair_sum(neg[comp], B, p)
        target = int(neg[full & ~a])
        contained = (lhs & ~target) == 0
        equal = lhs == target
        saturated = np.ones(len(B), dtype=bool)
        for x in range(p):
            if not a >> x & 1:
                saturated &= (_bits.rot(B, x, p) & ~S) != 0
        r = _bits.popcount(S) - bin(a).count("1") - sB
        ok_ident = _bits.popcount(lhs) == _bits.popcount(comp) + sB + r
        checked += len(B)
        bad += int((~contained).sum())
        mism += int((equal != saturated).sum())
        ident += int((equal & ~ok_ident).sum())
        eqc += int(equal.sum())
        if ex is None and (~contained | (equal != saturated)).any():
            ex = (a, int(B[~contained | (equal != saturated)][0]))
    res = VosperLawResult("vosper", p, checked, bad, ex, time.perf_counter() - t0)
    res.saturation_mismatch, res.size_identity_failures, res.equality_cases = mism, ident, eqc
    return res


def run_all(cd_max: int = 11, kneser_max: int = 12, aacomp_max: int = 12,
            inter_max: int = 7, vosper_max: int = 11) -> list[LawResult]:
    out: list[LawResult] = []
    out += [cauchy_davenport(p) for p in range(2, cd_max + 1) if is_prime(p)]
    out += [kneser(n) for n in range(1, kneser_max + 1)]
    out += [aacomp(n) for n in range(2, aacomp_max + 1)]
    out += [intersection_law(p) for p in range(2, inter_max + 1) if is_prime(p)]
    out += [vosper_law(p) for p in range(2, vosper_max + 1) if is_prime(p)]
    return out
