"""k-fragments, k-atoms and the atom-size bounds, by exhaustive search.

Fragments are translation invariant, so only subsets containing 0 are
enumerated; the full fragment family is recovered by rotating.  Ratios in
the Petridis minimizer are kept as integer pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil, gcd
from typing import Optional, Union

import numpy as np

from . import _bits
from .cyclic import (
    CyclicSet,
    IntSet,
    int_sumset,
    is_prime,
    min_rotation,
    rotate,
    stabilizer,
    sumset,
)
from .errors import CapacityError, PreconditionError, UsageError

ENUM_LIMIT = 24
ATOM_CAP = 10_000
FRAGMENT_CAP = 1_000
PETRIDIS_LIMIT = 20
_CHUNK = 1 << 20


@dataclass(frozen=True)
class AtomReport:
    k: int
    kappa: int
    r: int
    alpha: int
    atom_count: int
    fragment_count: int
    atoms: Optional[tuple[CyclicSet, ...]]  # None above ATOM_CAP
    fragments: Optional[tuple[CyclicSet, ...]]  # None above FRAGMENT_CAP

    def to_json(self) -> dict:
        def enc(xs):
            return None if xs is None else [list(x.elems()) for x in xs]

        return {
            "k": self.k,
            "kappa": self.kappa,
            "r": self.r,
            "alpha": self.alpha,
            "atom_count": self.atom_count,
            "fragment_count": self.fragment_count,
            "atoms": enc(self.atoms),
            "fragments": enc(self.fragments),
        }


def _normalized_stats(B: CyclicSet):
    """Yield (masks, |X|, |X+B|) chunks over all X containing 0."""
    n = B.n
    total = 1 << (n - 1)
    for lo in range(0, total, _CHUNK):
        hi = min(total, lo + _CHUNK)
        X = (np.arange(lo, hi, dtype=np.int64) << 1) | 1
        yield X, _bits.popcount(X), _bits.popcount(_bits.sum_with(X, B.mask, n))


def _orbit_masks(masks, n: int) -> list[int]:
    out = set()
    for m in masks:
        for v in range(n):
            out.add(rotate(int(m), v, n))
    return sorted(out)


def _count_orbits(sizes: np.ndarray, n: int) -> int:
    """Number of sets whose 0-containing translates are listed with these sizes.

    A translation class of size-s sets with stabilizer H contributes s/|H|
    normalized members and n/|H| sets, so each member stands for n/s sets.
    """
    vals, counts = np.unique(sizes, return_counts=True)
    tot = sum(Fraction(int(c) * n, int(s)) for s, c in zip(vals, counts))
    assert tot.denominator == 1
    return int(tot)


def kappa_atoms(
    B: CyclicSet, k: int, limit: int = ENUM_LIMIT, full: bool = False
) -> Optional[AtomReport]:
    """kappa_k(B), its fragments and atoms; None if B is not k-separable.

    ``full`` lifts the fragment listing cap (atoms are listed up to ATOM_CAP
    regardless).
    """
    if not B:
        raise PreconditionError("B must be nonempty")
    if k < 1:
        raise UsageError("k must be >= 1")
    n = B.n
    if n > limit:
        raise CapacityError(f"n={n} exceeds the enumeration limit {limit}")
    kappa = None
    for X, sx, sxb in _normalized_stats(B):
        ok = (sx >= k) & (n - sxb >= k)
        if ok.any():
            v = int((sxb - sx)[ok].min())
            kappa = v if kappa is None else min(kappa, v)
    if kappa is None:
        return None
    frag_masks, frag_sizes = [], []
    for X, sx, sxb in _normalized_stats(B):
        sel = (sx >= k) & (n - sxb >= k) & (sxb - sx == kappa)
        frag_masks.append(X[sel])
        frag_sizes.append(sx[sel])
    fm = np.concatenate(frag_masks)
    fs = np.concatenate(frag_sizes)
    alpha = int(fs.min())
    atom_norm = fm[fs == alpha]
    atom_count = _count_orbits(fs[fs == alpha], n)
    frag_count = _count_orbits(fs, n)
    atoms = None
    if atom_count <= ATOM_CAP:
        atoms = tuple(CyclicSet(n, m) for m in _orbit_masks(atom_norm, n))
    fragments = None
    if full or frag_count <= FRAGMENT_CAP:
        fragments = tuple(CyclicSet(n, m) for m in _orbit_masks(fm, n))
    return AtomReport(k, kappa, kappa - len(B), alpha, atom_count, frag_count, atoms, fragments)


def is_coset(X: CyclicSet) -> bool:
    return bool(X) and len(stabilizer(X)) == len(X)


def generated_subgroup_index(B: CyclicSet) -> int:
    """Order of <B - B> in Z/nZ."""
    n = B.n
    g = n
    b0 = B.elems()[0]
    for b in B:
        g = gcd(g, (b - b0) % n)
    return n // g


def reduce_mod(X: CyclicSet, h: int) -> CyclicSet:
    """Image of X in Z/(n/h) under reduction modulo the order-h subgroup."""
    q = X.n // h
    return CyclicSet.of(q, (x % q for x in X))


@lru_cache(maxsize=4096)
def _alpha2_cached(n: int, mask: int) -> Optional[int]:
    rep = kappa_atoms(CyclicSet(n, mask), 2)
    return None if rep is None else rep.alpha


def alpha2(X: CyclicSet) -> Optional[int]:
    m, _ = min_rotation(X.mask, X.n)
    return _alpha2_cached(X.n, m)


def _sqrt_le(lhs: int, rad: int) -> bool:
    """lhs <= sqrt(rad), exactly."""
    return lhs < 0 or lhs * lhs <= rad


@dataclass
class TheoremCheck:
    applicable: bool
    holds: Optional[bool] = None
    detail: str = ""


@dataclass
class AtomTheoremReport:
    B: CyclicSet
    k: int
    atoms: Optional[AtomReport]
    checks: dict[str, TheoremCheck] = field(default_factory=dict)

    @property
    def violations(self) -> list[str]:
        return [
            name
            for name, c in self.checks.items()
            if c.applicable and c.holds is False and not name.startswith("record:")
        ]


def check_atom_theorems(B: CyclicSet, k: int) -> AtomTheoremReport:
    """Evaluate every atom statement on (B, k); each entry says whether it
    applies and, if so, whether its bound holds.

    Entries prefixed ``record:`` are empirical observations, not theorems.
    """
    n = B.n
    rep = kappa_atoms(B, k, full=True)
    out = AtomTheoremReport(B, k, rep)
    ck = out.checks
    if rep is None:
        ck["separable"] = TheoremCheck(False, detail="B is not k-separable")
        return out
    prime = is_prime(n)
    atoms = [a.mask for a in rep.atoms]
    frags = np.array([f.mask for f in rep.fragments], dtype=np.int64)

    # Fundamental theorem
    good = True
    for a in atoms:
        meet = _bits.popcount(frags & a) >= k
        if np.any(meet & ((frags & a) != a)):
            good = False
            break
    ck["fundamental"] = TheoremCheck(True, good)

    ck["HX=H(X+B)"] = TheoremCheck(
        True, all(stabilizer(CyclicSet(n, a)) == stabilizer(sumset(CyclicSet(n, a), B)) for a in atoms)
    )

    # iso-bound for every Y with |Y| >= k (translation invariant: 0 in Y)
    good = True
    for _, sy, syb in _normalized_stats(B):
        sel = sy >= k
        if np.any(syb[sel] < np.minimum(n - k + 1, sy[sel] + rep.kappa)):
            good = False
            break
    ck["iso-bound"] = TheoremCheck(True, good)

    # 2-atom bounds
    if k == 2:
        r2 = rep.r
        non_coset = [a for a in atoms if not is_coset(CyclicSet(n, a))]
        ck["2-atom<=r+3"] = (
            TheoremCheck(True, rep.alpha <= r2 + 3, f"alpha={rep.alpha}, r={r2}")
            if non_coset
            else TheoremCheck(False, detail="every 2-atom is a coset")
        )
        if prime and len(B) >= 2 and len(B) <= n - 3 * r2 - 4:
            ck["2-atom<=2+sqrt(2r+2)"] = TheoremCheck(True, _sqrt_le(rep.alpha - 2, 2 * r2 + 2))
        else:
            ck["2-atom<=2+sqrt(2r+2)"] = TheoremCheck(False)
        r9 = max(1, r2)
        if prime and len(B) >= 2 and len(B) <= n - 3 * r9 - 5:
            ck["2-atom<=1/2+sqrt(2r+17/4)"] = TheoremCheck(
                True, _sqrt_le(2 * rep.alpha - 1, 8 * r9 + 17), f"r={r9}"
            )
        else:
            ck["2-atom<=1/2+sqrt(2r+17/4)"] = TheoremCheck(False)
        order = generated_subgroup_index(B)
        if order < n:
            hsize = order
            cosets = {
                CyclicSet.of(n, (c + j * (n // hsize) for j in range(hsize))).mask for c in range(n)
            }
            ck["record:2-atoms-are-cosets"] = TheoremCheck(
                True, set(atoms) == cosets, f"|<B-B>|={hsize}"
            )

    # k-atom bound through 2-atoms of the quotient image
    non_coset = [a for a in atoms if not is_coset(CyclicSet(n, a))]
    if k >= 2 and generated_subgroup_index(B) == n and non_coset:
        seen = set()
        good, detail = True, ""
        for a in non_coset:
            X = CyclicSet(n, a)
            h = len(stabilizer(X))
            Xbar = reduce_mod(X, h)
            key = (h, min_rotation(Xbar.mask, Xbar.n)[0])
            if key in seen:
                continue
            seen.add(key)
            a2 = alpha2(Xbar)
            if a2 is None:
                good, detail = False, f"image of atom not 2-separable (|H|={h})"
                break
            bound = ceil(k / h) * h - h + rep.r + h * a2
            if rep.alpha > bound or bound > k - 1 + rep.r + h * a2:
                good, detail = False, f"alpha={rep.alpha} > {bound}"
                break
        ck["k-atom<=k-1+r+|H|a2"] = TheoremCheck(True, good, detail)
    else:
        ck["k-atom<=k-1+r+|H|a2"] = TheoremCheck(False)

    # corollary bounds for prime moduli
    if prime and k >= 2 and len(B) >= 2:
        r = rep.r
        a = rep.alpha
        ck["alpha_k<=k+2r+2"] = TheoremCheck(True, a <= k + 2 * r + 2)
        if k <= n - 5 * r - 6:
            ck["alpha_k<=k+r+1+sqrt(2r+2)"] = TheoremCheck(True, _sqrt_le(a - k - r - 1, 2 * r + 2))
        else:
            ck["alpha_k<=k+r+1+sqrt(2r+2)"] = TheoremCheck(False)
        r3 = max(1, r)
        if k <= n - 5 * r3 - 7:
            ck["alpha_k<=k+r-1/2+sqrt(2r+17/4)"] = TheoremCheck(
                True, _sqrt_le(2 * (a - k - r3) + 1, 8 * r3 + 17), f"r={r3}"
            )
        else:
            ck["alpha_k<=k+r-1/2+sqrt(2r+17/4)"] = TheoremCheck(False)

    # atoms modulo their period
    good = True
    applicable = False
    for a in atoms:
        X = CyclicSet(n, a)
        h = len(stabilizer(X))
        if h == 1:
            continue
        applicable = True
        kk = ceil(k / h)
        rep_bar = kappa_atoms(reduce_mod(B, h), kk)
        Xbar = reduce_mod(X, h)
        if rep_bar is None or Xbar.mask not in {y.mask for y in rep_bar.atoms}:
            good = False
            break
    ck["atom-mod-period"] = TheoremCheck(applicable, good if applicable else None)
    return out


# ---------------------------------------------------------------------------
# Petridis minimizer

@dataclass
class AtomSweep:
    n: int
    kmax: int
    pairs: int = 0  # (B, k) with B k-separable
    applicable: dict = field(default_factory=dict)  # statement -> count
    violations: list = field(default_factory=list)  # (B mask, k, statement)

    @property
    def ok(self) -> bool:
        return not self.violations


def atom_sweep(n: int, kmax: int = 3) -> AtomSweep:
    """check_atom_theorems over every B containing 0 (the statements are
    translation invariant) and every k <= kmax."""
    out = AtomSweep(n, kmax)
    for m in range(1, 1 << n, 2):
        B = CyclicSet(n, m)
        for k in range(1, kmax + 1):
            rep = check_atom_theorems(B, k)
            if rep.atoms is None:
                continue
            out.pairs += 1
            for name, c in rep.checks.items():
                if c.applicable:
                    out.applicable[name] = out.applicable.get(name, 0) + 1
            out.violations += [(m, k, v) for v in rep.violations]
    return out


SetLike = Union[CyclicSet, IntSet]


@dataclass(frozen=True)
class PetridisResult:
    Aprime: SetLike
    num: int  # |A' + B|
    den: int  # |A'|
    size_A: int

    @property
    def alpha(self) -> Fraction:
        return Fraction(self.num, self.den)

    @property
    def alpha_ratio(self) -> tuple[int, int]:
        return (self.num, self.den)

    @property
    def epsilon(self) -> Fraction:
        """1 - |A'|/|A|."""
        return 1 - Fraction(self.den, self.size_A)


def _subset_sumsizes(A: SetLike, B: SetLike) -> tuple[list[int], np.ndarray, np.ndarray]:
    """For every nonempty subset index s of A: (|A'|, |A'+B|)."""
    elems = list(A.elems) if isinstance(A, IntSet) else list(A.elems())
    m = len(elems)
    idx = np.arange(1, 1 << m, dtype=np.int64)
    sizes = _bits.popcount(idx)
    if isinstance(A, CyclicSet):
        n = A.n
        masks = np.zeros_like(idx)
        for i, e in enumerate(elems):
            masks |= ((idx >> i) & 1) << e
        return elems, sizes, _bits.popcount(_bits.sum_with(masks, B.mask, n))
    lo = elems[0]
    width = (elems[-1] - lo) + B.diameter() + 1
    rel_b = [b - B.min for b in B]
    if width <= 62:
        masks = np.zeros_like(idx)
        for i, e in enumerate(elems):
            masks |= ((idx >> i) & 1) << (e - lo)
        out = np.zeros_like(idx)
        for b in rel_b:
            out |= masks << b
        return elems, sizes, _bits.popcount(out)
    sums = np.empty_like(idx)
    for j, s in enumerate(idx.tolist()):
        mk = 0
        for i, e in enumerate(elems):
            if s >> i & 1:
                mk |= 1 << (e - lo)
        acc = 0
        for b in rel_b:
            acc |= mk << b
        sums[j] = bin(acc).count("1")
    return elems, sizes, sums


def petridis_minimizer(A: SetLike, B: SetLike, limit: int = PETRIDIS_LIMIT) -> PetridisResult:
    """Nonempty A' of A minimizing |A'+B|/|A'|; smallest |A'|, then
    lexicographically smallest, on ties."""
    if not A or not B:
        raise PreconditionError("petridis_minimizer needs nonempty sets")
    if type(A) is not type(B):
        raise UsageError("A and B must both be cyclic or both integer sets")
    if isinstance(A, CyclicSet):
        A._check(B)
    if len(A) > limit:
        raise CapacityError(f"|A|={len(A)} exceeds the subset limit {limit}")
    elems, sizes, sums = _subset_sumsizes(A, B)
    m = len(elems)
    best = None
    for s in range(1, m + 1):
        sel = sizes == s
        v = int(sums[sel].min())
        if best is None or v * best[1] < best[0] * s:
            best = (v, s)
    num, den = best
    idx = np.arange(1, 1 << m, dtype=np.int64)
    cands = idx[(sizes == den) & (sums == num)]
    subsets = sorted(tuple(elems[i] for i in range(m) if c >> i & 1) for c in cands.tolist())
    chosen = subsets[0]
    Ap = CyclicSet.of(A.n, chosen) if isinstance(A, CyclicSet) else IntSet.of(chosen)
    return PetridisResult(Ap, num, den, len(A))


def _sum(X: SetLike, Y: SetLike) -> SetLike:
    return sumset(X, Y) if isinstance(X, CyclicSet) else int_sumset(X, Y)


def petridis_c_holds(res: PetridisResult, B: SetLike, C: SetLike) -> bool:
    """|C + A' + B| <= alpha |C + A'|, cross-multiplied."""
    CA = _sum(C, res.Aprime)
    return len(_sum(CA, B)) * res.den <= res.num * len(CA)


def petridis_nfold_holds(res: PetridisResult, B: SetLike, nmax: int = 4) -> bool:
    """|A' + jB| <= alpha^j |A'| <= alpha^j |A| for j <= nmax."""
    cur = res.Aprime
    for j in range(1, nmax + 1):
        cur = _sum(cur, B)
        lhs = len(cur) * res.den**j
        if lhs > res.num**j * res.den or res.num**j * res.den > res.num**j * res.size_A:
            return False
    return True
