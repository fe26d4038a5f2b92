"""Exact set arithmetic in Z/nZ and Z.

A :class:`CyclicSet` stores its members as the bits of a Python integer
(bit ``i`` set iff ``i`` is a member), so sumsets reduce to OR-ing rotations
of one operand by the members of the other.  Everything here is immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Iterator

from .errors import PreconditionError, UsageError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_up_to(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if is_prime(p)]


@lru_cache(maxsize=None)
def units(n: int) -> tuple[int, ...]:
    """Multiplicative units of Z/nZ in increasing order."""
    if n == 1:
        return (0,)
    return tuple(u for u in range(1, n) if gcd(u, n) == 1)


def require_prime(n: int) -> None:
    if not is_prime(n):
        raise PreconditionError(f"modulus {n} is not prime")


def parse_elems(text: str) -> list[int]:
    """Parse a set literal such as ``"0,1,2,3,5,10"``."""
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise UsageError(f"bad set literal {text!r}") from exc


def _full(n: int) -> int:
    return (1 << n) - 1


def rotate(mask: int, k: int, n: int) -> int:
    """Bitmask of ``{x + k mod n : x in mask}``."""
    k %= n
    if k == 0:
        return mask
    return ((mask << k) | (mask >> (n - k))) & _full(n)


def mask_elems(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@dataclass(frozen=True, order=False)
class CyclicSet:
    """A subset of Z/nZ.  ``mask`` bit i is set iff i is a member."""

    n: int
    mask: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise UsageError(f"modulus must be >= 1, got {self.n}")
        if self.mask < 0 or self.mask >> self.n:
            raise UsageError("member index outside [0, n-1]")

    @classmethod
    def of(cls, n: int, elems: Iterable[int]) -> "CyclicSet":
        m = 0
        for e in elems:
            m |= 1 << (e % n)
        return cls(n, m)

    @classmethod
    def interval(cls, n: int, lo: int, hi: int) -> "CyclicSet":
        """The residues of the integer interval [lo, hi]."""
        return cls.of(n, range(lo, hi + 1))

    @classmethod
    def full(cls, n: int) -> "CyclicSet":
        return cls(n, _full(n))

    @classmethod
    def parse(cls, n: int, text: str) -> "CyclicSet":
        return cls.of(n, parse_elems(text))

    # -- basic queries -------------------------------------------------
    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __iter__(self) -> Iterator[int]:
        return iter(mask_elems(self.mask))

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> (x % self.n) & 1)

    def __bool__(self) -> bool:
        return self.mask != 0

    def elems(self) -> tuple[int, ...]:
        return tuple(mask_elems(self.mask))

    def __repr__(self) -> str:
        return f"CyclicSet({self.n}, {list(self.elems())})"

    def _check(self, other: "CyclicSet") -> None:
        if not isinstance(other, CyclicSet) or other.n != self.n:
            raise UsageError(
                f"modulus mismatch: {self.n} vs {getattr(other, 'n', other)}"
            )

    # -- lattice operations ---------------------------------------------
    def complement(self) -> "CyclicSet":
        return CyclicSet(self.n, _full(self.n) & ~self.mask)

    def __or__(self, other: "CyclicSet") -> "CyclicSet":
        self._check(other)
        return CyclicSet(self.n, self.mask | other.mask)

    def __and__(self, other: "CyclicSet") -> "CyclicSet":
        self._check(other)
        return CyclicSet(self.n, self.mask & other.mask)

    def issubset(self, other: "CyclicSet") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    __le__ = issubset

    # -- group operations -----------------------------------------------
    def translate(self, x: int) -> "CyclicSet":
        return CyclicSet(self.n, rotate(self.mask, x, self.n))

    def neg(self) -> "CyclicSet":
        return CyclicSet.of(self.n, (-a for a in self))

    def __neg__(self) -> "CyclicSet":
        return self.neg()

    def __add__(self, other: "CyclicSet") -> "CyclicSet":
        return sumset(self, other)

    def __sub__(self, other: "CyclicSet") -> "CyclicSet":
        return difference_set(self, other)

    def dilate(self, u: int) -> "CyclicSet":
        return CyclicSet.of(self.n, (u * a for a in self))

    def to_json(self) -> dict:
        return {"n": self.n, "elems": list(self.elems())}

    @classmethod
    def from_json(cls, obj: dict) -> "CyclicSet":
        return cls.of(obj["n"], obj["elems"])


def sumset(A: CyclicSet, B: CyclicSet) -> CyclicSet:
    """``{a + b mod n}``; empty if either operand is empty."""
    A._check(B)
    n = A.n
    if len(B) > len(A):
        A, B = B, A
    out = 0
    for b in B:
        out |= rotate(A.mask, b, n)
    return CyclicSet(n, out)


def difference_set(A: CyclicSet, B: CyclicSet) -> CyclicSet:
    A._check(B)
    return sumset(A, B.neg())


def stabilizer(A: CyclicSet) -> CyclicSet:
    """``H(A) = {x : x + A = A}``.  H(empty) is the whole group."""
    n = A.n
    return CyclicSet.of(n, (x for x in range(n) if rotate(A.mask, x, n) == A.mask))


def is_translate(X: CyclicSet, Y: CyclicSet) -> bool:
    """True iff X = x + Y for some x (shift search by rotation equality)."""
    X._check(Y)
    if len(X) != len(Y):
        return False
    return any(rotate(Y.mask, x, X.n) == X.mask for x in range(X.n))


def kneser_slack(A: CyclicSet, B: CyclicSet) -> int:
    """``|A+B| - (|H+A| + |H+B| - |H|)`` with H the stabilizer of A+B."""
    if not A or not B:
        raise PreconditionError("kneser_slack needs nonempty sets")
    S = sumset(A, B)
    H = stabilizer(S)
    return len(S) - (len(sumset(H, A)) + len(sumset(H, B)) - len(H))


@dataclass(frozen=True)
class AffineMap:
    """``x -> u*x + v`` on Z/nZ with u a unit."""

    n: int
    u: int = 1
    v: int = 0

    def __post_init__(self) -> None:
        if gcd(self.u % self.n, self.n) != 1 and self.n > 1:
            raise UsageError(f"multiplier {self.u} is not a unit mod {self.n}")
        object.__setattr__(self, "u", self.u % self.n)
        object.__setattr__(self, "v", self.v % self.n)

    def __call__(self, A: CyclicSet) -> CyclicSet:
        return affine_image(A, self)


def affine_image(A: CyclicSet, f: AffineMap) -> CyclicSet:
    if f.n != A.n:
        raise UsageError(f"modulus mismatch: map {f.n} vs set {A.n}")
    return CyclicSet.of(A.n, (f.u * a + f.v for a in A))


def min_rotation(mask: int, n: int) -> tuple[int, int]:
    """Smallest mask among all translates, with the smallest shift attaining it."""
    best, best_v = mask, 0
    for v in range(1, n):
        m = rotate(mask, v, n)
        if m < best:
            best, best_v = m, v
    return best, best_v


def dilate_mask(mask: int, u: int, n: int) -> int:
    out = 0
    for a in mask_elems(mask):
        out |= 1 << (u * a % n)
    return out


def canonical_pair(
    A: CyclicSet, B: CyclicSet
) -> tuple[CyclicSet, CyclicSet, int, int, int]:
    """Orbit representative of (A, B) under (A, B) -> (uA + vA, uB + vB).

    Ordering is by the integer value of the bitmasks, A first; among
    transforms reaching the minimum the smallest (u, vA, vB) is reported.
    """
    A._check(B)
    if not A or not B:
        raise PreconditionError("canonical_pair needs nonempty sets")
    n = A.n
    best = None
    for u in units(n):
        ma, va = min_rotation(dilate_mask(A.mask, u, n), n)
        mb, vb = min_rotation(dilate_mask(B.mask, u, n), n)
        key = (ma, mb)
        if best is None or key < best[0]:
            best = (key, u, va, vb)
    (ma, mb), u, va, vb = best
    return CyclicSet(n, ma), CyclicSet(n, mb), u, va, vb


# ---------------------------------------------------------------------------
# Integers


@dataclass(frozen=True)
class IntSet:
    """A finite subset of Z, kept sorted and duplicate-free."""

    elems: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        e = tuple(sorted(set(self.elems)))
        object.__setattr__(self, "elems", e)

    @classmethod
    def of(cls, elems: Iterable[int]) -> "IntSet":
        return cls(tuple(elems))

    @classmethod
    def interval(cls, lo: int, hi: int) -> "IntSet":
        return cls(tuple(range(lo, hi + 1)))

    @classmethod
    def parse(cls, text: str) -> "IntSet":
        return cls(tuple(parse_elems(text)))

    def __len__(self) -> int:
        return len(self.elems)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elems)

    def __contains__(self, x: int) -> bool:
        return x in set(self.elems)

    def __bool__(self) -> bool:
        return bool(self.elems)

    def __repr__(self) -> str:
        return f"IntSet({list(self.elems)})"

    @property
    def min(self) -> int:
        return self.elems[0]

    @property
    def max(self) -> int:
        return self.elems[-1]

    def diameter(self) -> int:
        return self.elems[-1] - self.elems[0] if self.elems else 0

    def translate(self, x: int) -> "IntSet":
        return IntSet(tuple(e + x for e in self.elems))

    def union(self, other: "IntSet") -> "IntSet":
        return IntSet(self.elems + other.elems)

    def mask(self) -> int:
        """Bitmask relative to ``self.min``."""
        lo = self.elems[0]
        m = 0
        for e in self.elems:
            m |= 1 << (e - lo)
        return m

    def __add__(self, other: "IntSet") -> "IntSet":
        return int_sumset(self, other)


def int_sumset(A: IntSet, B: IntSet) -> IntSet:
    if not A or not B:
        return IntSet()
    ma = A.mask()
    out = 0
    b0 = B.min
    for b in B:
        out |= ma << (b - b0)
    return IntSet(tuple(e + A.min + b0 for e in mask_elems(out)))


def int_is_translate(A: IntSet, B: IntSet) -> bool:
    return len(A) == len(B) and bool(A) and A.mask() == B.mask()
