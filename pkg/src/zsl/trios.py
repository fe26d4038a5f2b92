"""Additive trios, saturation and Vosper duality."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cyclic import CyclicSet, is_translate, sumset
from .errors import DomainError, PreconditionError, UsageError

NAMES = ("A", "B", "C")


@dataclass(frozen=True)
class Trio:
    """Nonempty (A, B, C) in Z/nZ with A + B + C != G."""

    A: CyclicSet
    B: CyclicSet
    C: CyclicSet

    def __post_init__(self) -> None:
        n = self.A.n
        if self.B.n != n or self.C.n != n:
            raise UsageError("trio sets must share a modulus")
        if not (self.A and self.B and self.C):
            raise PreconditionError("trio sets must be nonempty")
        if len(self.total()) == n:
            raise PreconditionError("A + B + C = G, not an additive trio")

    @property
    def n(self) -> int:
        return self.A.n

    @property
    def r(self) -> int:
        return self.n - len(self.A) - len(self.B) - len(self.C)

    def sets(self) -> tuple[CyclicSet, CyclicSet, CyclicSet]:
        return (self.A, self.B, self.C)

    def get(self, which: str) -> CyclicSet:
        return getattr(self, which)

    def total(self) -> CyclicSet:
        return sumset(sumset(self.A, self.B), self.C)

    def missing(self) -> CyclicSet:
        """``(A + B + C)^c``, nonempty by construction."""
        return self.total().complement()

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "A": list(self.A.elems()),
            "B": list(self.B.elems()),
            "C": list(self.C.elems()),
            "r": self.r,
        }


def complement_trio(A: CyclicSet, B: CyclicSet) -> Trio:
    """``(A, B, -(A+B)^c)``; its r equals |A+B| - |A| - |B|."""
    if not A or not B:
        raise PreconditionError("complement_trio needs nonempty sets")
    S = sumset(A, B)
    if len(S) == A.n:
        raise DomainError("A + B = G, complement is empty")
    return Trio(A, B, S.complement().neg())


def _others(T: Trio, which: str) -> tuple[CyclicSet, CyclicSet]:
    i = NAMES.index(which)
    s = T.sets()
    return s[(i + 1) % 3], s[(i + 2) % 3]


def is_saturated(T: Trio, which: str) -> bool:
    """True iff adding any outside element to ``which`` makes the total sum G."""
    X = T.get(which)
    Y, Z = _others(T, which)
    YZ = sumset(Y, Z)
    n = T.n
    for x in X.complement():
        grown = X | CyclicSet.of(n, [x])
        if len(sumset(grown, YZ)) != n:
            return False
    return True


def is_trio_saturated(T: Trio) -> bool:
    return all(is_saturated(T, w) for w in NAMES)


def maximal_summand(fixed: CyclicSet, S: CyclicSet) -> CyclicSet:
    """Largest Y with ``fixed + Y`` contained in S, i.e. ``{y : y + fixed <= S}``."""
    n = S.n
    return CyclicSet.of(n, (y for y in range(n) if fixed.translate(y).issubset(S)))


def saturate(T: Trio, z: int | None = None, order: Sequence[str] = ("C", "B", "A")) -> Trio:
    """Successive saturation of T.

    With order (X, Y, W): X' = z - (Y+W)^c, then Y' is the largest set with
    W + Y' = W + Y, then W' the largest with W' + Y' = W + Y'.
    ``z`` defaults to the smallest element missing from A + B + C.
    """
    if sorted(order) != sorted(NAMES):
        raise UsageError(f"order must be a permutation of A, B, C: {order!r}")
    missing = T.missing()
    if z is None:
        z = missing.elems()[0]
    elif z % T.n not in missing:
        raise PreconditionError(f"z={z} lies in A + B + C")
    x_name, y_name, w_name = order
    cur = {w: T.get(w) for w in NAMES}
    Y, W = cur[y_name], cur[w_name]
    cur[x_name] = sumset(Y, W).complement().neg().translate(z)
    WY = sumset(W, Y)
    Y2 = maximal_summand(W, WY)
    cur[y_name] = Y2
    cur[w_name] = maximal_summand(Y2, WY)
    return Trio(cur["A"], cur["B"], cur["C"])


def is_saturated_in_sumset(A: CyclicSet, B: CyclicSet) -> bool:
    """A is saturated in A+B: no x outside A has x + B inside A + B."""
    S = sumset(A, B)
    return all(not B.translate(x).issubset(S) for x in A.complement())


@dataclass(frozen=True)
class VosperResult:
    lhs: CyclicSet
    contained: bool
    equality: bool
    size_identity: bool | None  # None when equality fails


def vosper_dual(A: CyclicSet, B: CyclicSet) -> VosperResult:
    """``-(A+B)^c + B`` against ``-A^c``.

    Containment always holds; equality holds iff A is saturated in A+B, and
    then ``|lhs| = |(A+B)^c| + |B| + r``.
    """
    S = sumset(A, B)
    comp = S.complement()
    lhs = sumset(comp.neg(), B)
    target = A.complement().neg()
    contained = lhs.issubset(target)
    equality = lhs == target
    ident = None
    if equality:
        r = len(S) - len(A) - len(B)
        ident = len(lhs) == len(comp) + len(B) + r
    return VosperResult(lhs, contained, equality, ident)


@dataclass(frozen=True)
class DeltaFlags:
    delta_A: int
    delta_B: int
    delta_C: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.delta_A, self.delta_B, self.delta_C)

    def get(self, which: str) -> int:
        return getattr(self, "delta_" + which)


def delta_flags(T: Trio, r: int | None = None) -> DeltaFlags:
    """Correction terms of the conjectured 3k-4 statement modulo p.

    delta_X = 1 if r >= 0 and X is a translate of one of the other two sets,
    or if r >= 2 and the other two are translates of each other, both of
    size r + 4.  ``r`` defaults to r(T).
    """
    if r is None:
        r = T.r
    out = []
    for name in NAMES:
        X = T.get(name)
        Y, Z = _others(T, name)
        d = 0
        if r >= 0 and (is_translate(X, Y) or is_translate(X, Z)):
            d = 1
        elif r >= 2 and len(Y) == len(Z) == r + 4 and is_translate(Y, Z):
            d = 1
        out.append(d)
    return DeltaFlags(*out)


def translate_flags(T: Trio) -> DeltaFlags:
    """delta_X = 1 iff X is a translate of one of the other two (no r guard)."""
    out = []
    for name in NAMES:
        X = T.get(name)
        Y, Z = _others(T, name)
        out.append(int(is_translate(X, Y) or is_translate(X, Z)))
    return DeltaFlags(*out)
