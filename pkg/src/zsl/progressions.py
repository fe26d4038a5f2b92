"""Arithmetic-progression covers, rectification and the 3k-4 checks.

``ell(A, d)`` walks A in the cyclic order of the coset of <d> holding it; the
shortest d-progression covering A is the complement of the largest circular
gap.  The integer verifier and the cyclic conclusion checker build on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from .cyclic import (
    CyclicSet,
    IntSet,
    int_is_translate,
    int_sumset,
    require_prime,
    sumset,
)
from .errors import DomainError, PreconditionError, UsageError
from .trios import NAMES, Trio, complement_trio, delta_flags, translate_flags


@dataclass(frozen=True)
class ApCover:
    """``{start + i*d : 0 <= i < length}``; ``n=None`` means the integers."""

    start: int
    d: int
    length: int
    n: Optional[int] = None

    def __post_init__(self) -> None:
        if self.length < 1:
            raise UsageError("progression length must be positive")
        if self.n is None:
            if self.d <= 0:
                raise UsageError("integer progression needs d >= 1")
            return
        if self.d % self.n == 0:
            raise UsageError("difference must be nonzero mod n")
        if self.length > self.n // gcd(self.d, self.n):
            raise UsageError("cyclic progression overlaps itself")

    def elements(self) -> list[int]:
        out = [self.start + i * self.d for i in range(self.length)]
        if self.n is not None:
            out = [x % self.n for x in out]
        return out

    def as_set(self):
        if self.n is None:
            return IntSet.of(self.elements())
        return CyclicSet.of(self.n, self.elements())

    def covers(self, X) -> bool:
        members = set(self.elements())
        return all(x in members for x in X)

    def contained_in(self, X) -> bool:
        return all(x in X for x in self.elements())

    def to_json(self) -> dict:
        return {"start": self.start, "d": self.d, "len": self.length}

    @classmethod
    def from_json(cls, obj: dict, n: Optional[int] = None) -> "ApCover":
        return cls(int(obj["start"]), int(obj["d"]), int(obj["len"]), n)


# ---------------------------------------------------------------------------
# ell_d


def _ell_positions(elems, d: int, n: int) -> Optional[tuple[int, int, int]]:
    """(length, start position, coset base) or None when A spans several cosets."""
    d %= n
    g = gcd(d, n)
    o = n // g
    a0 = elems[0]
    if g > 1:
        for a in elems:
            if (a - a0) % g:
                return None
    dinv = pow(d // g, -1, o) if o > 1 else 0
    pos = sorted(((a - a0) // g * dinv) % o for a in elems)
    k = len(pos)
    if k == 1:
        return 1, pos[0], a0
    best_gap = pos[0] + o - pos[-1]
    best_i = 0  # cover starts at pos[best_i]
    for i in range(1, k):
        gap = pos[i] - pos[i - 1]
        if gap > best_gap:
            best_gap, best_i = gap, i
    return o - best_gap + 1, pos[best_i], a0


def ell_cover(A: CyclicSet, d: int) -> Optional[ApCover]:
    """A shortest d-progression containing A, or None if none exists."""
    if not A:
        raise PreconditionError("ell needs a nonempty set")
    n = A.n
    if d % n == 0:
        raise UsageError("d must be nonzero mod n")
    res = _ell_positions(A.elems(), d, n)
    if res is None:
        return None
    length, t, a0 = res
    return ApCover((a0 + t * d) % n, d % n, length, n)


def ell(A: CyclicSet, d: int) -> Optional[int]:
    if not A:
        raise PreconditionError("ell needs a nonempty set")
    if d % A.n == 0:
        raise UsageError("d must be nonzero mod n")
    res = _ell_positions(A.elems(), d, A.n)
    return None if res is None else res[0]


def order(d: int, n: int) -> int:
    return n // gcd(d % n, n)


def min_cover(A: CyclicSet) -> tuple[int, int]:
    """(d, ell_d(A)) minimizing the length; smallest d on ties."""
    if A.n < 2:
        raise PreconditionError("min_cover needs n >= 2")
    best = None
    for d in range(1, A.n):
        L = ell(A, d)
        if L is not None and (best is None or L < best[1]):
            best = (d, L)
    return best


def rectification_witness(A: CyclicSet, B: CyclicSet) -> Optional[tuple[int, int, int]]:
    """(d, ell_d(A), ell_d(B)) with the smallest sum under ell_d(A)+ell_d(B) <= ord(d)+1."""
    A._check(B)
    if not A or not B:
        raise PreconditionError("rectification needs nonempty sets")
    n = A.n
    best = None
    for d in range(1, n):
        la = ell(A, d)
        if la is None:
            continue
        lb = ell(B, d)
        if lb is None or la + lb > order(d, n) + 1:
            continue
        if best is None or la + lb < best[1] + best[2]:
            best = (d, la, lb)
    return best


def unfold(A: CyclicSet, B: CyclicSet, d: int) -> tuple[IntSet, IntSet]:
    """Integer preimages along minimal d-covers, each with minimum 0."""
    A._check(B)
    ca, cb = ell_cover(A, d), ell_cover(B, d)
    n = A.n
    if ca is None or cb is None or ca.length + cb.length > order(d, n) + 1:
        raise PreconditionError(f"d={d} does not rectify the pair")
    o = order(d, n)
    step = {(i * d) % n: i for i in range(o)}
    A_Z = IntSet.of(step[(a - ca.start) % n] for a in A)
    B_Z = IntSet.of(step[(b - cb.start) % n] for b in B)
    # Freiman isomorphism witness
    assert len(int_sumset(A_Z, B_Z)) == len(sumset(A, B))
    return A_Z, B_Z


# ---------------------------------------------------------------------------
# 3k-4 over the integers


@dataclass(frozen=True)
class Verdict3k4Z:
    applicable: bool
    delta: int
    r: int
    swapped: bool = False
    g: Optional[int] = None
    cover_a: Optional[ApCover] = None
    cover_b: Optional[ApCover] = None
    inner: Optional[ApCover] = None
    bounds: dict = field(default_factory=dict)

    @property
    def bounds_ok(self) -> bool:
        return all(self.bounds.values())

    def covers(self) -> tuple[Optional[ApCover], Optional[ApCover]]:
        return self.cover_a, self.cover_b


def _longest_run(S: IntSet, g: int) -> ApCover:
    """Longest g-spaced run inside S, leftmost on ties."""
    best_start, best_len = S.elems[0], 1
    run_start, run_len = S.elems[0], 1
    prev = S.elems[0]
    for x in S.elems[1:]:
        if x - prev == g:
            run_len += 1
        else:
            run_start, run_len = x, 1
        if run_len > best_len:
            best_start, best_len = run_start, run_len
        prev = x
    return ApCover(best_start, g, best_len)


def verify_3k4_integers(A: IntSet, B: IntSet) -> Verdict3k4Z:
    if not A or not B:
        raise PreconditionError("verify_3k4_integers needs nonempty sets")
    swapped = len(A) < len(B)
    if swapped:
        A, B = B, A
    S = int_sumset(A, B)
    r = len(S) - len(A) - len(B)
    delta = int(int_is_translate(A, B))
    if len(S) > len(A) + 2 * len(B) - 3 - delta:
        return Verdict3k4Z(False, delta, r, swapped)
    g = 0
    for a in A:
        g = gcd(g, a - A.min)
    for b in B:
        g = gcd(g, b - B.min)
    g = g or 1
    ca = ApCover(A.min, g, (A.max - A.min) // g + 1)
    cb = ApCover(B.min, g, (B.max - B.min) // g + 1)
    inner = _longest_run(S, g)
    bounds = {
        "P_A": ca.length <= len(A) + r + 1,
        "P_B": cb.length <= len(B) + r + 1,
        "P_AB": inner.length >= len(A) + len(B) - 1,
    }
    return Verdict3k4Z(True, delta, r, swapped, g, ca, cb, inner, bounds)


# ---------------------------------------------------------------------------
# the conjectured conclusion modulo p


@dataclass(frozen=True)
class Certificate:
    p: int
    A: CyclicSet
    B: CyclicSet
    C: CyclicSet
    r: int
    d: int
    covers: tuple[ApCover, ApCover, ApCover]
    ok: bool = True

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "A": list(self.A.elems()),
            "B": list(self.B.elems()),
            "C": list(self.C.elems()),
            "r": self.r,
            "d": self.d,
            "covers": [c.to_json() for c in self.covers],
            "ok": self.ok,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Certificate":
        p = int(obj["p"])
        covers = tuple(ApCover.from_json(c, p) for c in obj["covers"])
        if len(covers) != 3:
            raise UsageError("certificate needs exactly three covers")
        return cls(
            p,
            CyclicSet.of(p, obj["A"]),
            CyclicSet.of(p, obj["B"]),
            CyclicSet.of(p, obj["C"]),
            int(obj["r"]),
            int(obj["d"]),
            covers,
            bool(obj["ok"]),
        )


def check_certificate(cert: Certificate) -> list[str]:
    """Re-derive everything in ``cert``; returns the list of problems found."""
    problems = []
    p = cert.p
    S = sumset(cert.A, cert.B)
    if len(S) == p:
        return ["A + B = G"]
    C = S.complement().neg()
    if C != cert.C:
        problems.append("C != -(A+B)^c")
    r = len(S) - len(cert.A) - len(cert.B)
    if r != cert.r:
        problems.append(f"r mismatch: recorded {cert.r}, actual {r}")
    holds = True
    for name, X, cov in zip(NAMES, (cert.A, cert.B, C), cert.covers):
        if cov.d % p != cert.d % p:
            problems.append(f"P_{name} has difference {cov.d}, expected {cert.d}")
        if not cov.covers(X):
            problems.append(f"P_{name} does not contain {name}")
            holds = False
        if cov.length > len(X) + r + 1:
            problems.append(f"|P_{name}|={cov.length} exceeds |{name}|+r+1={len(X) + r + 1}")
            holds = False
    if cert.ok != holds:
        problems.append(f"ok flag {cert.ok} disagrees with recomputation")
    return problems


def conjecture_conclusion(A: CyclicSet, B: CyclicSet) -> Optional[Certificate]:
    """Smallest d with ell_d(X) <= |X| + r + 1 for X in A, B, C = -(A+B)^c."""
    A._check(B)
    p = A.n
    require_prime(p)
    S = sumset(A, B)
    if len(S) == p:
        raise DomainError("A + B = G")
    C = S.complement().neg()
    r = len(S) - len(A) - len(B)
    sets = (A, B, C)
    for d in range(1, p):
        covers = []
        for X in sets:
            cov = ell_cover(X, d)
            if cov.length > len(X) + r + 1:
                break
            covers.append(cov)
        else:
            return Certificate(p, A, B, C, r, d, tuple(covers), True)
    return None


def conclusion_for_trio(T: Trio) -> Optional[int]:
    """Smallest d covering each trio set within |X| + r + 1, else None."""
    p = T.n
    r = T.r
    for d in range(1, p):
        if all(ell(X, d) <= len(X) + r + 1 for X in T.sets()):
            return d
    return None


# ---------------------------------------------------------------------------
# five-way equivalence (statements 1-3) and the single-set reduction

PAIRS = (("A", "B"), ("B", "C"), ("C", "A"))


@dataclass(frozen=True)
class Prop7Result:
    applicable: bool
    s1: Optional[bool] = None
    s2: Optional[bool] = None
    s3: Optional[bool] = None
    d1: Optional[int] = None
    d2: Optional[int] = None
    d3: Optional[tuple[int, str, str]] = None
    # (d, X, Y) minimizing ell_d(X)+ell_d(Y) among pairs meeting p+1
    d3_min: Optional[tuple[int, str, str]] = None
    reason: str = ""

    @property
    def consistent(self) -> bool:
        return not self.applicable or self.s1 == self.s2 == self.s3


def prop7_trio(T: Trio, delta: str = "translate") -> Prop7Result:
    """Evaluate statements 1-3 for a trio over Z/pZ.

    ``delta="translate"`` takes delta_X = 1 iff X is a translate of one of
    the other two sets; ``delta="conjecture"`` uses the two-clause flags.
    """
    p = T.n
    require_prime(p)
    if delta == "translate":
        flags = translate_flags(T)
    elif delta == "conjecture":
        flags = delta_flags(T)
    else:
        raise UsageError(f"unknown delta mode {delta!r}")
    r = T.r
    for name in NAMES:
        if len(T.get(name)) < r + 3 + flags.get(name):
            return Prop7Result(False, reason=f"|{name}| < r+3+delta_{name}")
    lens = {}
    for d in range(1, p):
        lens[d] = {name: ell(T.get(name), d) for name in NAMES}
    d1 = next(
        (d for d in range(1, p) if all(lens[d][x] <= len(T.get(x)) + r + 1 for x in NAMES)),
        None,
    )
    d2 = next(
        (d for d in range(1, p) if all(lens[d][x] + lens[d][y] <= p + 1 for x, y in PAIRS)),
        None,
    )
    d3 = None
    d3_min = None
    for d in range(1, p):
        for x, y in PAIRS:
            tot = lens[d][x] + lens[d][y]
            if tot > p + 1:
                continue
            if d3 is None:
                d3 = (d, x, y)
            if d3_min is None or tot < lens[d3_min[0]][d3_min[1]] + lens[d3_min[0]][d3_min[2]]:
                d3_min = (d, x, y)
    return Prop7Result(True, d1 is not None, d2 is not None, d3 is not None, d1, d2, d3, d3_min)


def prop7_statements(A: CyclicSet, B: CyclicSet, delta: str = "translate") -> Prop7Result:
    return prop7_trio(complement_trio(A, B), delta)


def prop7_minimal_d_transfer(T: Trio, res: Prop7Result) -> Optional[bool]:
    """Whether the minimizing d of statement 3 also witnesses statement 1."""
    if not res.applicable or res.d3_min is None:
        return None
    d = res.d3_min[0]
    return all(ell(X, d) <= len(X) + T.r + 1 for X in T.sets())


def reduction_check_part1(T: Trio, d: int, h: int, r: Optional[int] = None) -> Optional[bool]:
    """Single-set reduction: if A is short along d, so are all three.

    Returns None when the hypotheses fail: ell_d(A) <= |A|+h, r(T) <= r,
    |A| >= r+3+h and |B| >= r+3+2h (one strict), |C| >= r+3.
    """
    p = T.n
    require_prime(p)
    if r is None:
        r = T.r
    a, b, c = len(T.A), len(T.B), len(T.C)
    if ell(T.A, d) > a + h or T.r > r:
        return None
    if a < r + 3 + h or b < r + 3 + 2 * h or c < r + 3:
        return None
    if a == r + 3 + h and b == r + 3 + 2 * h:
        return None
    return all(ell(X, d) <= len(X) + r + 1 for X in T.sets())
