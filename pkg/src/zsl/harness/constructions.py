"""Generators for the extremal constructions and counterexamples.

Every generator returns the sets together with a list of facts.  A fact is a
claim about the construction with its expected value and the value the core
modules recompute.  ``exact`` facts must hold for every valid parameter set;
``asymptotic`` facts are the "M large" / "p large" claims, which are only
expected once the construction has room to breathe.  ``bites`` says whether
they all hold at the chosen parameters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from ..cyclic import CyclicSet, IntSet, int_sumset, is_prime, sumset
from ..errors import PreconditionError, UsageError
from ..progressions import conjecture_conclusion, min_cover, verify_3k4_integers
from ..trios import complement_trio, delta_flags, is_saturated_in_sumset

EXAMPLE_IDS = ("1", "2", "3", "4", "5", "6", "prop13")


@dataclass(frozen=True)
class ExampleSpec:
    id: str
    r: int
    m: Optional[int] = None  # Example 1
    n: Optional[int] = None  # Example 1
    M: Optional[int] = None  # gap between the two intervals (2-5)
    p: Optional[int] = None  # modulus (4, 5)
    size: Optional[int] = None  # |A| in 3, |B| in 4
    s1: Optional[int] = None  # size of the first interval (2-5)

    def __post_init__(self) -> None:
        if str(self.id) not in EXAMPLE_IDS:
            raise UsageError(f"unknown example id {self.id!r}; choose from {', '.join(EXAMPLE_IDS)}")
        object.__setattr__(self, "id", str(self.id))


@dataclass(frozen=True)
class Fact:
    name: str
    expected: Any
    observed: Any
    kind: str = "exact"

    @property
    def holds(self) -> bool:
        return self.expected == self.observed


@dataclass
class ExampleInstance:
    spec: ExampleSpec
    A: Any
    B: Any
    C: Any = None
    facts: list[Fact] = field(default_factory=list)
    margin: Optional[int] = None  # amount by which the conclusion fails

    @property
    def ok(self) -> bool:
        return all(f.holds for f in self.facts if f.kind == "exact")

    @property
    def bites(self) -> bool:
        asym = all(f.holds for f in self.facts if f.kind == "asymptotic")
        return asym and (self.margin is None or self.margin > 0)

    def failed(self) -> list[Fact]:
        return [f for f in self.facts if not f.holds]

    def to_json(self) -> dict:
        def enc(X):
            if X is None:
                return None
            return list(X.elems) if isinstance(X, IntSet) else list(X.elems())

        return {
            "spec": {k: v for k, v in vars(self.spec).items() if v is not None},
            "A": enc(self.A),
            "B": enc(self.B),
            "C": enc(self.C),
            "margin": self.margin,
            "ok": self.ok,
            "bites": self.bites,
            "facts": [
                {"name": f.name, "expected": f.expected, "observed": f.observed,
                 "kind": f.kind, "holds": f.holds}
                for f in self.facts
            ],
        }


def _two_intervals(size: int, s1: Optional[int], M: int) -> IntSet:
    """[0, s1-1] together with an interval of size-s1 points starting M after it."""
    if s1 is None:
        s1 = (size + 1) // 2
    if not 1 <= s1 < size:
        raise UsageError(f"first interval size s1={s1} must lie in [1, {size - 1}]")
    lo2 = s1 - 1 + M
    return IntSet.of(list(range(s1)) + list(range(lo2, lo2 + size - s1)))


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise UsageError(msg)


def _example1(s: ExampleSpec) -> ExampleInstance:
    r, m, n = s.r, s.m, s.n
    _need(m is not None and n is not None, "Example 1 needs m and n")
    _need(r >= -1, "Example 1 needs r >= -1")
    _need(m >= n >= 2 * r + 3 and m >= 2 * r + 4, "Example 1 needs m >= n >= 2r+3 and m >= 2r+4")
    evens = list(range(0, 2 * r + 3, 2))
    A = IntSet.of(evens + list(range(2 * r + 3, m + 1)))
    B = IntSet.of(evens + list(range(2 * r + 3, n + 1)))
    S = int_sumset(A, B)
    v = verify_3k4_integers(A, B)
    facts = [
        Fact("|A| = m-r", m - r, len(A)),
        Fact("|B| = n-r", n - r, len(B)),
        Fact("A+B = evens up to 2r+2 then [2r+3, m+n]",
             list(IntSet.of(evens + list(range(2 * r + 3, m + n + 1))).elems), list(S.elems)),
        Fact("|A+B| = |A|+|B|+r", len(A) + len(B) + r, len(S)),
        Fact("theorem applies", True, v.applicable),
        Fact("no bound violated", True, v.applicable and v.bounds_ok),
        Fact("|P_A| = |A|+r+1", len(A) + r + 1, v.cover_a.length if v.cover_a else None),
        Fact("|P_B| = |B|+r+1", len(B) + r + 1, v.cover_b.length if v.cover_b else None),
        Fact("|P_A+B| = |A|+|B|-1", len(A) + len(B) - 1, v.inner.length if v.inner else None),
        Fact("P_A = [0, m]", (0, m), (v.cover_a.start, v.cover_a.start + v.cover_a.length - 1) if v.cover_a else None),
    ]
    return ExampleInstance(s, A, B, None, facts)


def _example2(s: ExampleSpec) -> ExampleInstance:
    r, M = s.r, s.M
    _need(r >= 0, "Example 2 needs r >= 0")
    _need(M is not None and M >= 1, "Example 2 needs a gap M >= 1")
    A = _two_intervals(r + 3, s.s1, M)
    S = int_sumset(A, A)
    v = verify_3k4_integers(A, A)
    # A has gcd 1, so the shortest progression holding it is [min, max]
    margin = (A.diameter() + 1) - (len(A) + r + 1)
    facts = [
        Fact("|A| = r+3", r + 3, len(A)),
        Fact("|2A| = 3|A|-3", 3 * len(A) - 3, len(S), "asymptotic"),
        Fact("|2A| = 2|A|+r", 2 * len(A) + r, len(S), "asymptotic"),
        Fact("theorem does not apply", False, v.applicable, "asymptotic"),
    ]
    return ExampleInstance(s, A, A, None, facts, margin)


def _example3(s: ExampleSpec) -> ExampleInstance:
    r, M = s.r, s.M
    _need(r >= -1, "Example 3 needs r >= -1")
    _need(M is not None and M >= 1, "Example 3 needs a gap M >= 1")
    B = IntSet.interval(0, r + 1)
    size = s.size if s.size is not None else max(len(B), 3)
    _need(size >= max(len(B), 3), "Example 3 needs |A| >= max(|B|, 3)")
    A = _two_intervals(size, s.s1, M)
    S = int_sumset(A, B)
    v = verify_3k4_integers(A, B)
    margin = (A.diameter() + 1) - (len(A) + r + 1)
    facts = [
        Fact("|B| = r+2", r + 2, len(B)),
        Fact("|A| >= max(|B|, 3)", True, len(A) >= max(len(B), 3)),
        Fact("|A+B| = |A|+2|B|-2", len(A) + 2 * len(B) - 2, len(S), "asymptotic"),
        Fact("|A+B| = |A|+|B|+r", len(A) + len(B) + r, len(S), "asymptotic"),
        Fact("theorem does not apply", False, v.applicable, "asymptotic"),
    ]
    return ExampleInstance(s, A, B, None, facts, margin)


def _embed(X: IntSet, p: int) -> CyclicSet:
    return CyclicSet.of(p, (x % p for x in X))


def _modular_checks(p: int, A: CyclicSet, B: CyclicSet, r: int) -> tuple[list[Fact], int]:
    """Facts shared by the two modular examples; returns them and the margin."""
    cert = conjecture_conclusion(A, B)
    _, lb = min_cover(B)
    facts = [
        Fact("|A| >= |B|", True, len(A) >= len(B), "asymptotic"),
        Fact("conjectured conclusion fails", None, None if cert is None else cert.d, "asymptotic"),
    ]
    return facts, lb - (len(B) + r + 1)


def _check_prime(p: Optional[int], who: str) -> int:
    _need(p is not None, f"{who} needs a prime p")
    _need(is_prime(p), f"{who}: p={p} is not prime")
    return p


def _example4(s: ExampleSpec) -> ExampleInstance:
    r, M = s.r, s.M
    p = _check_prime(s.p, "Example 4")
    _need(r >= -1, "Example 4 needs r >= -1")
    _need(M is not None and M >= r + 3, "Example 4 needs M >= r+3")
    size = s.size if s.size is not None else max(r + 2, 3)
    _need(size >= max(r + 2, 3), "Example 4 needs |B| >= max(r+2, 3)")
    Cz = IntSet.interval(0, r + 1)
    Bz = _two_intervals(size, s.s1, M)
    BCz = int_sumset(Bz, Cz)
    if BCz.max >= p:
        raise PreconditionError(f"p={p} too small to hold B+C = [0, {BCz.max}] without wrap-around")
    B, C = _embed(Bz, p), _embed(Cz, p)
    BC = sumset(B, C)
    A = BC.complement().neg()
    if not A:
        raise PreconditionError(f"p={p}: B+C = G, A would be empty")
    S = sumset(A, B)
    facts = [
        Fact("|B| >= |C|", True, len(Bz) >= len(Cz)),
        Fact("|B+C| = |B|+2|C|-2 in Z", len(Bz) + 2 * len(Cz) - 2, len(BCz)),
        Fact("|B+C| = |B|+|C|+r in Z", len(Bz) + len(Cz) + r, len(BCz)),
        Fact("|P_B| = |B|+M-1 in Z", len(Bz) + M - 1, Bz.diameter() + 1),
        Fact("no shorter cover of B mod p", len(Bz) + M - 1, min_cover(B)[1], "asymptotic"),
        Fact("C saturated in B+C", True, is_saturated_in_sumset(C, B), "asymptotic"),
        Fact("A+B = -C^c", list(C.complement().neg().elems()), list(S.elems()), "asymptotic"),
        Fact("|A+B| = p-r-2", p - r - 2, len(S), "asymptotic"),
        Fact("|A+B| = |A|+|B|+r", len(A) + len(B) + r, len(S), "asymptotic"),
    ]
    more, margin = _modular_checks(p, A, B, r)
    return ExampleInstance(s, A, B, C, facts + more, margin)


def _example5(s: ExampleSpec) -> ExampleInstance:
    r, M = s.r, s.M
    p = _check_prime(s.p, "Example 5")
    _need(r >= 0, "Example 5 needs r >= 0")
    _need(M is not None and M >= 1, "Example 5 needs a gap M >= 1")
    Bz = _two_intervals(r + 3, s.s1, M)
    BBz = int_sumset(Bz, Bz)
    if BBz.max >= p:
        raise PreconditionError(f"p={p} too small to hold 2B = [0, {BBz.max}] without wrap-around")
    B = _embed(Bz, p)
    A = sumset(B, B).complement().neg()
    if not A:
        raise PreconditionError(f"p={p}: 2B = G, A would be empty")
    S = sumset(A, B)
    facts = [
        Fact("|B| = r+3", r + 3, len(Bz)),
        Fact("|P_B| = |B|+M-1 in Z", len(Bz) + M - 1, Bz.diameter() + 1),
        Fact("|2B| = 3|B|-3 in Z", 3 * len(Bz) - 3, len(BBz), "asymptotic"),
        Fact("no shorter cover of B mod p", len(Bz) + M - 1, min_cover(B)[1], "asymptotic"),
        Fact("B saturated in 2B", True, is_saturated_in_sumset(B, B), "asymptotic"),
        Fact("A+B = -B^c", list(B.complement().neg().elems()), list(S.elems()), "asymptotic"),
        Fact("|A+B| = |A|+2|B|-3", len(A) + 2 * len(B) - 3, len(S), "asymptotic"),
        Fact("|A+B| = p-r-3", p - r - 3, len(S), "asymptotic"),
    ]
    C = None
    if len(S) < p:
        T = complement_trio(A, B)
        C = T.C
        facts.append(Fact("C = B", list(B.elems()), list(C.elems()), "asymptotic"))
        dl = delta_flags(T)
        facts.append(Fact("delta_B = delta_C = 1", (1, 1), (dl.delta_B, dl.delta_C), "asymptotic"))
    more, margin = _modular_checks(p, A, B, r)
    return ExampleInstance(s, A, B, C, facts + more, margin)


def _pablo_set(r: int, n: int) -> CyclicSet:
    return CyclicSet.of(n, list(range(r + 2)) + [r + 3, 2 * r + 6])


def _example6(s: ExampleSpec) -> ExampleInstance:
    r = s.r
    _need(r >= 2, "Example 6 needs r >= 2")
    p = 4 * r + 11
    _need(is_prime(p), f"Example 6 needs 4r+11 prime; r={r} gives {p}")
    if s.p is not None and s.p != p:
        raise UsageError(f"Example 6 fixes p = 4r+11 = {p}, got p={s.p}")
    A = _pablo_set(r, p)
    S = sumset(A, A)
    T = complement_trio(A, A)
    expect2A = list(range(2 * r + 5)) + list(range(2 * r + 6, 3 * r + 8)) + [3 * r + 9]
    cert = conjecture_conclusion(A, A)
    facts = [
        Fact("|A| = r+4", r + 4, len(A)),
        Fact("2A = [0,2r+4] u [2r+6,3r+7] u {3r+9}", expect2A, list(S.elems())),
        Fact("|2A| = 3r+8", 3 * r + 8, len(S)),
        Fact("|2A| = 3|A|-4", 3 * len(A) - 4, len(S)),
        Fact("|2A| = 2|A|+r", 2 * len(A) + r, len(S)),
        Fact("|2A| = p-r-3", p - r - 3, len(S)),
        Fact("shortest cover of A has length 2r+7", 2 * r + 7, min_cover(A)[1]),
        Fact("shortest cover exceeds |A|+r+1 by 2", 2, min_cover(A)[1] - (len(A) + r + 1)),
        Fact("|C| = r+3", r + 3, len(T.C)),
        Fact("delta flags", (1, 1, 1), delta_flags(T).as_tuple()),
        Fact("conjectured conclusion fails", None, None if cert is None else cert.d),
    ]
    return ExampleInstance(s, A, A, T.C, facts, min_cover(A)[1] - (len(A) + r + 1))


def _prop13(s: ExampleSpec) -> ExampleInstance:
    r = s.r
    _need(r >= 1, "the 4r+11 construction needs r >= 1")
    n = 4 * r + 11
    A = _pablo_set(r, n)
    d, L = min_cover(A)
    facts = [
        Fact("n = 4r+11", n, A.n),
        Fact("shortest cover of A has length 2r+7", 2 * r + 7, L),
    ]
    return ExampleInstance(s, A, A, None, facts)


_GENERATORS = {
    "1": _example1,
    "2": _example2,
    "3": _example3,
    "4": _example4,
    "5": _example5,
    "6": _example6,
    "prop13": _prop13,
}


def generate_example(spec: ExampleSpec) -> ExampleInstance:
    return _GENERATORS[spec.id](spec)


def smallest_biting_prime(spec: ExampleSpec, pmax: int = 10_000) -> Optional[int]:
    """Smallest prime p at which the modular Examples 4 or 5 fully bite."""
    if spec.id not in ("4", "5"):
        raise UsageError("only Examples 4 and 5 depend on p")
    for p in range(2, pmax + 1):
        if not is_prime(p):
            continue
        try:
            inst = generate_example(ExampleSpec(**{**vars(spec), "p": p}))
        except PreconditionError:
            continue
        if inst.ok and inst.bites:
            return p
    return None
