"""Exhaustive scans over canonical (A, B) orbits.

Each mode is a hypothesis predicate plus a conclusion.  The hot path is
vectorized over all partners B of one canonical A; ``evaluate_pair`` is an
independent scalar implementation of the same predicates used for sampled
runs and for re-checking certificate files.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import logging
import multiprocessing as mp
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np

from .. import _bits
from ..cyclic import CyclicSet, canonical_pair, is_prime, is_translate, mask_elems, sumset
from ..errors import CapacityError, UsageError
from ..progressions import conjecture_conclusion, ell, ell_cover, reduction_check_part1
from ..trios import Trio, complement_trio, delta_flags
from . import orbits

log = logging.getLogger(__name__)

MODES = ("conjecture", "prop12", "mario1", "smallr", "prop7", "feasibility")
PAIR_MODES = ("conjecture", "prop12", "mario1", "smallr")
EXHAUSTIVE_CAP = 19


@dataclass
class ScanConfig:
    mode: str = "conjecture"
    primes: Optional[list[int]] = None
    max_prime: int = 7
    jobs: Optional[int] = None
    output: Optional[str] = None
    emit_all: bool = False
    cap: int = EXHAUSTIVE_CAP
    samples: int = 0  # > 0: sampled mode, required above the cap
    seed: int = 0
    theorem: Optional[str] = None  # feasibility mode
    delta: str = "translate"  # prop7 mode

    def resolved_primes(self) -> list[int]:
        ps = self.primes if self.primes is not None else [q for q in range(2, self.max_prime + 1) if is_prime(q)]
        bad = [q for q in ps if not is_prime(q)]
        if bad:
            raise UsageError(f"not prime: {bad}")
        return sorted(set(ps))

    def resolved_jobs(self) -> int:
        if self.jobs is not None:
            return max(1, int(self.jobs))
        env = os.environ.get("ZSL_JOBS")
        if env:
            try:
                return max(1, int(env))
            except ValueError:
                raise UsageError(f"ZSL_JOBS={env!r} is not an integer") from None
        return 1


@dataclass
class Counts:
    orbits_scanned: int = 0
    applicable: int = 0
    conclusion_holds: int = 0
    violations: int = 0
    pairs: int = 0  # sum of orbit sizes
    proven_applicable: int = 0
    proven_violations: int = 0

    def add(self, other: "Counts") -> None:
        for k in vars(self):
            setattr(self, k, getattr(self, k) + getattr(other, k))


@dataclass
class ScanReport:
    config: dict
    per_prime: dict = field(default_factory=dict)  # p -> Counts
    per_r: dict = field(default_factory=dict)  # (p, r) -> Counts
    violations: list = field(default_factory=list)  # records
    records: list = field(default_factory=list)  # every emitted record
    seconds: float = 0.0
    content_hash: str = ""
    extra: dict = field(default_factory=dict)

    def totals(self) -> Counts:
        out = Counts()
        for c in self.per_prime.values():
            out.add(c)
        return out

    def consistent(self) -> bool:
        return all(c.applicable == c.conclusion_holds + c.violations for c in self.per_prime.values())

    def to_json(self) -> dict:
        return {
            "config": self.config,
            "per_prime": {str(p): asdict(c) for p, c in sorted(self.per_prime.items())},
            "per_r": {f"{p}:{r}": asdict(c) for (p, r), c in sorted(self.per_r.items())},
            "violations": len(self.violations),
            "seconds": round(self.seconds, 3),
            "content_hash": self.content_hash,
            **self.extra,
        }


# ---------------------------------------------------------------------------
# scalar predicates


def conjecture_applicable(A: CyclicSet, B: CyclicSet) -> bool:
    S = sumset(A, B)
    p = A.n
    if len(S) == p:
        return False
    T = complement_trio(A, B)
    r, fl = T.r, delta_flags(T)
    for X, Y, dy in ((A, B, fl.delta_B), (B, A, fl.delta_A)):
        if len(X) < len(Y):
            continue
        if len(S) <= len(X) + 2 * len(Y) - 3 - dy and len(S) <= p - r - 3 - fl.delta_C:
            return True
    return False


def proven_regime(A: CyclicSet, B: CyclicSet) -> bool:
    """Instances the literature settles: r <= 0 always; r = 1 when
    |A|, |C| >= 5, |B| >= 4 and p >= 53 (A the larger set)."""
    T = complement_trio(A, B)
    if T.r <= 0:
        return True
    if T.r == 1 and A.n >= 53 and len(T.C) >= 5:
        big, small = (A, B) if len(A) >= len(B) else (B, A)
        return len(big) >= 5 and len(small) >= 4
    return False


def _window_count(X: CyclicSet, d: int, M: int) -> int:
    """Most points of X inside one d-progression of length M."""
    p = X.n
    dinv = pow(d, -1, p)
    pos = sorted(x * dinv % p for x in X)
    best = 0
    for s in pos:
        best = max(best, sum(1 for q in pos if (q - s) % p < M))
    return best


def prop12_applicable(A: CyclicSet, B: CyclicSet) -> bool:
    """Density hypotheses plus subsets A', B' whose d-covers fit in p+1 with
    |B'| <= |A'| and |A'| + 2|B'| - 4 >= |A+B|."""
    p = A.n
    S = sumset(A, B)
    r = len(S) - len(A) - len(B)
    if len(S) == p or 4 * len(S) > 3 * (p + 1) or p < 4 * r + 9:
        return False
    for d in range(1, p):
        for X, Y in ((A, B), (B, A)):
            for M in range(1, p + 1):
                x = _window_count(X, d, M)
                y = min(_window_count(Y, d, p + 1 - M), x)
                if x >= 1 and y >= 1 and x + 2 * y - 4 >= len(S):
                    return True
    return False


def smallr_applicable(A: CyclicSet, B: CyclicSet) -> bool:
    p = A.n
    S = sumset(A, B)
    if len(S) == p:
        return False
    t = (p - 1).bit_length()  # ceil(log2 p)
    union = min(len(A | B.translate(v)) for v in range(p))
    big, small = max(len(A), len(B)), min(len(A), len(B))
    return union <= t and len(S) <= big + 2 * small - 3 - int(is_translate(A, B))


def mario1_witness(A: CyclicSet, B: CyclicSet) -> tuple[bool, Optional[int], bool]:
    """(applicable, d, holds) for the single-set reduction on the complement
    trio, over all orderings of the trio and all d, with h = ell_d(X) - |X|.
    d is the first failing d, else the first applicable one."""
    T = complement_trio(A, B)
    p = A.n
    first = None
    for d in range(1, p):
        for X, Y, Z in itertools.permutations(T.sets()):
            h = ell(X, d) - len(X)
            res = reduction_check_part1(Trio(X, Y, Z), d, h, T.r)
            if res is None:
                continue
            if res is False:
                return True, d, False
            if first is None:
                first = d
    return first is not None, first, True


@dataclass(frozen=True)
class PairVerdict:
    applicable: bool
    holds: Optional[bool]
    d: Optional[int]
    r: int
    proven: bool = False


def evaluate_pair(mode: str, A: CyclicSet, B: CyclicSet) -> PairVerdict:
    T = complement_trio(A, B)
    r = T.r
    if mode == "mario1":
        app, d, ok = mario1_witness(A, B)
        return PairVerdict(app, ok if app else None, d, r)
    pred = {
        "conjecture": conjecture_applicable,
        "prop12": prop12_applicable,
        "smallr": smallr_applicable,
    }.get(mode)
    if pred is None:
        raise UsageError(f"mode {mode!r} has no pair predicate")
    if not pred(A, B):
        return PairVerdict(False, None, None, r)
    cert = conjecture_conclusion(A, B)
    proven = mode == "conjecture" and proven_regime(A, B)
    return PairVerdict(True, cert is not None, None if cert is None else cert.d, r, proven)


# ---------------------------------------------------------------------------
# vectorized evaluation for one canonical A


@lru_cache(maxsize=4)
def window_table(p: int) -> np.ndarray:
    """W[M][m]: most points of mask m inside a cyclic interval of length M."""
    t = orbits.tables(p)
    masks = np.arange(1 << p, dtype=np.int64)
    W = np.zeros((p + 1, 1 << p), dtype=np.int8)
    for v in range(p):
        rv = _bits.rot(masks, v, p)
        for M in range(1, p + 1):
            np.maximum(W[M], t.popcount[rv & ((1 << M) - 1)], out=W[M])
    return W


def _conclusion(t, sets, sizes, r):
    """First d (0 if none) with ell_d(X) <= |X| + r + 1 for all three sets."""
    p = t.p
    first = np.zeros(len(r), dtype=np.int64)
    for d in range(p - 1, 0, -1):
        ok = np.ones(len(r), dtype=bool)
        for X, s in zip(sets, sizes):
            ok &= t.ell[d - 1][X] <= s + r + 1
        first[ok] = d
    return first


def _evaluate_block(mode: str, p: int, a: int, bs: np.ndarray):
    t = orbits.tables(p)
    full = t.full
    n = len(bs)
    S = _bits.sum_with(bs, a, p)
    C = t.neg[full & ~S]
    sa = np.full(n, int(t.popcount[a]), dtype=np.int64)
    sb, sc, ss = t.popcount[bs], t.popcount[C], t.popcount[S]
    r = ss - sa - sb
    A = np.full(n, a, dtype=np.int64)
    proven = np.zeros(n, dtype=bool)
    dpick = np.zeros(n, dtype=np.int64)
    if mode == "conjecture":
        rc = t.minrot[C]
        trAB, trAC, trBC = bs == a, rc == a, rc == bs
        pos, big2 = r >= 0, r >= 2

        def dflag(tr1, tr2, other, s1, s2):
            return (pos & (tr1 | tr2)) | (big2 & other & (s1 == r + 4) & (s2 == r + 4))

        dA = dflag(trAB, trAC, trBC, sb, sc)
        dB = dflag(trAB, trBC, trAC, sa, sc)
        dC = dflag(trAC, trBC, trAB, sa, sb)
        dens = ss <= p - r - 3 - dC
        lab1 = (sa >= sb) & (ss <= sa + 2 * sb - 3 - dB)
        lab2 = (sb >= sa) & (ss <= sb + 2 * sa - 3 - dA)
        app = dens & (lab1 | lab2)
        proven = app & (r <= 0)
        if p >= 53:
            bigA = np.maximum(sa, sb)
            smallB = np.minimum(sa, sb)
            proven |= app & (r == 1) & (bigA >= 5) & (smallB >= 4) & (sc >= 5)
    elif mode == "smallr":
        lim = (p - 1).bit_length()
        union = np.full(n, p, dtype=np.int64)
        for v in range(p):
            np.minimum(union, t.popcount[a | _bits.rot(bs, v, p)], out=union)
        big, small = np.maximum(sa, sb), np.minimum(sa, sb)
        app = (union <= lim) & (ss <= big + 2 * small - 3 - (bs == a))
    elif mode == "prop12":
        app = np.zeros(n, dtype=bool)
        pre = (4 * ss <= 3 * (p + 1)) & (p >= 4 * r + 9)
        if pre.any():
            W = window_table(p)
            idx = np.nonzero(pre)[0]
            bsub, ssub = bs[idx], ss[idx]
            hit = np.zeros(len(idx), dtype=bool)
            for d in range(1, p):
                dil = t.dil[pow(d, -1, p)]
                ad, bd = int(dil[a]), dil[bsub]
                for M in range(1, p + 1):
                    N = p + 1 - M
                    wa_M, wa_N = int(W[M][ad]), int(W[N][ad])
                    wb_M, wb_N = W[M][bd].astype(np.int64), W[N][bd].astype(np.int64)
                    # A' from A in a window of length M, B' from B in length N
                    y = np.minimum(wb_N, wa_M)
                    hit |= (wa_M >= 1) & (y >= 1) & (wa_M + 2 * y - 4 >= ssub)
                    y = np.minimum(wa_N, wb_M)
                    hit |= (wb_M >= 1) & (y >= 1) & (wb_M + 2 * y - 4 >= ssub)
            app[idx] = hit
    elif mode == "mario1":
        app = np.zeros(n, dtype=bool)
        bad = np.zeros(n, dtype=bool)
        first_app = np.zeros(n, dtype=np.int64)
        first_bad = np.zeros(n, dtype=np.int64)
        sets = (A, bs, C)
        sizes = (sa, sb, sc)
        for d in range(1, p):
            L = [t.ell[d - 1][X].astype(np.int64) for X in sets]
            concl = np.ones(n, dtype=bool)
            for Ld, s in zip(L, sizes):
                concl &= Ld <= s + r + 1
            hyp = np.zeros(n, dtype=bool)
            for i, j, k in itertools.permutations(range(3)):
                h = L[i] - sizes[i]
                lo_x, lo_y = r + 3 + h, r + 3 + 2 * h
                hyp |= (
                    (sizes[i] >= lo_x) & (sizes[j] >= lo_y) & (sizes[k] >= r + 3)
                    & ((sizes[i] > lo_x) | (sizes[j] > lo_y))
                )
            new_app = hyp & (first_app == 0)
            first_app[new_app] = d
            new_bad = hyp & ~concl & (first_bad == 0)
            first_bad[new_bad] = d
            app |= hyp
            bad |= hyp & ~concl
        dpick = np.where(bad, first_bad, first_app)
        holds = app & ~bad
        return A, bs, C, r, app, holds, dpick, proven
    else:
        raise UsageError(f"mode {mode!r} is not a pair mode")
    first = np.zeros(n, dtype=np.int64)
    if app.any():
        idx = np.nonzero(app)[0]
        first[idx] = _conclusion(t, (A[idx], bs[idx], C[idx]), (sa[idx], sb[idx], sc[idx]), r[idx])
    holds = app & (first > 0)
    return A, bs, C, r, app, holds, first, proven


def _record(mode: str, p: int, a: int, b: int, c: int, r: int, verdict: str,
            d: Optional[int], proven: Optional[bool]) -> dict:
    A, B, C = (CyclicSet(p, m) for m in (a, b, c))
    covers = []
    ok = False
    if d:
        cv = [ell_cover(X, d) for X in (A, B, C)]
        ok = all(c_.length <= len(X) + r + 1 for c_, X in zip(cv, (A, B, C)))
        covers = [c_.to_json() for c_ in cv]
    rec = {
        "p": p,
        "A": list(A.elems()),
        "B": list(B.elems()),
        "C": list(C.elems()),
        "r": r,
        "d": d or None,
        "covers": covers,
        "ok": ok,
        "mode": mode,
        "canonical_key": orbits.canonical_key(p, a, b),
        "verdict": verdict,
    }
    if proven is not None:
        rec["proven"] = proven
    return rec


def _scan_shard(mode: str, p: int, reps: list[int], emit_all: bool):
    per_r: dict[int, Counts] = {}
    records = []
    for a in reps:
        bs, sizes = orbits.canonical_b_for(p, a)
        if len(bs) == 0:
            continue
        A, B, C, r, app, holds, d, proven = _evaluate_block(mode, p, a, bs)
        for rv in np.unique(r).tolist():
            sel = r == rv
            c = per_r.setdefault(rv, Counts())
            c.orbits_scanned += int(sel.sum())
            c.pairs += int(sizes[sel].sum())
            c.applicable += int((app & sel).sum())
            c.conclusion_holds += int((holds & sel).sum())
            c.violations += int((app & ~holds & sel).sum())
            c.proven_applicable += int((proven & sel).sum())
            c.proven_violations += int((proven & ~holds & sel).sum())
        emit = np.ones(len(bs), dtype=bool) if emit_all else (app & ~holds)
        for i in np.nonzero(emit)[0].tolist():
            verdict = "not-applicable" if not app[i] else ("holds" if holds[i] else "violation")
            pv = bool(proven[i]) if mode == "conjecture" else None
            records.append(_record(mode, p, a, int(B[i]), int(C[i]), int(r[i]), verdict, int(d[i]), pv))
    return per_r, records


def _scan_sampled(mode: str, p: int, samples: int, seed: int, emit_all: bool):
    rng = random.Random(f"{seed}:{p}:{mode}")
    seen = set()
    per_r: dict[int, Counts] = {}
    records = []
    full = (1 << p) - 1
    for _ in range(samples):
        a = rng.randrange(1, full)
        b = rng.randrange(1, full)
        A, B, *_ = canonical_pair(CyclicSet(p, a), CyclicSet(p, b))
        key = orbits.canonical_key(p, A.mask, B.mask)
        if key in seen or len(sumset(A, B)) == p:
            continue
        seen.add(key)
        v = evaluate_pair(mode, A, B)
        c = per_r.setdefault(v.r, Counts())
        c.orbits_scanned += 1
        c.applicable += v.applicable
        c.conclusion_holds += bool(v.applicable and v.holds)
        c.violations += bool(v.applicable and not v.holds)
        c.proven_applicable += v.proven
        c.proven_violations += bool(v.proven and not v.holds)
        if emit_all or (v.applicable and not v.holds):
            verdict = "not-applicable" if not v.applicable else ("holds" if v.holds else "violation")
            C = complement_trio(A, B).C
            records.append(_record(mode, p, A.mask, B.mask, C.mask, v.r, verdict, v.d,
                                   v.proven if mode == "conjecture" else None))
    records.sort(key=lambda rec: rec["canonical_key"])
    return per_r, records


def _shards(reps: list[int], k: int) -> list[list[int]]:
    # contiguous ranges of canonical keys, merged back in order
    size = max(1, -(-len(reps) // k))
    return [reps[i:i + size] for i in range(0, len(reps), size)]


def jsonl_lines(records: Iterable[dict]) -> list[str]:
    return [json.dumps(rec, separators=(",", ":")) for rec in records]


def _write(path: str, lines: list[str]) -> None:
    try:
        with open(path, "w") as fh:
            for line in lines:
                fh.write(line + "\n")
    except OSError as e:
        raise OSError(f"cannot write scan output {path}: {e.strerror or e}") from e


def scan(config: ScanConfig) -> ScanReport:
    if config.mode not in MODES:
        raise UsageError(f"unknown mode {config.mode!r}; choose from {', '.join(MODES)}")
    if config.mode == "feasibility":
        from .feasibility import feasibility_scan

        return feasibility_scan(config)
    if config.mode == "prop7":
        return prop7_scan(config)
    t0 = time.perf_counter()
    primes = config.resolved_primes()
    jobs = config.resolved_jobs()
    over = [q for q in primes if q > config.cap]
    if over and config.samples <= 0:
        raise CapacityError(f"primes {over} exceed the exhaustive cap {config.cap}; use sampled mode")
    report = ScanReport(config=asdict(config))
    all_records = []
    for p in primes:
        if p > config.cap:
            parts = [_scan_sampled(config.mode, p, config.samples, config.seed, config.emit_all)]
        else:
            orbits.tables(p)
            if config.mode == "prop12":
                window_table(p)
            reps = orbits.canonical_a_reps(p)
            if jobs == 1 or len(reps) < 2:
                parts = [_scan_shard(config.mode, p, reps, config.emit_all)]
            else:
                ctx = mp.get_context("fork")
                with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as ex:
                    futs = [ex.submit(_scan_shard, config.mode, p, sh, config.emit_all)
                            for sh in _shards(reps, jobs)]
                    parts = [f.result() for f in futs]
        tot = Counts()
        recs = []
        for per_r, rs in parts:
            for rv, c in per_r.items():
                report.per_r.setdefault((p, rv), Counts()).add(c)
                tot.add(c)
            recs.extend(rs)
        recs.sort(key=lambda rec: rec["canonical_key"])
        report.per_prime[p] = tot
        all_records.extend(recs)
        log.info("p=%d: %s", p, tot)
    report.records = all_records
    report.violations = [rec for rec in all_records if rec["verdict"] == "violation"]
    lines = jsonl_lines(all_records)
    h = hashlib.sha256()
    for line in lines:
        h.update(line.encode() + b"\n")
    counters = {f"{p}:{r}": asdict(c) for (p, r), c in sorted(report.per_r.items())}
    h.update(json.dumps(counters, sort_keys=True).encode())
    report.content_hash = h.hexdigest()
    if config.output:
        _write(config.output, lines)
    report.seconds = time.perf_counter() - t0
    return report


# ---------------------------------------------------------------------------
# five-way equivalence over all trios


@dataclass
class Prop7Counts:
    trios: int = 0
    applicable: int = 0
    s1: int = 0
    s2: int = 0
    s3: int = 0
    inconsistent: int = 0
    transfer_failures: int = 0
    example: Optional[dict] = None


def _submasks(K: int, p: int) -> np.ndarray:
    masks = np.arange(1, 1 << p, dtype=np.int64)
    return masks[(masks & ~K) == 0]


def trio_candidates(p: int, reps: list[int]):
    """Yield (a, b, Cs): every additive trio is, after an affine map,
    independent translations and relabelling, some (a, b, C) with C in Cs,
    where Cs runs over the subsets of -(a+b)^c no larger than a or b."""
    t = orbits.tables(p)
    for a in reps:
        bs, _ = orbits.canonical_b_for(p, a)
        sa = int(t.popcount[a])
        for b in bs.tolist():
            sb = int(t.popcount[b])
            K = int(t.neg[t.full & ~int(_bits.sum_with(np.array([b], dtype=np.int64), a, p)[0])])
            Cs = _submasks(K, p)
            Cs = Cs[t.popcount[Cs] <= min(sa, sb)]
            if len(Cs):
                yield a, b, Cs


def _prop7_pairs(p: int, reps: list[int], delta: str) -> Prop7Counts:
    t = orbits.tables(p)
    out = Prop7Counts()
    for a, b, Cs in trio_candidates(p, reps):
        sa, sb = int(t.popcount[a]), int(t.popcount[b])
        sc = t.popcount[Cs]
        out.trios += len(Cs)
        r = p - sa - sb - sc
        rc = t.minrot[Cs]
        tAB, tAC, tBC = a == b, rc == a, rc == b
        if delta == "translate":
            dA, dB, dC = tAB | tAC, tAB | tBC, tAC | tBC
        else:
            pos, big2 = r >= 0, r >= 2
            dA = (pos & (tAB | tAC)) | (big2 & tBC & (sb == r + 4) & (sc == r + 4))
            dB = (pos & (tAB | tBC)) | (big2 & tAC & (sa == r + 4) & (sc == r + 4))
            dC = (pos & (tAC | tBC)) | (big2 & tAB & (sa == r + 4) & (sb == r + 4))
        app = (sa >= r + 3 + dA) & (sb >= r + 3 + dB) & (sc >= r + 3 + dC)
        if not app.any():
            continue
        Cs, sc, r = Cs[app], sc[app], r[app]
        m = len(Cs)
        out.applicable += m
        s1 = np.zeros(m, dtype=bool)
        s2 = np.zeros(m, dtype=bool)
        s3 = np.zeros(m, dtype=bool)
        best = np.full(m, 10 * p, dtype=np.int64)
        best_ok = np.zeros(m, dtype=bool)
        for d in range(1, p):
            La = int(t.ell[d - 1][a])
            Lb = int(t.ell[d - 1][b])
            Lc = t.ell[d - 1][Cs].astype(np.int64)
            c1 = (La <= sa + r + 1) & (Lb <= sb + r + 1) & (Lc <= sc + r + 1)
            prs = (La + Lb <= p + 1, Lb + Lc <= p + 1, Lc + La <= p + 1)
            tots = (np.full(m, La + Lb), Lb + Lc, Lc + La)
            s1 |= c1
            s2 |= prs[0] & prs[1] & prs[2]
            for ok, tot in zip(prs, tots):
                s3 |= ok
                better = ok & (tot < best)
                best[better] = tot[better]
                best_ok[better] = c1[better]
        out.s1 += int(s1.sum())
        out.s2 += int(s2.sum())
        out.s3 += int(s3.sum())
        bad = (s1 != s2) | (s2 != s3)
        out.inconsistent += int(bad.sum())
        out.transfer_failures += int((s3 & ~best_ok).sum())
        if bad.any() and out.example is None:
            i = int(np.nonzero(bad)[0][0])
            out.example = {"p": p, "A": mask_elems(a), "B": mask_elems(b), "C": mask_elems(int(Cs[i]))}
    return out


def prop7_scan(config: ScanConfig) -> ScanReport:
    """Statements 1-3 on every trio with |X| >= r+3+delta_X, modulo the
    affine group, independent translations and relabelling."""
    if config.delta not in ("translate", "conjecture"):
        raise UsageError(f"unknown delta mode {config.delta!r}")
    t0 = time.perf_counter()
    primes = config.resolved_primes()
    over = [q for q in primes if q > config.cap]
    if over:
        raise CapacityError(f"primes {over} exceed the exhaustive cap {config.cap}")
    jobs = config.resolved_jobs()
    report = ScanReport(config=asdict(config))
    detail = {}
    for p in primes:
        orbits.tables(p)
        reps = orbits.canonical_a_reps(p)
        if jobs == 1 or len(reps) < 2:
            parts = [_prop7_pairs(p, reps, config.delta)]
        else:
            with ProcessPoolExecutor(max_workers=jobs, mp_context=mp.get_context("fork")) as ex:
                parts = list(ex.map(_prop7_pairs, itertools.repeat(p), _shards(reps, jobs),
                                    itertools.repeat(config.delta)))
        tot = Prop7Counts()
        for part in parts:
            for k in ("trios", "applicable", "s1", "s2", "s3", "inconsistent", "transfer_failures"):
                setattr(tot, k, getattr(tot, k) + getattr(part, k))
            tot.example = tot.example or part.example
        detail[p] = asdict(tot)
        report.per_prime[p] = Counts(
            orbits_scanned=tot.trios,
            applicable=tot.applicable,
            conclusion_holds=tot.applicable - tot.inconsistent,
            violations=tot.inconsistent,
        )
    report.extra["prop7"] = {str(p): v for p, v in detail.items()}
    report.content_hash = hashlib.sha256(json.dumps(report.extra, sort_keys=True).encode()).hexdigest()
    report.seconds = time.perf_counter() - t0
    return report
