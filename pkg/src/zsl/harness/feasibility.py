"""Size-level feasibility of the large-p theorems' hypotheses.

Every hypothesis below only constrains (p, |A|, |B|, r) with |A| >= |B|.
The sweep runs over all such tuples with r >= -1 and |A+B| <= p-1, a
superset of the tuples realized by actual sets, so an empty sweep proves
that no instance at that p meets the hypotheses.  Square roots are squared
into integer comparisons and decimal constants are kept as fractions.
"""

from __future__ import annotations

import time
from dataclasses import asdict
from functools import lru_cache
from fractions import Fraction
from typing import Optional

import numpy as np

from ..analytic import c1_parts, cbeta_parts
from ..cyclic import is_prime
from ..errors import CapacityError, UsageError

THEOREMS = ("thm2", "thm3", "thm15", "thm19")
FEASIBILITY_CAP = 400
ALPHA_MAX = Fraction(212, 1000)
BETA_MIN = Fraction(731, 1000)


def _thm15_p_ok(p, r):
    """9253/1963 (10r + 26.5 + sqrt(2r + 17/4)) <= p, exactly."""
    N = 3926 * p - 9253 * (20 * r + 53)
    return (N >= 0) & (9253 * 9253 * (8 * r + 17) <= N * N)


def size_feasible(theorem: str, p, a, b, r):
    """Elementwise hypothesis test on integer arrays (or ints).

    For thm3 this is only the necessary part: r+3 <= 0.212|B|,
    |B| >= 0.731|A| and |A| <= 5p/14 (c1 never exceeds 5/14).
    """
    s = a + b + r
    base = (b >= 1) & (a >= b) & (r >= -1) & (s <= p - 1)
    if theorem == "thm2":
        return base & (10000 * s <= 10000 * a + 10527 * b - 30000) & (s <= p - 9 * (r + 3))
    if theorem == "thm19":
        return base & (100 * s <= 100 * a + 101 * b - 300) & (s <= p - r - 3)
    if theorem == "thm15":
        return base & (9 * s <= 9 * a + 10 * b - 27) & (s <= p - 9 * (r + 3)) & _thm15_p_ok(p, r)
    if theorem == "thm3":
        return base & (1000 * (r + 3) <= 212 * b) & (1000 * b >= 731 * a) & (14 * a <= 5 * p)
    raise UsageError(f"unknown theorem {theorem!r}; choose from {', '.join(THEOREMS)}")


def _c_min(alpha: Fraction, beta: Fraction) -> Fraction:
    n1, d1 = c1_parts(alpha)
    n2, d2 = cbeta_parts(alpha, beta)
    return min(Fraction(n1) / d1, Fraction(n2) / d2)


@lru_cache(maxsize=2)
def _thm3_grid(step: int):
    """Per alpha = k/step: running max over beta = j/step (j ascending) of
    min(c1, c_beta), with the beta attaining it."""
    j0 = int(BETA_MIN * step)
    out = []
    for k in range(1, int(ALPHA_MAX * step) + 1):
        al = Fraction(k, step)
        best, arg, row = None, None, []
        for j in range(j0, step + 1):
            be = Fraction(j, step)
            c = _c_min(al, be)
            if best is None or c > best:
                best, arg = c, be
            row.append((best, arg))
        out.append((al, row))
    return j0, out


def thm3_grid_witness(p: int, a: int, b: int, r: int, step: int = 1000) -> Optional[tuple]:
    """(alpha, beta) on a rational grid meeting every thm3 hypothesis, if any."""
    j0, grid = _thm3_grid(step)
    jmax = min(step, (b * step) // a)  # beta * a <= b
    if jmax < j0:
        return None
    for al, row in grid:
        if r + 3 > al * b:
            continue
        c, be = row[jmax - j0]
        if a <= c * p:
            return al, be
    return None


def sweep(theorem: str, p: int) -> dict:
    """All (a, b, r) tuples meeting the size hypotheses at prime p."""
    if p > FEASIBILITY_CAP:
        raise CapacityError(f"p={p} exceeds the feasibility sweep cap {FEASIBILITY_CAP}")
    a, b = np.meshgrid(np.arange(1, p, dtype=np.int64), np.arange(1, p, dtype=np.int64), indexing="ij")
    a, b = a.ravel(), b.ravel()
    keep = a >= b
    a, b = a[keep], b[keep]
    swept = 0
    hits = []
    for r in range(-1, p):
        live = a + b + r <= p - 1
        if not live.any():
            break
        swept += int(live.sum())
        ok = size_feasible(theorem, p, a[live], b[live], r)
        for x, y in zip(a[live][ok].tolist(), b[live][ok].tolist()):
            hits.append((x, y, r))
    undetermined = 0
    feasible = hits
    if theorem == "thm3":
        feasible = [h for h in hits if thm3_grid_witness(p, *h) is not None]
        undetermined = len(hits) - len(feasible)
    return {"theorem": theorem, "p": p, "swept": swept, "feasible": len(feasible),
            "undetermined": undetermined, "examples": feasible[:5]}


def min_feasible_p(theorem: str, r: int, pmax: int = 10**7) -> Optional[int]:
    """Smallest prime p admitting sizes that meet the hypotheses at this r.

    For thm2, thm15 and thm19 the small-doubling bound is a lower bound on
    |B| alone and every density bound improves as |A| + |B| shrinks, so
    |A| = |B| = the least admissible |B| is optimal.  thm3 is not handled.
    """
    if r < -1:
        raise UsageError("r >= -1")
    if theorem == "thm2":
        bmin = -(-10000 * (r + 3) // 527)
    elif theorem == "thm15":
        bmin = 9 * (r + 3)
    elif theorem == "thm19":
        bmin = 100 * (r + 3)
    else:
        raise UsageError(f"min_feasible_p supports thm2, thm15, thm19, not {theorem!r}")
    for p in range(2, pmax + 1):
        if is_prime(p) and bool(size_feasible(theorem, p, bmin, bmin, r)):
            return p
    return None


def feasibility_scan(config):
    from .scan import Counts, ScanReport

    t0 = time.perf_counter()
    theorems = [config.theorem] if config.theorem else list(THEOREMS)
    for th in theorems:
        if th not in THEOREMS:
            raise UsageError(f"unknown theorem {th!r}; choose from {', '.join(THEOREMS)}")
    report = ScanReport(config=asdict(config))
    detail = {}
    for p in config.resolved_primes():
        c = Counts()
        for th in theorems:
            res = sweep(th, p)
            detail[f"{th}:{p}"] = res
            c.orbits_scanned += res["swept"]
            # a feasible tuple counts against the vacuity claim
            c.applicable += res["feasible"] + res["undetermined"]
            c.violations += res["feasible"] + res["undetermined"]
        report.per_prime[p] = c
    report.extra["feasibility"] = detail
    report.extra["min_feasible_p"] = {
        th: {str(r): min_feasible_p(th, r) for r in range(-1, 6)} for th in theorems if th != "thm3"
    }
    report.seconds = time.perf_counter() - t0
    return report
