"""One test per acceptance criterion; conftest prints a PASS/FAIL line for each."""

import random
import time
from fractions import Fraction

import pytest

from zsl import laws
from zsl.analytic import XR_BOUNDS, atom_upper, const_c1, const_cbeta, const_levshkredov, numeric_lemma_suite
from zsl.cyclic import CyclicSet, IntSet, int_sumset, is_prime, sumset
from zsl.harness.certs import verify_certificate_file
from zsl.harness.constructions import ExampleSpec, generate_example
from zsl.harness.feasibility import THEOREMS, min_feasible_p
from zsl.harness.scan import ScanConfig, scan
from zsl.isoperimetry import atom_sweep, petridis_c_holds, petridis_minimizer, petridis_nfold_holds
from zsl.progressions import conjecture_conclusion, min_cover, verify_3k4_integers

crit = pytest.mark.criterion


@crit(1)
def test_prop13_shortest_cover():
    t0 = time.perf_counter()
    for r, n in zip((1, 2, 3, 4), (15, 19, 23, 27)):
        A = generate_example(ExampleSpec("prop13", r)).A
        assert A.n == n
        assert min_cover(A)[1] == 2 * r + 7
    assert time.perf_counter() - t0 < 1


@crit(2)
def test_example6_counterexample():
    t0 = time.perf_counter()
    p, r = 19, 2
    A = CyclicSet.of(p, [0, 1, 2, 3, 5, 10])
    assert generate_example(ExampleSpec("6", r)).A == A
    k = len(A)
    assert len(sumset(A, A)) == 14 == 3 * k - 4 == p - r - 3
    assert conjecture_conclusion(A, A) is None
    assert time.perf_counter() - t0 < 1


@crit(3)
def test_example1_tightness():
    seen = 0
    for r in (0, 1, 2):
        for m in range(2 * r + 4, 13):
            for n in range(2 * r + 3, m + 1):
                inst = generate_example(ExampleSpec("1", r, m=m, n=n))
                A, B = inst.A, inst.B
                v = verify_3k4_integers(A, B)
                assert v.applicable and v.r == r
                assert v.cover_a.length == len(A) + r + 1
                assert v.cover_b.length == len(B) + r + 1
                assert v.inner.length == len(A) + len(B) - 1
                seen += 1
    assert seen > 0


@crit(4)
def test_classical_laws():
    for res in laws.run_all(cd_max=11, kneser_max=12, aacomp_max=12, inter_max=7, vosper_max=11):
        assert res.ok, res
        assert res.seconds < 60, (res.name, res.n)


@crit(5)
def test_integer_verifier_exhaustive():
    sets = [IntSet.of([i for i in range(10) if m >> i & 1]) for m in range(1, 1 << 10)]
    applicable = 0
    for A in sets:
        for B in sets:
            v = verify_3k4_integers(A, B)
            if v.applicable:
                applicable += 1
                assert v.bounds_ok, (A, B, v.bounds)
    assert applicable > 0


@crit(6)
def test_atom_suite():
    # every n <= 12 plus the prime 13
    for n in range(1, 14):
        res = atom_sweep(n, kmax=3)
        assert res.ok, (n, res.violations[:3])


@crit(7)
def test_petridis_suite():
    rng = random.Random(2024)
    for _ in range(500):
        A = IntSet.of(rng.sample(range(40), rng.randint(1, 12)))
        B = IntSet.of(rng.sample(range(40), rng.randint(1, 8)))
        res = petridis_minimizer(A, B)
        assert isinstance(res.alpha, Fraction)
        assert res.alpha <= Fraction(len(int_sumset(A, B)), len(A))
        for _ in range(200):
            C = IntSet.of(rng.sample(range(60), rng.randint(1, 10)))
            assert petridis_c_holds(res, B, C)
        assert petridis_nfold_holds(res, B, 4)


@crit(8)
def test_constants_pinned():
    third, fifth = Fraction(1, 3), Fraction(1, 5)
    assert const_c1(Fraction("0.021")) >= third and const_cbeta(Fraction("0.021"), Fraction("0.8")) >= third
    assert const_c1(Fraction("0.105")) >= fifth and const_cbeta(Fraction("0.105"), Fraction("0.8")) >= fifth
    a, b = Fraction(1, 9), Fraction("0.8484")
    assert min(const_c1(a), const_cbeta(a, b)) >= Fraction(1963, 9253)
    cases = [("2.572", "0.0111"), ("2.552", "0.0289"), ("2.515", "0.0588"),
             ("2.578", "0.00561"), ("2.564", "0.01845"), ("2.541", "0.0382")]
    for K, thr in cases:
        assert const_levshkredov(Fraction(K), 11) > Fraction(thr)


@crit(9)
def test_numeric_lemmas():
    t0 = time.perf_counter()
    rep = numeric_lemma_suite(10**6)
    assert rep.ok, rep.failures()
    assert rep.results["sqrt-linear"].data["margin_r16"] < 1e-4
    assert rep.results["X+r<=283/92(r+3)"].data["equality_at"] == [89]
    branch = [*range(19, 26), *range(80, 90)]
    assert all(test(atom_upper(r), r) for test in XR_BOUNDS.values() for r in branch)
    assert time.perf_counter() - t0 < 120


@crit(10)
def test_prop7_equivalence():
    rep = scan(ScanConfig(mode="prop7", max_prime=13))
    for p in (2, 3, 5, 7, 11, 13):
        got = rep.extra["prop7"][str(p)]
        assert got["inconsistent"] == 0, got["example"]
    assert sum(c["applicable"] for c in rep.extra["prop7"].values()) > 0


@crit(11)
def test_conjecture_scan_proven_regime(tmp_path):
    runs = []
    for jobs in (1, 2):
        out = tmp_path / f"jobs{jobs}.jsonl"
        rep = scan(ScanConfig(mode="conjecture", max_prime=13, jobs=jobs, output=str(out)))
        runs.append((rep, out.read_bytes()))
    rep, data = runs[0]
    tot = rep.totals()
    assert tot.proven_applicable > 0 and tot.proven_violations == 0
    for (p, r), c in rep.per_r.items():
        if r <= 0:
            assert c.violations == 0, (p, r)
    if data:
        assert verify_certificate_file(str(tmp_path / "jobs1.jsonl")).ok
    # no violations to re-check is vacuous, so re-check every record too
    full = tmp_path / "all.jsonl"
    scan(ScanConfig(mode="conjecture", max_prime=13, emit_all=True, output=str(full)))
    res = verify_certificate_file(str(full))
    assert res.ok and res.records == tot.orbits_scanned
    assert runs[1][1] == data and runs[1][0].content_hash == rep.content_hash


@crit(12)
def test_large_p_theorems_vacuous():
    rep = scan(ScanConfig(mode="feasibility", max_prime=19))
    for key, res in rep.extra["feasibility"].items():
        assert res["feasible"] == 0 and res["undetermined"] == 0, key
    assert {k.split(":")[0] for k in rep.extra["feasibility"]} == set(THEOREMS)
    for r in range(-1, 6):
        assert min_feasible_p("thm19", r) >= 202 * r + 603
    assert all(is_prime(p) for p in (min_feasible_p(th, 0) for th in ("thm2", "thm15", "thm19")))
