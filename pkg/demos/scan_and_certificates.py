"""Exhaustive orbit scans modulo small primes, the JSONL certificates they
write, and re-checking those certificates from scratch."""

import os
import tempfile

from zsl.harness import orbits
from zsl.harness.certs import summarize, verify_certificate_file
from zsl.harness.scan import ScanConfig, scan

for p in (5, 7, 11, 13):
    n = sum(len(orbits.canonical_b_for(p, a)[0]) for a in orbits.canonical_a_reps(p))
    print(f"p={p}: {n} canonical (A, B) orbits with A + B != G")

out = os.path.join(tempfile.mkdtemp(), "conjecture.jsonl")
rep = scan(ScanConfig(mode="conjecture", max_prime=13, emit_all=True, output=out))
tot = rep.totals()
print("applicable", tot.applicable, " violations", tot.violations,
      " proven regime", tot.proven_applicable, " proven violations", tot.proven_violations)
print("hash", rep.content_hash[:16])

res = verify_certificate_file(out)
print(res.records, "records re-verified:", res.ok)
print(summarize(out))

# the same content comes back with two workers
again = scan(ScanConfig(mode="conjecture", max_prime=13, jobs=2, emit_all=True))
print("deterministic across jobs:", again.content_hash == rep.content_hash)

p7 = scan(ScanConfig(mode="prop7", max_prime=13))
for p, c in p7.extra["prop7"].items():
    print(f"statements 1-3 at p={p}: {c['applicable']} applicable trios, {c['inconsistent']} disagreements")
