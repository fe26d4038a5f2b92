"""Isoperimetric atoms, the half-arc bound on exponential sums, the density
constants, and why the large-p theorems say nothing at desk scale."""

from fractions import Fraction

from zsl.analytic import circle_bound, const_c1, const_cbeta, exp_sum, max_half_arc, numeric_lemma_suite
from zsl.cyclic import CyclicSet
from zsl.harness.feasibility import min_feasible_p, sweep
from zsl.isoperimetry import atom_sweep, kappa_atoms

B = CyclicSet.of(11, [0, 1, 2])
rep = kappa_atoms(B, 2)
print("kappa_2 =", rep.kappa, " atom size", rep.alpha, " atoms", [list(X.elems()) for X in rep.atoms][:4], "...")
for n in (7, 8, 9):
    s = atom_sweep(n)
    print(f"atom theorems on Z/{n}: {s.pairs} (B, k) pairs, {len(s.violations)} violations")

A = CyclicSet.of(13, [0, 1, 2, 3, 7])
for x in (1, 2, 5):
    cb = circle_bound(A, x)
    print(f"x={x}: |S(x)|={exp_sum(A, x).magnitude:.4f}  half-arc={max_half_arc(A, x)}  bound={cb.bound}")

for alpha, beta in (("0.021", "0.8"), ("0.105", "0.8"), ("1/9", "0.8484")):
    a, b = Fraction(alpha), Fraction(beta)
    print(f"alpha={alpha}: c1={float(const_c1(a)):.5f}  c_beta={float(const_cbeta(a, b)):.5f}")

suite = numeric_lemma_suite(10**4)
print("numeric lemmas:", "ok" if suite.ok else suite.failures())

for th in ("thm2", "thm15", "thm19"):
    print(th, "first prime with admissible sizes, r = -1..2:", [min_feasible_p(th, r) for r in range(-1, 3)])
print("thm19 hits at p=19:", sweep("thm19", 19)["feasible"])
