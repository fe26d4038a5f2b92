"""The p = 19 set whose doubling is 3k - 4 but no single progression step
covers it tightly, and the 4r + 11 family behind it."""

from zsl.cyclic import CyclicSet, sumset
from zsl.harness.constructions import ExampleSpec, generate_example
from zsl.progressions import conjecture_conclusion, ell, min_cover
from zsl.trios import complement_trio, delta_flags

A = CyclicSet.of(19, [0, 1, 2, 3, 5, 10])
k = len(A)
print("A =", list(A.elems()), " |A| =", k, " |2A| =", len(sumset(A, A)), " 3k-4 =", 3 * k - 4)

T = complement_trio(A, A)
print("trio r =", T.r, " C =", list(T.C.elems()), " delta flags =", delta_flags(T).as_tuple())

# the conclusion asks for one d with ell_d(X) <= |X| + r + 1 for all three sets
budget = k + T.r + 1
print("budget per set:", budget)
for d in range(1, 10):
    print(f"  d={d}: ell_d(A)={ell(A, d)}  ell_d(C)={ell(T.C, d)}")
print("some d works:", conjecture_conclusion(A, A) is not None)

print()
print("4r+11 family: shortest cover vs |A| + r + 1")
for r in range(1, 6):
    inst = generate_example(ExampleSpec("prop13", r))
    d, L = min_cover(inst.A)
    print(f"  r={r} n={inst.A.n} |A|={len(inst.A)} shortest={L} (d={d}) budget={len(inst.A) + r + 1}")
