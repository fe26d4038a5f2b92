"""Freiman's 3k-4 bounds over the integers, and the family that makes all
three bounds tight at once."""

from zsl.cyclic import IntSet, int_sumset
from zsl.harness.constructions import ExampleSpec, generate_example
from zsl.progressions import verify_3k4_integers

A, B = IntSet.of([0, 2, 3, 4]), IntSet.of([0, 2, 3])
v = verify_3k4_integers(A, B)
print("A+B =", list(int_sumset(A, B).elems), " r =", v.r)
print("P_A", v.cover_a.elements(), " P_B", v.cover_b.elements(), " run in A+B", v.inner.elements())
print("bounds:", v.bounds)

print()
print(" r  m  n  |P_A|-|A|  |P_B|-|B|  run-(|A|+|B|-1)")
for r in (0, 1, 2):
    for m, n in ((2 * r + 4, 2 * r + 3), (10, 8), (12, 12)):
        inst = generate_example(ExampleSpec("1", r, m=m, n=n))
        v = verify_3k4_integers(inst.A, inst.B)
        print(f"{r:2d} {m:2d} {n:2d}  {v.cover_a.length - len(inst.A):9d}  "
              f"{v.cover_b.length - len(inst.B):9d}  {v.inner.length - len(inst.A) - len(inst.B) + 1:15d}")

# sets too spread out: the hypothesis fails and nothing is claimed
print(verify_3k4_integers(IntSet.of([0, 1, 10]), IntSet.of([0, 5])).applicable)
